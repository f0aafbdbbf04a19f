/**
 * Log-log least squares, matching the Python side's fit on (log N, log y)
 * closely enough that the overlaid exponent agrees to well below 1e-9.
 */

export interface PowerLawFit {
  exponent: number;
  logPrefactor: number;
  prefactor: number;
  rSquared: number;
}

export function fitPowerLaw(ns: number[], ys: number[]): PowerLawFit {
  if (ns.length !== ys.length) {
    throw new Error(`length mismatch: ${ns.length} vs ${ys.length}`);
  }
  if (ns.length < 3) {
    throw new Error(`need at least 3 points, got ${ns.length}`);
  }
  if (ns.some((n) => n <= 0) || ys.some((y) => y <= 0)) {
    throw new Error("power-law fits require positive N and y");
  }
  const x = ns.map(Math.log);
  const y = ys.map(Math.log);
  const meanX = x.reduce((a, b) => a + b, 0) / x.length;
  const meanY = y.reduce((a, b) => a + b, 0) / y.length;
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < x.length; i++) {
    sxx += (x[i] - meanX) * (x[i] - meanX);
    sxy += (x[i] - meanX) * (y[i] - meanY);
  }
  const exponent = sxy / sxx;
  const logPrefactor = meanY - exponent * meanX;
  let ssRes = 0;
  let ssTot = 0;
  for (let i = 0; i < x.length; i++) {
    const predicted = exponent * x[i] + logPrefactor;
    ssRes += (y[i] - predicted) * (y[i] - predicted);
    ssTot += (y[i] - meanY) * (y[i] - meanY);
  }
  const rSquared = ssTot > 0 ? Math.min(Math.max(1 - ssRes / ssTot, 0), 1) : 1;
  return { exponent, logPrefactor, prefactor: Math.exp(logPrefactor), rSquared };
}
