/**
 * The three panel types: log-log scaling scatter with fitted guide lines,
 * plain time series, and a weighted spectrum histogram.
 */

import { fitPowerLaw, PowerLawFit } from "./fit.js";
import { linearScale, linearTicks, logScale, logTicks, PanelBox, Svg } from "./svg.js";

export interface Series {
  label: string;
  color: string;
  points: Array<[number, number]>;
}

export interface ScalingOptions {
  xLabel: string;
  yLabel: string;
  title: string;
  fitSeries?: string; // label of the series to overlay a fitted power law on
  referenceSlopeOne?: boolean;
}

export function scalingLoglogPanel(svg: Svg, box: PanelBox, series: Series[], options: ScalingOptions): PowerLawFit | undefined {
  const xs = series.flatMap((s) => s.points.map(([x]) => x));
  const ys = series.flatMap((s) => s.points.map(([, y]) => y)).filter((y) => Number.isFinite(y) && y > 0);
  if (xs.length === 0 || ys.length === 0) {
    throw new Error(`panel '${options.title}' has no positive finite data`);
  }
  const xDomain: [number, number] = [Math.min(...xs), Math.max(...xs)];
  const yDomain: [number, number] = [Math.min(...ys) / 1.3, Math.max(...ys) * 1.3];
  const xScale = logScale(xDomain, [box.x, box.x + box.width]);
  const yScale = logScale(yDomain, [box.y + box.height, box.y]);
  svg.axes(box, logTicks(...xDomain), logTicks(...yDomain), xScale, yScale, options.xLabel, options.yLabel, options.title);

  let fit: PowerLawFit | undefined;
  for (const s of series) {
    const clean = s.points.filter(([, y]) => Number.isFinite(y) && y > 0);
    for (const [x, y] of clean) {
      svg.circle(xScale(x), yScale(y), 2.6, s.color);
    }
    if (options.fitSeries === s.label) {
      fit = fitPowerLaw(clean.map(([x]) => x), clean.map(([, y]) => y));
      const [x0, x1] = xDomain;
      const guide: Array<[number, number]> = [x0, x1].map((x) => [
        xScale(x),
        yScale(fit!.prefactor * x ** fit!.exponent),
      ]);
      svg.polyline(guide, s.color, 1.2, "5,3");
      svg.text(box.x + box.width - 4, box.y + 14, `fit: ${fit.prefactor.toFixed(3)} N^${fit.exponent.toFixed(3)}`, 11, "end", s.color);
    }
  }
  if (options.referenceSlopeOne) {
    const anchorY = Math.min(...ys);
    const [x0, x1] = xDomain;
    const ref: Array<[number, number]> = [x0, x1].map((x) => [xScale(x), yScale((anchorY * x) / x0)]);
    svg.polyline(ref, "#888", 1, "2,3");
    svg.text(ref[1][0] - 4, ref[1][1] - 5, "slope 1", 10, "end", "#888");
  }
  svg.legend(box.x + 8, box.y + 16, series.map((s) => [s.label, s.color]));
  return fit;
}

export interface TimeseriesOptions {
  xLabel: string;
  yLabel: string;
  title: string;
}

export function timeseriesPanel(svg: Svg, box: PanelBox, series: Series[], options: TimeseriesOptions): void {
  const finitePoints = series.flatMap((s) => s.points.filter(([, y]) => Number.isFinite(y)));
  if (finitePoints.length === 0) {
    throw new Error(`panel '${options.title}' has no finite data`);
  }
  const xs = finitePoints.map(([x]) => x);
  const ys = finitePoints.map(([, y]) => y);
  const pad = (Math.max(...ys) - Math.min(...ys)) * 0.08 || 1;
  const xDomain: [number, number] = [Math.min(...xs), Math.max(...xs)];
  const yDomain: [number, number] = [Math.min(...ys) - pad, Math.max(...ys) + pad];
  const xScale = linearScale(xDomain, [box.x, box.x + box.width]);
  const yScale = linearScale(yDomain, [box.y + box.height, box.y]);
  svg.axes(box, linearTicks(...xDomain), linearTicks(...yDomain), xScale, yScale, options.xLabel, options.yLabel, options.title);
  if (yDomain[0] < 0 && yDomain[1] > 0) {
    svg.line(box.x, yScale(0), box.x + box.width, yScale(0), "#bbb", 1, "3,3");
  }
  for (const s of series) {
    // break the stroke at non-finite samples instead of drawing through them
    let run: Array<[number, number]> = [];
    const flush = () => {
      if (run.length > 1) svg.polyline(run, s.color, 1.6);
      else if (run.length === 1) svg.circle(run[0][0], run[0][1], 2, s.color);
      run = [];
    };
    for (const [x, y] of s.points) {
      if (Number.isFinite(y)) run.push([xScale(x), yScale(y)]);
      else flush();
    }
    flush();
  }
  svg.legend(box.x + 8, box.y + 16, series.map((s) => [s.label, s.color]));
}

export interface HistogramOptions {
  xLabel: string;
  yLabel: string;
  title: string;
}

export function histogramPanel(svg: Svg, box: PanelBox, values: number[], weights: number[], options: HistogramOptions): void {
  if (values.length === 0 || values.length !== weights.length) {
    throw new Error(`panel '${options.title}' needs matching non-empty values and weights`);
  }
  const xDomain: [number, number] = [Math.min(...values), Math.max(...values)];
  const yMax = Math.max(...weights);
  const xScale = linearScale(xDomain, [box.x, box.x + box.width]);
  const yScale = linearScale([0, yMax * 1.05], [box.y + box.height, box.y]);
  svg.axes(box, linearTicks(...xDomain), linearTicks(0, yMax * 1.05), xScale, yScale, options.xLabel, options.yLabel, options.title);
  const barWidth = Math.max(1, (box.width / values.length) * 0.6);
  values.forEach((v, i) => {
    const top = yScale(weights[i]);
    svg.rect(xScale(v) - barWidth / 2, top, barWidth, box.y + box.height - top, "#4878a8");
  });
}
