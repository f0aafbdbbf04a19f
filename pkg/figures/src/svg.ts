/**
 * Minimal deterministic SVG builder: fixed canvas, fixed fonts, no randomness,
 * so re-rendering the same data yields byte-identical files.
 */

export interface PanelBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export type Scale = (value: number) => number;

const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

export function fmt(value: number): string {
  if (!Number.isFinite(value)) return "0";
  const rounded = Math.round(value * 100) / 100;
  return Object.is(rounded, -0) ? "0" : String(rounded);
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) {
    throw new Error(`log scale requires a positive domain, got [${d0}, ${d1}]`);
  }
  const inner = linearScale([Math.log10(d0), Math.log10(d1)], range);
  return (v) => inner(Math.log10(v));
}

export function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.floor(Math.log10(lo)); e <= Math.ceil(Math.log10(hi)); e++) {
    for (const mantissa of [1, 2, 5]) {
      const v = mantissa * 10 ** e;
      if (v >= lo * 0.999 && v <= hi * 1.001) ticks.push(v);
    }
  }
  return ticks;
}

export function linearTicks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo || 1;
  const rawStep = span / count;
  const magnitude = 10 ** Math.floor(Math.log10(rawStep));
  const step = [1, 2, 5, 10].map((m) => m * magnitude).find((s) => span / s <= count + 1) ?? magnitude * 10;
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + step * 1e-9; v += step) ticks.push(Math.round(v * 1e9) / 1e9);
  return ticks;
}

function tickLabel(value: number): string {
  if (value !== 0 && (Math.abs(value) >= 1e4 || Math.abs(value) < 1e-3)) {
    return value.toExponential(0).replace("+", "");
  }
  return String(Math.round(value * 1e6) / 1e6);
}

export class Svg {
  private parts: string[] = [];

  constructor(public readonly width: number, public readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    );
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1, dash = ""): void {
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${stroke}" stroke-width="${width}"${dashAttr}/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.5, dash = ""): void {
    const joined = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(`<polyline points="${joined}" fill="none" stroke="${stroke}" stroke-width="${width}"${dashAttr}/>`);
  }

  circle(x: number, y: number, r: number, fill: string): void {
    this.parts.push(`<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" fill="${fill}"/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.parts.push(`<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`);
  }

  text(x: number, y: number, content: string, size = 11, anchor = "start", fill = "#222"): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" ${FONT} font-size="${size}" text-anchor="${anchor}" fill="${fill}">${escapeXml(content)}</text>`,
    );
  }

  axes(box: PanelBox, xTicks: number[], yTicks: number[], xScale: Scale, yScale: Scale, xLabel: string, yLabel: string, title: string): void {
    const bottom = box.y + box.height;
    const right = box.x + box.width;
    this.line(box.x, bottom, right, bottom, "#333");
    this.line(box.x, box.y, box.x, bottom, "#333");
    for (const t of xTicks) {
      const px = xScale(t);
      this.line(px, bottom, px, bottom + 4, "#333");
      this.line(px, box.y, px, bottom, "#eee");
      this.text(px, bottom + 16, tickLabel(t), 10, "middle");
    }
    for (const t of yTicks) {
      const py = yScale(t);
      this.line(box.x - 4, py, box.x, py, "#333");
      this.line(box.x, py, right, py, "#eee");
      this.text(box.x - 7, py + 3, tickLabel(t), 10, "end");
    }
    this.text(box.x + box.width / 2, bottom + 32, xLabel, 12, "middle");
    this.raw(
      `<text x="${fmt(box.x - 38)}" y="${fmt(box.y + box.height / 2)}" ${FONT} font-size="12" text-anchor="middle" fill="#222" transform="rotate(-90 ${fmt(box.x - 38)} ${fmt(box.y + box.height / 2)})">${escapeXml(yLabel)}</text>`,
    );
    this.text(box.x + box.width / 2, box.y - 8, title, 13, "middle");
  }

  legend(x: number, y: number, entries: Array<[string, string]>): void {
    entries.forEach(([label, color], i) => {
      const rowY = y + i * 16;
      this.line(x, rowY - 4, x + 18, rowY - 4, color, 2);
      this.text(x + 24, rowY, label, 11);
    });
  }

  render(): string {
    return [...this.parts, "</svg>"].join("\n") + "\n";
  }
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
