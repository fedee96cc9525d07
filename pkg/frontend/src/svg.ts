/** Minimal SVG line/heatmap plotting, no DOM required. */

export interface Scale {
  (value: number): number;
  ticks(): number[];
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
  tickCount = 6,
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.ticks = () => niceTicks(d0, d1, tickCount);
  return fn;
}

export function log10Scale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const lo = Math.log10(domain[0]);
  const hi = Math.log10(domain[1]);
  const [r0, r1] = range;
  const span = hi - lo || 1;
  const fn = ((v: number) =>
    r0 + ((Math.log10(v) - lo) / span) * (r1 - r0)) as Scale;
  fn.ticks = () => {
    const out: number[] = [];
    for (let e = Math.ceil(lo); e <= Math.floor(hi); e += 1) {
      out.push(10 ** e);
    }
    if (out.length === 0) out.push(domain[0], domain[1]);
    return out;
  };
  return fn;
}

function niceTicks(lo: number, hi: number, count: number): number[] {
  const span = hi - lo || 1;
  const step0 = span / Math.max(count - 1, 1);
  const mag = 10 ** Math.floor(Math.log10(step0));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= count) ?? mag * 10;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const abs = Math.abs(v);
  if (abs >= 0.001 && abs < 10000) {
    return String(Number(v.toPrecision(4)));
  }
  const e = Math.floor(Math.log10(abs));
  const mantissa = v / 10 ** e;
  return Math.abs(mantissa - 1) < 1e-9 ? `1e${e}` : `${Number(mantissa.toPrecision(2))}e${e}`;
}

const esc = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export class SvgCanvas {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {}

  rect(x: number, y: number, w: number, h: number, style: string): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" style="${style}"/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, style: string): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" style="${style}"/>`,
    );
  }

  polyline(points: [number, number][], style: string): void {
    if (points.length === 0) return;
    const attr = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polyline points="${attr}" style="fill:none;${style}"/>`);
  }

  circle(cx: number, cy: number, r: number, style: string): void {
    this.parts.push(
      `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" style="${style}"/>`,
    );
  }

  text(
    x: number,
    y: number,
    content: string,
    style = "",
    anchor: "start" | "middle" | "end" = "start",
  ): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" ` +
        `style="font-family:sans-serif;${style}">${esc(content)}</text>`,
    );
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  render(): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" ` +
      `height="${this.height}" viewBox="0 0 ${this.width} ${this.height}">\n` +
      `<rect width="${this.width}" height="${this.height}" fill="white"/>\n` +
      this.parts.join("\n") +
      "\n</svg>\n"
    );
  }
}

function fmt(v: number): string {
  return Number.isInteger(v) ? String(v) : v.toFixed(2);
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];
