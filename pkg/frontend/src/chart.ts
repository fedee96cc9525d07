import { PALETTE, Scale, SvgCanvas, linearScale, log10Scale, tickLabel } from "./svg.js";

export interface Curve {
  label: string;
  points: [number, number][];
  dashed?: boolean;
  markers?: boolean;
}

export interface Annotation {
  x: number;
  label: string;
}

export interface LineChartOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  curves: Curve[];
  yLog?: boolean;
  /** restrict curves to x >= insetFromX and re-plot with log y in a corner */
  logInset?: { fromX: number };
  annotations?: Annotation[];
  width?: number;
  height?: number;
}

interface Frame {
  x0: number;
  y0: number;
  w: number;
  h: number;
}

function positiveMin(curves: Curve[], restrict?: (p: [number, number]) => boolean): number {
  let lo = Infinity;
  for (const c of curves) {
    for (const p of c.points) {
      if (p[1] > 0 && (!restrict || restrict(p))) lo = Math.min(lo, p[1]);
    }
  }
  return Number.isFinite(lo) ? lo : 1e-12;
}

function drawAxes(
  svg: SvgCanvas,
  frame: Frame,
  xs: Scale,
  ys: Scale,
  xLabel: string,
  yLabel: string,
  fontPx: number,
): void {
  const axisStyle = "stroke:#333;stroke-width:1";
  svg.line(frame.x0, frame.y0 + frame.h, frame.x0 + frame.w, frame.y0 + frame.h, axisStyle);
  svg.line(frame.x0, frame.y0, frame.x0, frame.y0 + frame.h, axisStyle);
  for (const t of xs.ticks()) {
    const px = xs(t);
    svg.line(px, frame.y0 + frame.h, px, frame.y0 + frame.h + 4, axisStyle);
    svg.text(px, frame.y0 + frame.h + fontPx + 6, tickLabel(t), `font-size:${fontPx}px`, "middle");
  }
  for (const t of ys.ticks()) {
    const py = ys(t);
    svg.line(frame.x0 - 4, py, frame.x0, py, axisStyle);
    svg.text(frame.x0 - 6, py + fontPx / 3, tickLabel(t), `font-size:${fontPx}px`, "end");
    svg.line(frame.x0, py, frame.x0 + frame.w, py, "stroke:#eee;stroke-width:0.5");
  }
  svg.text(
    frame.x0 + frame.w / 2,
    frame.y0 + frame.h + 2 * fontPx + 10,
    xLabel,
    `font-size:${fontPx + 1}px`,
    "middle",
  );
  svg.raw(
    `<text x="${(frame.x0 - 40).toFixed(1)}" y="${(frame.y0 + frame.h / 2).toFixed(1)}" ` +
      `text-anchor="middle" style="font-family:sans-serif;font-size:${fontPx + 1}px" ` +
      `transform="rotate(-90 ${(frame.x0 - 40).toFixed(1)} ${(frame.y0 + frame.h / 2).toFixed(1)})">` +
      `${yLabel}</text>`,
  );
}

function drawCurves(
  svg: SvgCanvas,
  curves: Curve[],
  xs: Scale,
  ys: Scale,
  yLog: boolean,
  strokeWidth = 1.6,
): void {
  curves.forEach((curve, i) => {
    const color = PALETTE[i % PALETTE.length];
    const dash = curve.dashed ? "stroke-dasharray:6 3;" : "";
    const pts = curve.points
      .filter(([, y]) => !yLog || y > 0)
      .map(([x, y]) => [xs(x), ys(y)] as [number, number]);
    svg.polyline(pts, `stroke:${color};stroke-width:${strokeWidth};${dash}`);
    if (curve.markers) {
      for (const [px, py] of pts) {
        svg.circle(px, py, 2.5, `fill:${color};stroke:none`);
      }
    }
  });
}

export function lineChart(options: LineChartOptions): string {
  const width = options.width ?? 640;
  const height = options.height ?? 440;
  const svg = new SvgCanvas(width, height);
  const frame: Frame = { x0: 70, y0: 40, w: width - 95, h: height - 110 };
  const curves = options.curves;
  const yLog = options.yLog ?? false;

  const allX = curves.flatMap((c) => c.points.map((p) => p[0]));
  const allY = curves.flatMap((c) => c.points.map((p) => p[1]));
  const xDom: [number, number] = [Math.min(...allX), Math.max(...allX)];
  const yTop = Math.max(...allY, 1e-12);
  const xs = linearScale(xDom, [frame.x0, frame.x0 + frame.w]);
  const ys = yLog
    ? log10Scale([positiveMin(curves), yTop * 1.2], [frame.y0 + frame.h, frame.y0])
    : linearScale([0, yTop * 1.05], [frame.y0 + frame.h, frame.y0]);

  svg.text(width / 2, 22, options.title, "font-size:14px;font-weight:bold", "middle");
  drawAxes(svg, frame, xs, ys, options.xLabel, options.yLabel, 11);
  drawCurves(svg, curves, xs, ys, yLog);

  for (const ann of options.annotations ?? []) {
    const px = xs(ann.x);
    svg.line(px, frame.y0, px, frame.y0 + frame.h, "stroke:#555;stroke-width:1;stroke-dasharray:4 3");
    svg.text(px + 4, frame.y0 + 14, ann.label, "font-size:11px;fill:#333");
  }

  // legend, top-right inside the frame
  curves.forEach((curve, i) => {
    const color = PALETTE[i % PALETTE.length];
    const ly = frame.y0 + 14 + 15 * i;
    const lx = frame.x0 + frame.w - 150;
    svg.line(lx, ly - 4, lx + 22, ly - 4,
      `stroke:${color};stroke-width:2;${curve.dashed ? "stroke-dasharray:6 3;" : ""}`);
    svg.text(lx + 28, ly, curve.label, "font-size:10px");
  });

  if (options.logInset) {
    const inset: Frame = {
      x0: frame.x0 + Math.round(frame.w * 0.12),
      y0: frame.y0 + Math.round(frame.h * 0.12),
      w: Math.round(frame.w * 0.34),
      h: Math.round(frame.h * 0.4),
    };
    const fromX = options.logInset.fromX;
    // indices stay aligned with the main plot so colors match
    const sub = curves.map((c) => ({
      ...c,
      points: c.points.filter(([x, y]) => x >= fromX && y > 0),
    }));
    if (sub.some((c) => c.points.length > 1)) {
      svg.rect(inset.x0 - 48, inset.y0 - 10, inset.w + 62, inset.h + 42,
        "fill:white;stroke:#999;stroke-width:0.7");
      const subY = sub.flatMap((c) => c.points.map((p) => p[1]));
      const ixs = linearScale([fromX, xDom[1]], [inset.x0, inset.x0 + inset.w], 4);
      const iys = log10Scale(
        [Math.min(...subY), Math.max(...subY) * 1.5],
        [inset.y0 + inset.h, inset.y0],
      );
      drawAxes(svg, inset, ixs, iys, "", "", 8);
      drawCurves(svg, sub, ixs, iys, true, 1.1);
    }
  }
  return svg.render();
}
