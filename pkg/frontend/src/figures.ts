import { writeFileSync } from "node:fs";
import { SchemaError, groupBy, loadTable, num } from "./csv.js";
import { Curve, lineChart } from "./chart.js";
import { PALETTE, SvgCanvas, linearScale, tickLabel } from "./svg.js";

export const FIGURE_IDS = [
  "fig1",
  "fig2",
  "fig3cr",
  "fig_lifetime",
  "fig4",
  "fig5",
] as const;

export type FigureId = (typeof FIGURE_IDS)[number];

const CHANNEL_COLUMNS = [
  "code", "m", "p",
  "lambda0", "lambda1", "lambda2", "lambda3",
  "mu0", "mu1", "mu2", "mu3", "p_eff",
];

/** Render one figure id from its CSV; returns the SVG text it wrote. */
export function renderFigure(id: FigureId, inPath: string, outPath: string): string {
  const svg = BUILDERS[id](inPath);
  writeFileSync(outPath, svg, "utf-8");
  return svg;
}

function meanCurveChart(
  inPath: string,
  column: "mu1" | "mu3",
  title: string,
): string {
  const table = loadTable(inPath, CHANNEL_COLUMNS);
  const groups = groupBy(table.rows, (r) => `${r.code} m=${r.m}`);
  const curves: Curve[] = [...groups.entries()].map(([label, rows]) => ({
    label,
    points: rows.map((r) => [num(r, "p"), num(r, column)] as [number, number]),
  }));
  return lineChart({
    title,
    xLabel: "p",
    yLabel: column === "mu1" ? "mean X/Y error weight" : "mean Z error weight",
    curves,
    logInset: { fromX: 0.8 },
  });
}

function fig1(inPath: string): string {
  return meanCurveChart(inPath, "mu1", "Mean bit-flip noise vs p (log inset for weak noise)");
}

function fig2(inPath: string): string {
  return meanCurveChart(inPath, "mu3", "Mean phase noise vs p (log inset for weak noise)");
}

function fig3cr(inPath: string): string {
  const table = loadTable(inPath, CHANNEL_COLUMNS);
  const rows = table.rows.filter((r) => r.p_eff !== "NA");
  if (rows.length === 0) {
    throw new SchemaError(
      `${inPath} has no rows with a p_eff estimate; expected a cluster-ring sweep`,
    );
  }
  const curves: Curve[] = [
    {
      label: "trivial-syndrome error rate",
      points: rows.map((r) => [num(r, "p"), num(r, "lambda1")]),
    },
    {
      label: "mean error rate",
      points: rows.map((r) => [num(r, "p"), num(r, "mu1")]),
    },
    {
      label: "(1 - p_eff)/4 estimate",
      dashed: true,
      points: rows.map((r) => [num(r, "p"), (1 - num(r, "p_eff")) / 4]),
    },
  ];
  return lineChart({
    title: "Five-qubit ring: effective error rates under white noise",
    xLabel: "p",
    yLabel: "error weight per Pauli",
    curves,
    logInset: { fromX: 0.8 },
  });
}

function figLifetime(inPath: string): string {
  const table = loadTable(inPath, ["encoding", "m", "N", "p_crit", "residual"]);
  const groups = groupBy(table.rows, (r) => `${r.encoding}, N=${r.N}`);
  const curves: Curve[] = [...groups.entries()].map(([label, rows]) => ({
    label,
    markers: true,
    points: rows
      .map((r) => [num(r, "m"), num(r, "p_crit")] as [number, number])
      .sort((a, b) => a[0] - b[0]),
  }));
  return lineChart({
    title: "Distillable-entanglement lifetime bound vs block size",
    xLabel: "m",
    yLabel: "p_crit",
    curves,
  });
}

function fig4(inPath: string): string {
  const table = loadTable(inPath, ["m1", "m2", "p_c", "grid_checked"]);
  const m1s = [...new Set(table.rows.map((r) => num(r, "m1")))].sort((a, b) => a - b);
  const m2s = [...new Set(table.rows.map((r) => num(r, "m2")))].sort((a, b) => a - b);
  const values = new Map<string, number | null>();
  for (const row of table.rows) {
    values.set(`${row.m1},${row.m2}`, row.p_c === "NA" ? null : num(row, "p_c"));
  }
  const finite = [...values.values()].filter((v): v is number => v !== null);
  if (finite.length === 0) {
    throw new SchemaError(`${inPath} holds no finite critical rates to plot`);
  }
  const lo = Math.min(...finite);
  const hi = Math.max(...finite);

  const cell = 52;
  const x0 = 90;
  const y0 = 60;
  const width = x0 + cell * m1s.length + 140;
  const height = y0 + cell * m2s.length + 70;
  const svg = new SvgCanvas(width, height);
  svg.text(width / 2, 26, "Critical rate p_c by level sizes (lighter is better)",
    "font-size:14px;font-weight:bold", "middle");

  const shade = (v: number) => {
    const t = hi > lo ? (v - lo) / (hi - lo) : 0.5; // 0 best (light), 1 worst (dark)
    const g = Math.round(235 - 180 * t);
    return `rgb(${g},${g},${Math.min(255, g + 15)})`;
  };

  m1s.forEach((m1, i) => {
    m2s.forEach((m2, j) => {
      const v = values.get(`${m1},${m2}`);
      const px = x0 + i * cell;
      const py = y0 + (m2s.length - 1 - j) * cell;
      if (v === null || v === undefined) {
        svg.rect(px, py, cell - 2, cell - 2, "fill:#f4f4f4;stroke:#bbb");
        svg.text(px + cell / 2, py + cell / 2 + 4, "NA", "font-size:10px;fill:#999", "middle");
      } else {
        svg.rect(px, py, cell - 2, cell - 2, `fill:${shade(v)};stroke:#888`);
        svg.text(px + cell / 2, py + cell / 2 + 4, v.toFixed(3),
          "font-size:10px;fill:#222", "middle");
      }
    });
    svg.text(x0 + i * cell + cell / 2, y0 + cell * m2s.length + 18, String(m1),
      "font-size:11px", "middle");
  });
  m2s.forEach((m2, j) => {
    svg.text(x0 - 12, y0 + (m2s.length - 1 - j) * cell + cell / 2 + 4, String(m2),
      "font-size:11px", "end");
  });
  svg.text(x0 + (cell * m1s.length) / 2, y0 + cell * m2s.length + 42,
    "inner size m1", "font-size:12px", "middle");
  svg.text(x0 - 56, y0 + (cell * m2s.length) / 2, "outer size m2", "font-size:12px", "middle");

  // circle the best outer size for every inner size
  m1s.forEach((m1, i) => {
    let best: { m2: number; v: number } | null = null;
    for (const m2 of m2s) {
      const v = values.get(`${m1},${m2}`);
      if (v !== null && v !== undefined && (best === null || v < best.v)) {
        best = { m2, v };
      }
    }
    if (best) {
      const j = m2s.indexOf(best.m2);
      svg.circle(
        x0 + i * cell + (cell - 2) / 2,
        y0 + (m2s.length - 1 - j) * cell + (cell - 2) / 2,
        cell / 2 - 6,
        "fill:none;stroke:#1f4fd6;stroke-width:2",
      );
    }
  });
  svg.text(x0, height - 10,
    `p_c from ${tickLabel(lo)} (lightest) to ${tickLabel(hi)} (darkest); circles mark the best m2 per m1`,
    "font-size:10px;fill:#444");
  return svg.render();
}

function fig5(inPath: string): string {
  const table = loadTable(inPath, ["encoding", "m", "N", "negativity"]);
  const groups = groupBy(table.rows, (r) => `${r.encoding} m=${r.m}`);
  const curves: Curve[] = [...groups.entries()].map(([label, rows]) => ({
    label,
    points: rows
      .map((r) => [num(r, "N"), num(r, "negativity")] as [number, number])
      .sort((a, b) => a[0] - b[0]),
  }));

  const annotations = [];
  const ghz5 = groups.get("ghz m=5");
  const ring5 = groups.get("cluster_ring m=5");
  if (ghz5 && ring5) {
    const crossing = findCrossing(
      ghz5.map((r) => [num(r, "N"), num(r, "negativity")]),
      ring5.map((r) => [num(r, "N"), num(r, "negativity")]),
    );
    if (crossing !== null) {
      annotations.push({ x: crossing, label: `N_crit = ${crossing}` });
    }
  }
  return lineChart({
    title: "Negativity lower bound vs system size (1 : N-1 split)",
    xLabel: "N",
    yLabel: "negativity",
    curves,
    yLog: true,
    annotations,
  });
}

/** First N where the first curve catches up with the second. */
export function findCrossing(
  a: [number, number][],
  b: [number, number][],
): number | null {
  const bByN = new Map(b.map(([n, v]) => [n, v]));
  let prev: number | null = null;
  for (const [n, va] of [...a].sort((x, y) => x[0] - y[0])) {
    const vb = bByN.get(n);
    if (vb === undefined) continue;
    const diff = va - vb;
    if (prev !== null && prev < 0 && diff >= 0) return n;
    prev = diff;
  }
  return null;
}

const BUILDERS: Record<FigureId, (inPath: string) => string> = {
  fig1,
  fig2,
  fig3cr,
  fig_lifetime: figLifetime,
  fig4,
  fig5,
};
