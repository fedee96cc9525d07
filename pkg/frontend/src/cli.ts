import { parseArgs } from "node:util";
import { FigureId, renderFigure } from "./figures.js";
import { SchemaError } from "./csv.js";

/** Shared --in/--out runner used by every per-figure script. */
export function runFigureCli(id: FigureId, argv: string[]): number {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        in: { type: "string" },
        out: { type: "string" },
      },
    }));
  } catch (err) {
    process.stderr.write(`usage: ${id} --in data.csv --out figure.svg\n`);
    return 2;
  }
  if (!values.in || !values.out) {
    process.stderr.write(`usage: ${id} --in data.csv --out figure.svg\n`);
    return 2;
  }
  try {
    renderFigure(id, values.in, values.out);
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`${id}: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
  return 0;
}
