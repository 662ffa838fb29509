#!/usr/bin/env node
/**
 * kneser-lab figure renderer.
 *
 * Usage:
 *   plot <chi-gap|empty-success|zeta-sandwich> --in file.csv [--in more.csv] --out fig.svg
 *
 * Reads CSVs produced by the primary kneser-lab CLI (metadata block
 * required), renders a deterministic SVG, and exits nonzero on any schema
 * mismatch. Multiple --in files are concatenated after checking that their
 * headers agree.
 */

import { readFileSync, writeFileSync } from "fs";

import { ParsedCsv, SchemaError, parseLabCsv } from "./csv";
import { FigureKind, render } from "./figures";

const KINDS: FigureKind[] = ["chi-gap", "empty-success", "zeta-sandwich"];

interface Args {
  kind: FigureKind;
  inputs: string[];
  out: string;
}

export function parseArgs(argv: string[]): Args {
  if (argv.length === 0) {
    throw new SchemaError(`usage: plot <${KINDS.join("|")}> --in file.csv --out fig.svg`);
  }
  const kind = argv[0] as FigureKind;
  if (!KINDS.includes(kind)) {
    throw new SchemaError(`unknown figure kind "${argv[0]}"; expected one of ${KINDS.join(", ")}`);
  }
  const inputs: string[] = [];
  let out = "";
  for (let i = 1; i < argv.length; i++) {
    if (argv[i] === "--in" && i + 1 < argv.length) {
      inputs.push(argv[++i]);
    } else if (argv[i] === "--out" && i + 1 < argv.length) {
      out = argv[++i];
    } else {
      throw new SchemaError(`unexpected argument ${argv[i]}`);
    }
  }
  if (inputs.length === 0 || !out) {
    throw new SchemaError("both --in and --out are required");
  }
  return { kind, inputs, out };
}

export function merge(parsed: ParsedCsv[]): ParsedCsv {
  const first = parsed[0];
  for (const p of parsed.slice(1)) {
    if (p.header.join(",") !== first.header.join(",")) {
      throw new SchemaError("input files have different headers");
    }
  }
  return {
    meta: first.meta,
    header: first.header,
    rows: parsed.flatMap((p) => p.rows),
  };
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    const parsed = merge(args.inputs.map((path) => parseLabCsv(readFileSync(path, "utf-8"))));
    const svg = render(args.kind, parsed);
    writeFileSync(args.out, svg);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 1;
    }
    if (err instanceof Error && "code" in err) {
      console.error(`io error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
