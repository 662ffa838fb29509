import assert from "node:assert/strict";
import { test } from "node:test";
import { readFileSync } from "fs";
import { join } from "path";

import { SchemaError, parseLabCsv, requireColumns } from "../src/csv";

const FIXTURES = join(__dirname, "..", "..", "test", "fixtures");

function fixture(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf-8");
}

test("parses metadata block and rows", () => {
  const parsed = parseLabCsv(fixture("chi_k2.csv"));
  assert.equal(parsed.meta.prng, "splitmix64");
  assert.match(parsed.meta.version, /^0\./);
  assert.match(parsed.meta.config, /^chi-random/);
  assert.equal(parsed.header[0], "n");
  assert.equal(parsed.rows.length, 60);
});

test("rejects files without the metadata block", () => {
  assert.throws(() => parseLabCsv("n,k\n5,2\n"), SchemaError);
});

test("rejects header-only files", () => {
  const headerOnly = [
    "# kneser-lab v0.1.0",
    "# config: chi-random",
    "# prng: splitmix64",
    "n,k,r,p_num,p_den,seed,chi_sample,chi_full,gap,optimality,nodes",
    "",
  ].join("\n");
  assert.throws(() => parseLabCsv(headerOnly), /no data rows/);
});

test("rejects ragged rows", () => {
  const ragged = [
    "# kneser-lab v0.1.0",
    "# config: x",
    "# prng: splitmix64",
    "a,b",
    "1,2,3",
  ].join("\n");
  assert.throws(() => parseLabCsv(ragged), SchemaError);
});

test("requireColumns tolerates a trailing millis column", () => {
  const base = parseLabCsv(fixture("empty_success.csv"));
  requireColumns(base, ["n", "k", "r", "l", "sample_seed", "search_seed", "found", "restarts", "millis"], "empty");
  assert.throws(
    () => requireColumns(base, ["n", "k", "lower", "upper", "exact"], "zeta"),
    SchemaError
  );
});
