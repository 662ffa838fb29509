import assert from "node:assert/strict";
import { test } from "node:test";
import { mkdtempSync, readFileSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";

import { main, parseArgs } from "../src/plot";
import { SchemaError } from "../src/csv";

const FIXTURES = join(__dirname, "..", "..", "test", "fixtures");

test("argument parsing", () => {
  const args = parseArgs(["chi-gap", "--in", "a.csv", "--out", "b.svg"]);
  assert.deepEqual(args, { kind: "chi-gap", inputs: ["a.csv"], out: "b.svg" });
  assert.throws(() => parseArgs(["nope", "--in", "a", "--out", "b"]), SchemaError);
  assert.throws(() => parseArgs(["chi-gap"]), SchemaError);
});

test("end-to-end rendering is byte-identical across runs", () => {
  const dir = mkdtempSync(join(tmpdir(), "plots-"));
  const outA = join(dir, "a.svg");
  const outB = join(dir, "b.svg");
  const input = join(FIXTURES, "chi_k2.csv");
  assert.equal(main(["chi-gap", "--in", input, "--out", outA]), 0);
  assert.equal(main(["chi-gap", "--in", input, "--out", outB]), 0);
  assert.deepEqual(readFileSync(outA), readFileSync(outB));
});

test("all three kinds render from their fixtures", () => {
  const dir = mkdtempSync(join(tmpdir(), "plots-"));
  const jobs: Array<[string, string]> = [
    ["chi-gap", "chi_k2.csv"],
    ["empty-success", "empty_success.csv"],
    ["zeta-sandwich", "zeta_k2.csv"],
  ];
  for (const [kind, file] of jobs) {
    const out = join(dir, `${kind}.svg`);
    assert.equal(main([kind, "--in", join(FIXTURES, file), "--out", out]), 0);
    assert.match(readFileSync(out, "utf-8"), /^<svg /);
  }
});

test("schema mismatch exits nonzero", () => {
  const dir = mkdtempSync(join(tmpdir(), "plots-"));
  const out = join(dir, "x.svg");
  assert.equal(main(["chi-gap", "--in", join(FIXTURES, "zeta_k2.csv"), "--out", out]), 1);
});

test("header-only CSV exits nonzero", () => {
  const dir = mkdtempSync(join(tmpdir(), "plots-"));
  const empty = join(dir, "empty.csv");
  writeFileSync(
    empty,
    "# kneser-lab v0.1.0\n# config: zeta n=5 k=2\n# prng: splitmix64\nn,k,lower,upper,exact\n"
  );
  assert.equal(main(["zeta-sandwich", "--in", empty, "--out", join(dir, "y.svg")]), 1);
});

test("missing input file exits nonzero", () => {
  const dir = mkdtempSync(join(tmpdir(), "plots-"));
  assert.equal(main(["chi-gap", "--in", join(dir, "nope.csv"), "--out", join(dir, "z.svg")]), 1);
});
