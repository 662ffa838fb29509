import assert from "node:assert/strict";
import { test } from "node:test";
import { readFileSync } from "fs";
import { join } from "path";

import { parseLabCsv, SchemaError } from "../src/csv";
import {
  chiRows,
  fitGapConstant,
  render,
  renderChiGap,
  sandwiches,
  successFractions,
} from "../src/figures";

const FIXTURES = join(__dirname, "..", "..", "test", "fixtures");

function fixture(name: string) {
  return parseLabCsv(readFileSync(join(FIXTURES, name), "utf-8"));
}

test("chi-gap rendering is deterministic", () => {
  const parsed = fixture("chi_k2.csv");
  const a = renderChiGap(parsed);
  const b = renderChiGap(fixture("chi_k2.csv"));
  assert.equal(a, b);
  assert.match(a, /^<svg /);
  assert.match(a, /least squares/);
});

test("chi-gap data never exceeds the n-2k+2 guide line", () => {
  const { rows } = chiRows(fixture("chi_k2.csv"));
  for (const r of rows) {
    assert.ok(r.chi <= r.chiFull, `chi_sample ${r.chi} above the line at n=${r.n}`);
    assert.ok(r.chi >= 1);
  }
});

test("gap fit constant is nonnegative and annotated", () => {
  const { k, rows } = chiRows(fixture("chi_k2.csv"));
  const c = fitGapConstant(rows, k);
  assert.ok(c >= 0);
  const svg = renderChiGap(fixture("chi_k2.csv"));
  assert.ok(svg.includes(`c=${c.toFixed(3)}`));
});

test("chi-gap rejects a zeta CSV", () => {
  assert.throws(() => renderChiGap(fixture("zeta_k2.csv")), SchemaError);
});

test("empty-success fractions", () => {
  const fr = successFractions(fixture("empty_success.csv"));
  assert.deepEqual(fr.get(2), { found: 10, total: 10 });
  assert.equal(fr.get(4)!.found, 0);
  const svg = render("empty-success", fixture("empty_success.csv"));
  assert.match(svg, /10\/10/);
  assert.equal(svg, render("empty-success", fixture("empty_success.csv")));
});

test("zeta sandwich collapses exact rows to a single marker", () => {
  const rows = sandwiches(fixture("zeta_k2.csv"));
  const n5 = rows.find((r) => r.n === 5)!;
  assert.ok(n5.exact && n5.collapsed && n5.lower === 3 && n5.upper === 3);
  const svg = render("zeta-sandwich", fixture("zeta_k2.csv"));
  const diamonds = svg.match(/<path d="M [^"]+" fill="#2f855a"\/>/g) ?? [];
  const whiskers = svg.match(/stroke-dasharray="3,2"/g) ?? [];
  assert.equal(diamonds.length, rows.filter((r) => r.collapsed).length);
  assert.equal(whiskers.length, rows.filter((r) => !r.collapsed).length);
  for (const r of rows) {
    assert.ok(r.lower <= r.upper);
  }
});
