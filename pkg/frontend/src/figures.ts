/**
 * The three figure kinds over kneser-lab CSVs:
 *
 *   chi-gap       — sampled chromatic numbers vs n against the n-2k+2 line,
 *                   with a least-squares gap guide curve (labeled as a fit);
 *   empty-success — empty-family search success fraction vs target length l;
 *   zeta-sandwich — lower/upper monochromatic-edge bounds per n.
 *
 * Bound-only rows are drawn with open markers so unfinished solves are never
 * mistaken for exact values.
 */

import { ParsedCsv, SchemaError, numbers, column, requireColumns } from "./csv";
import { MARGIN, W, H, fmt, frame, legend, linearScale, polyline } from "./svg";

const CHI_COLUMNS = [
  "n", "k", "r", "p_num", "p_den", "seed",
  "chi_sample", "chi_full", "gap", "optimality", "nodes", "millis",
];
const EMPTY_COLUMNS = ["n", "k", "r", "l", "sample_seed", "search_seed", "found", "restarts", "millis"];
const ZETA_COLUMNS = ["n", "k", "lower", "upper", "exact"];

const BLUE = "#2b6cb0";
const GREEN = "#2f855a";
const RED = "#c53030";
const GRAY = "#718096";

// ── chi-gap ────────────────────────────────────────────────────────────

export interface ChiRow {
  n: number;
  chi: number;
  chiFull: number;
  gap: number;
  proven: boolean;
}

export function chiRows(parsed: ParsedCsv): { k: number; rows: ChiRow[] } {
  requireColumns(parsed, CHI_COLUMNS, "chi-gap");
  const ks = new Set(numbers(parsed, "k"));
  if (ks.size !== 1) {
    throw new SchemaError(`chi-gap needs a single k per figure, got {${[...ks].join(",")}}`);
  }
  const n = numbers(parsed, "n");
  const chi = numbers(parsed, "chi_sample");
  const full = numbers(parsed, "chi_full");
  const gap = numbers(parsed, "gap");
  const opt = column(parsed, "optimality");
  const rows = n.map((nv, i) => ({
    n: nv,
    chi: chi[i],
    chiFull: full[i],
    gap: gap[i],
    proven: opt[i] === "proven",
  }));
  return { k: [...ks][0], rows };
}

/** Least-squares fit through the origin of gap ~ c * (log2 n)^(1/(2k-2)). */
export function fitGapConstant(rows: ChiRow[], k: number): number {
  const exponent = 1 / (2 * k - 2);
  let num = 0;
  let den = 0;
  for (const r of rows) {
    const w = Math.pow(Math.log2(r.n), exponent);
    num += r.gap * w;
    den += w * w;
  }
  return den > 0 ? num / den : 0;
}

export function renderChiGap(parsed: ParsedCsv): string {
  const { k, rows } = chiRows(parsed);
  const ns = rows.map((r) => r.n);
  const nLo = Math.min(...ns);
  const nHi = Math.max(...ns);
  const yHi = Math.max(...rows.map((r) => r.chiFull)) + 1;
  const x = linearScale(nLo - 0.5, nHi + 0.5, MARGIN.left, W - MARGIN.right);
  const y = linearScale(0, yHi, H - MARGIN.bottom, MARGIN.top);
  x.ticks = [...new Set(ns)].sort((a, b) => a - b);

  const c = fitGapConstant(rows, k);
  const exponent = 1 / (2 * k - 2);

  let s = frame({
    title: `Sampled chromatic number vs n (k=${k})`,
    subtitle: parsed.meta.config,
    xLabel: "n",
    yLabel: "chromatic number",
    x, y,
  });

  // guide line chi = n-2k+2 and the fitted gap curve below it
  const guidePts: Array<[number, number]> = [];
  const fitPts: Array<[number, number]> = [];
  for (let nv = nLo; nv <= nHi; nv += 0.25) {
    const full = nv - 2 * k + 2;
    guidePts.push([x(nv), y(full)]);
    fitPts.push([x(nv), y(full - c * Math.pow(Math.log2(nv), exponent))]);
  }
  s += polyline(guidePts, GREEN, 1.4, "6,3");
  s += polyline(fitPts, RED, 1.2, "2,3");

  // mean chi per n for the trend line
  const byN = new Map<number, number[]>();
  for (const r of rows) {
    byN.set(r.n, [...(byN.get(r.n) ?? []), r.chi]);
  }
  const meanPts: Array<[number, number]> = [...byN.entries()]
    .sort((a, b) => a[0] - b[0])
    .map(([nv, chis]) => [x(nv), y(chis.reduce((a, b) => a + b, 0) / chis.length)]);
  s += polyline(meanPts, BLUE, 1.2);

  for (const r of rows) {
    if (r.proven) {
      s += `<circle cx="${fmt(x(r.n))}" cy="${fmt(y(r.chi))}" r="2.4" fill="${BLUE}" fill-opacity="0.45"/>\n`;
    } else {
      s += `<rect x="${fmt(x(r.n) - 2.6)}" y="${fmt(y(r.chi) - 2.6)}" width="5.2" height="5.2" fill="none" stroke="${RED}" stroke-width="1.1"/>\n`;
    }
  }

  s += legend([
    { label: "chi(KG_{n,k}) = n-2k+2", color: GREEN, dash: "6,3" },
    { label: `fit: n-2k+2 - c*(log2 n)^${exponent.toFixed(2)}, c=${c.toFixed(3)} (least squares)`, color: RED, dash: "2,3" },
    { label: "sampled chi (mean per n)", color: BLUE },
    { label: "bound-only solve", color: RED, open: true },
  ]);
  s += "</svg>\n";
  return s;
}

// ── empty-success ──────────────────────────────────────────────────────

export function successFractions(parsed: ParsedCsv): Map<number, { found: number; total: number }> {
  requireColumns(parsed, EMPTY_COLUMNS, "empty-success");
  const ls = numbers(parsed, "l");
  const found = column(parsed, "found");
  const acc = new Map<number, { found: number; total: number }>();
  ls.forEach((l, i) => {
    const slot = acc.get(l) ?? { found: 0, total: 0 };
    slot.total += 1;
    if (found[i] === "true") slot.found += 1;
    acc.set(l, slot);
  });
  return acc;
}

export function renderEmptySuccess(parsed: ParsedCsv): string {
  const fractions = successFractions(parsed);
  const ls = [...fractions.keys()].sort((a, b) => a - b);
  const x = linearScale(ls[0] - 0.5, ls[ls.length - 1] + 0.5, MARGIN.left, W - MARGIN.right);
  const y = linearScale(0, 1, H - MARGIN.bottom, MARGIN.top);
  x.ticks = ls;
  y.ticks = [0, 0.25, 0.5, 0.75, 1];

  let s = frame({
    title: "Empty-family search success fraction vs l",
    subtitle: parsed.meta.config,
    xLabel: "target family length l",
    yLabel: "success fraction",
    x, y,
    yTickFormat: (v) => v.toFixed(2),
  });
  const pts: Array<[number, number]> = ls.map((l) => {
    const { found, total } = fractions.get(l)!;
    return [x(l), y(found / total)];
  });
  s += polyline(pts, BLUE, 1.4);
  ls.forEach((l, i) => {
    const { found, total } = fractions.get(l)!;
    s += `<circle cx="${fmt(pts[i][0])}" cy="${fmt(pts[i][1])}" r="3" fill="${BLUE}"/>\n`;
    s += `<text x="${fmt(pts[i][0] + 6)}" y="${fmt(pts[i][1] - 6)}" font-size="9" fill="#444">${found}/${total}</text>\n`;
  });
  s += "</svg>\n";
  return s;
}

// ── zeta-sandwich ──────────────────────────────────────────────────────

export interface Sandwich {
  n: number;
  lower: number;
  upper: number;
  exact: boolean;
  collapsed: boolean;
}

export function sandwiches(parsed: ParsedCsv): Sandwich[] {
  requireColumns(parsed, ZETA_COLUMNS, "zeta-sandwich");
  const n = numbers(parsed, "n");
  const lower = numbers(parsed, "lower");
  const upper = numbers(parsed, "upper");
  const exact = column(parsed, "exact");
  return n.map((nv, i) => ({
    n: nv,
    lower: lower[i],
    upper: upper[i],
    exact: exact[i] === "true",
    collapsed: lower[i] === upper[i],
  }));
}

export function renderZetaSandwich(parsed: ParsedCsv): string {
  const rows = sandwiches(parsed);
  const ns = rows.map((r) => r.n);
  const x = linearScale(Math.min(...ns) - 0.5, Math.max(...ns) + 0.5, MARGIN.left, W - MARGIN.right);
  const hi = Math.max(...rows.map((r) => r.upper)) + 1;
  const y = linearScale(0, hi, H - MARGIN.bottom, MARGIN.top);
  x.ticks = [...new Set(ns)].sort((a, b) => a - b);

  let s = frame({
    title: "Monochromatic-edge bounds at n-2k+1 colors",
    subtitle: parsed.meta.config,
    xLabel: "n",
    yLabel: "monochromatic edges",
    x, y,
  });
  for (const r of rows) {
    const xx = fmt(x(r.n));
    if (r.collapsed) {
      // exact value: a single filled diamond
      const cy = y(r.lower);
      s += `<path d="M ${xx} ${fmt(cy - 4)} L ${fmt(x(r.n) + 4)} ${fmt(cy)} L ${xx} ${fmt(cy + 4)} L ${fmt(x(r.n) - 4)} ${fmt(cy)} Z" fill="${GREEN}"/>\n`;
    } else {
      s += `<line x1="${xx}" y1="${fmt(y(r.lower))}" x2="${xx}" y2="${fmt(y(r.upper))}" stroke="${GRAY}" stroke-width="1.2" stroke-dasharray="3,2"/>\n`;
      s += `<circle cx="${xx}" cy="${fmt(y(r.lower))}" r="3" fill="none" stroke="${BLUE}" stroke-width="1.2"/>\n`;
      s += `<circle cx="${xx}" cy="${fmt(y(r.upper))}" r="3" fill="none" stroke="${RED}" stroke-width="1.2"/>\n`;
    }
  }
  s += legend([
    { label: "exact (lower = upper)", color: GREEN },
    { label: "lower bound (bound-only)", color: BLUE, open: true },
    { label: "upper bound (bound-only)", color: RED, open: true },
  ]);
  s += "</svg>\n";
  return s;
}

// ── dispatch ───────────────────────────────────────────────────────────

export type FigureKind = "chi-gap" | "empty-success" | "zeta-sandwich";

export function render(kind: FigureKind, parsed: ParsedCsv): string {
  switch (kind) {
    case "chi-gap":
      return renderChiGap(parsed);
    case "empty-success":
      return renderEmptySuccess(parsed);
    case "zeta-sandwich":
      return renderZetaSandwich(parsed);
  }
}
