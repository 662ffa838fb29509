/**
 * Minimal deterministic SVG building blocks: fixed layout, fixed fonts,
 * two-decimal coordinates, no randomness anywhere.
 */

export const W = 640;
export const H = 400;
export const MARGIN = { left: 56, right: 24, top: 40, bottom: 48 };

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function fmt(x: number): string {
  return x.toFixed(2);
}

export interface Scale {
  (v: number): number;
  ticks: number[];
}

export function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo || 1;
  const f = ((v: number) => outLo + ((v - lo) / span) * (outHi - outLo)) as Scale;
  f.ticks = niceTicks(lo, hi, 6);
  return f;
}

export function niceTicks(lo: number, hi: number, count: number): number[] {
  const span = hi - lo || 1;
  const rough = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= rough) ?? rough;
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export interface FrameOpts {
  title: string;
  subtitle: string;
  xLabel: string;
  yLabel: string;
  x: Scale;
  y: Scale;
  xTickFormat?: (v: number) => string;
  yTickFormat?: (v: number) => string;
}

/** Opening tag, background, title block, axes, grid and tick labels. */
export function frame(opts: FrameOpts): string {
  const { x, y } = opts;
  const xfmt = opts.xTickFormat ?? ((v: number) => String(v));
  const yfmt = opts.yTickFormat ?? ((v: number) => String(v));
  const left = MARGIN.left;
  const right = W - MARGIN.right;
  const top = MARGIN.top;
  const bottom = H - MARGIN.bottom;
  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${W}" height="${H}" fill="#ffffff"/>\n`;
  s += `<text x="${left}" y="18" font-size="13" font-weight="600" fill="#1a1a1a">${esc(opts.title)}</text>\n`;
  s += `<text x="${left}" y="32" font-size="9" fill="#777">${esc(opts.subtitle)}</text>\n`;
  for (const t of y.ticks) {
    const yy = fmt(y(t));
    s += `<line x1="${left}" y1="${yy}" x2="${right}" y2="${yy}" stroke="#eeeeee" stroke-width="0.6"/>\n`;
    s += `<text x="${left - 6}" y="${fmt(y(t) + 3)}" text-anchor="end" font-size="9" fill="#555">${esc(yfmt(t))}</text>\n`;
  }
  for (const t of x.ticks) {
    const xx = fmt(x(t));
    s += `<line x1="${xx}" y1="${bottom}" x2="${xx}" y2="${bottom + 4}" stroke="#333" stroke-width="0.6"/>\n`;
    s += `<text x="${xx}" y="${bottom + 15}" text-anchor="middle" font-size="9" fill="#555">${esc(xfmt(t))}</text>\n`;
  }
  s += `<line x1="${left}" y1="${top}" x2="${left}" y2="${bottom}" stroke="#333" stroke-width="0.8"/>\n`;
  s += `<line x1="${left}" y1="${bottom}" x2="${right}" y2="${bottom}" stroke="#333" stroke-width="0.8"/>\n`;
  s += `<text x="${fmt((left + right) / 2)}" y="${H - 10}" text-anchor="middle" font-size="10" fill="#333">${esc(opts.xLabel)}</text>\n`;
  s += `<text x="14" y="${fmt((top + bottom) / 2)}" text-anchor="middle" font-size="10" fill="#333" transform="rotate(-90,14,${fmt((top + bottom) / 2)})">${esc(opts.yLabel)}</text>\n`;
  return s;
}

export function polyline(points: Array<[number, number]>, stroke: string, width: number, dash?: string): string {
  const pts = points.map(([a, b]) => `${fmt(a)},${fmt(b)}`).join(" ");
  const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
  return `<polyline fill="none" stroke="${stroke}" stroke-width="${width}"${dashAttr} points="${pts}"/>\n`;
}

export function legend(entries: Array<{ label: string; color: string; dash?: string; open?: boolean }>): string {
  const x0 = W - MARGIN.right - 200;
  let s = "";
  entries.forEach((e, i) => {
    const yy = MARGIN.top + 10 + i * 13;
    if (e.open) {
      s += `<rect x="${x0}" y="${yy - 4}" width="8" height="8" fill="none" stroke="${e.color}" stroke-width="1.2"/>\n`;
    } else {
      s += `<line x1="${x0 - 2}" y1="${yy}" x2="${x0 + 10}" y2="${yy}" stroke="${e.color}" stroke-width="2"${e.dash ? ` stroke-dasharray="${e.dash}"` : ""}/>\n`;
    }
    s += `<text x="${x0 + 16}" y="${yy + 3}" font-size="9" fill="#444">${esc(e.label)}</text>\n`;
  });
  return s;
}
