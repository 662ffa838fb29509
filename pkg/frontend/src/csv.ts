/**
 * Parser for kneser-lab CSV files.
 *
 * Every file starts with a three-line metadata comment block
 * (`# kneser-lab v…`, `# config: …`, `# prng: …`) followed by a header row
 * and data rows. Figures fail fast when the block or the header does not
 * match what the requested figure kind consumes.
 */

export class SchemaError extends Error {}

export interface Metadata {
  version: string;
  config: string;
  prng: string;
}

export interface ParsedCsv {
  meta: Metadata;
  header: string[];
  rows: string[][];
}

export function parseLabCsv(text: string): ParsedCsv {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length < 4) {
    throw new SchemaError("file too short: expected metadata block, header and data rows");
  }
  const vm = lines[0].match(/^# kneser-lab v(.+)$/);
  const cm = lines[1].match(/^# config: (.+)$/);
  const pm = lines[2].match(/^# prng: (.+)$/);
  if (!vm || !cm || !pm) {
    throw new SchemaError("missing or malformed kneser-lab metadata block");
  }
  const body = lines.slice(3).filter((l) => !l.startsWith("#"));
  if (body.length === 0) {
    throw new SchemaError("no header row after the metadata block");
  }
  const header = body[0].split(",");
  const rows = body.slice(1).map((l) => l.split(","));
  if (rows.length === 0) {
    throw new SchemaError("CSV has a header but no data rows");
  }
  for (const row of rows) {
    if (row.length !== header.length) {
      throw new SchemaError(`row has ${row.length} fields, header has ${header.length}`);
    }
  }
  return { meta: { version: vm[1], config: cm[1], prng: pm[1] }, header, rows };
}

/** Header must match the expected columns; a trailing `millis` is optional. */
export function requireColumns(parsed: ParsedCsv, expected: string[], kind: string): void {
  const got = parsed.header;
  const stripped = got[got.length - 1] === "millis" ? got.slice(0, -1) : got;
  const want =
    expected[expected.length - 1] === "millis" ? expected.slice(0, -1) : expected;
  if (stripped.length !== want.length || stripped.some((c, i) => c !== want[i])) {
    throw new SchemaError(
      `${kind} expects columns [${want.join(",")}], got [${got.join(",")}]`
    );
  }
}

export function column(parsed: ParsedCsv, name: string): string[] {
  const i = parsed.header.indexOf(name);
  if (i < 0) throw new SchemaError(`missing column ${name}`);
  return parsed.rows.map((r) => r[i]);
}

export function numbers(parsed: ParsedCsv, name: string): number[] {
  return column(parsed, name).map((v) => {
    const x = Number(v);
    if (!Number.isFinite(x)) throw new SchemaError(`non-numeric value ${v} in column ${name}`);
    return x;
  });
}
