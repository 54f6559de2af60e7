/**
 * Campaign CSV parsing with line-precise schema diagnostics.
 *
 * Expected schema (written by the `campaign` CLI):
 *   replication,strategy,step,pair_i,pair_j,outcome,mocu,mocu_stderr
 * Step-0 rows carry empty pair/outcome fields.
 */

export const CSV_HEADER = [
  "replication", "strategy", "step", "pair_i", "pair_j",
  "outcome", "mocu", "mocu_stderr",
] as const;

export interface CampaignRow {
  replication: number;
  strategy: string;
  step: number;
  pair: [number, number] | null;
  outcome: boolean | null;
  mocu: number;
  mocuStderr: number;
}

export class SchemaError extends Error {
  constructor(public readonly path: string, public readonly line: number,
              problem: string) {
    super(`${path}: line ${line}: ${problem}`);
    this.name = "SchemaError";
  }
}

function parseIntField(raw: string, name: string, path: string, line: number): number {
  if (!/^\d+$/.test(raw)) {
    throw new SchemaError(path, line, `field '${name}' must be a non-negative integer, got '${raw}'`);
  }
  return Number(raw);
}

function parseFloatField(raw: string, name: string, path: string, line: number): number {
  const value = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(value)) {
    throw new SchemaError(path, line, `field '${name}' must be a finite number, got '${raw}'`);
  }
  return value;
}

/** Parse campaign CSV text; `path` appears in diagnostics only. */
export function parseCampaignCsv(text: string, path: string): CampaignRow[] {
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) throw new SchemaError(path, 1, "empty file");

  const header = lines[0].split(",");
  const expected = CSV_HEADER.join(",");
  if (header.join(",") !== expected) {
    throw new SchemaError(path, 1, `header must be '${expected}', got '${lines[0]}'`);
  }

  const rows: CampaignRow[] = [];
  for (let k = 1; k < lines.length; k++) {
    const lineNo = k + 1;
    const fields = lines[k].split(",");
    if (fields.length !== CSV_HEADER.length) {
      throw new SchemaError(path, lineNo,
        `expected ${CSV_HEADER.length} fields, got ${fields.length}`);
    }
    const [repRaw, strategy, stepRaw, piRaw, pjRaw, outRaw, mocuRaw, semRaw] = fields;
    if (strategy === "") throw new SchemaError(path, lineNo, "field 'strategy' is empty");
    const replication = parseIntField(repRaw, "replication", path, lineNo);
    const step = parseIntField(stepRaw, "step", path, lineNo);

    const blanks = [piRaw, pjRaw, outRaw].filter((f) => f === "").length;
    let pair: [number, number] | null = null;
    let outcome: boolean | null = null;
    if (blanks === 3) {
      if (step !== 0) {
        throw new SchemaError(path, lineNo, "pair/outcome fields are only empty on step-0 rows");
      }
    } else if (blanks === 0) {
      if (step === 0) {
        throw new SchemaError(path, lineNo, "step-0 rows must leave pair/outcome empty");
      }
      const pi = parseIntField(piRaw, "pair_i", path, lineNo);
      const pj = parseIntField(pjRaw, "pair_j", path, lineNo);
      if (pi >= pj) throw new SchemaError(path, lineNo, `pair must satisfy pair_i < pair_j, got (${pi}, ${pj})`);
      const out = parseIntField(outRaw, "outcome", path, lineNo);
      if (out !== 0 && out !== 1) throw new SchemaError(path, lineNo, `field 'outcome' must be 0 or 1, got '${outRaw}'`);
      pair = [pi, pj];
      outcome = out === 1;
    } else {
      throw new SchemaError(path, lineNo, "pair_i, pair_j, outcome must be all present or all empty");
    }

    rows.push({
      replication, strategy, step, pair, outcome,
      mocu: parseFloatField(mocuRaw, "mocu", path, lineNo),
      mocuStderr: parseFloatField(semRaw, "mocu_stderr", path, lineNo),
    });
  }
  if (rows.length === 0) throw new SchemaError(path, 1, "no data rows");
  return rows;
}

export interface Summary {
  replications: number;
  baseline: number;
  baselineStderr: number;
}

/** Pull the fields the figure needs out of summary.json. */
export function parseSummary(text: string, path: string): Summary {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new Error(`${path}: invalid JSON: ${(err as Error).message}`);
  }
  const obj = doc as Record<string, unknown>;
  const minAtt = obj["min_attainable"] as Record<string, unknown> | undefined;
  if (typeof obj["replications"] !== "number" || !minAtt
      || typeof minAtt["mean"] !== "number") {
    throw new Error(`${path}: summary must carry 'replications' and 'min_attainable.mean'`);
  }
  return {
    replications: obj["replications"],
    baseline: minAtt["mean"],
    baselineStderr: typeof minAtt["stderr"] === "number" ? minAtt["stderr"] : 0,
  };
}
