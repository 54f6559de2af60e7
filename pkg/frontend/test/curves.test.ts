import { describe, expect, it } from "vitest";
import { parseCampaignCsv } from "../src/csv.js";
import { buildCurveSet } from "../src/curves.js";

const HEADER = "replication,strategy,step,pair_i,pair_j,outcome,mocu,mocu_stderr";
const SUMMARY = { replications: 2, baseline: 0.1, baselineStderr: 0.0 };

function rowsOf(...rows: string[]) {
  return parseCampaignCsv([HEADER, ...rows].join("\n") + "\n", "t.csv");
}

describe("buildCurveSet", () => {
  it("averages replications per step with the textbook stderr", () => {
    const rows = rowsOf(
      "0,mocu,0,,,,0.5,0.01", "0,mocu,1,0,1,1,0.3,0.01",
      "1,mocu,0,,,,0.7,0.01", "1,mocu,1,0,1,0,0.5,0.01",
    );
    const set = buildCurveSet(rows, SUMMARY);
    expect(set.steps).toEqual([0, 1]);
    expect(set.curves).toHaveLength(1);
    const curve = set.curves[0];
    // hand-computed: mean(0.5, 0.7) = 0.6, sd = 0.1414..., sem = 0.1
    expect(curve.mean[0]).toBeCloseTo(0.6, 12);
    expect(curve.stderr[0]).toBeCloseTo(Math.sqrt(0.02) / Math.sqrt(2), 12);
    expect(curve.mean[1]).toBeCloseTo(0.4, 12);
  });

  it("keeps strategies on a shared axis and sorts them", () => {
    const rows = rowsOf(
      "0,random,0,,,,0.5,0.01", "0,random,1,0,1,1,0.4,0.01",
      "0,entropy,0,,,,0.5,0.01", "0,entropy,1,0,1,1,0.45,0.01",
    );
    const set = buildCurveSet(rows, SUMMARY);
    expect(set.curves.map((c) => c.strategy)).toEqual(["entropy", "random"]);
  });

  it("rejects a strategy missing a step on the shared axis", () => {
    const rows = rowsOf(
      "0,mocu,0,,,,0.5,0.01", "0,mocu,1,0,1,1,0.4,0.01",
      "0,random,0,,,,0.5,0.01",
    );
    expect(() => buildCurveSet(rows, SUMMARY)).toThrowError(/missing step 1/);
  });

  it("single strategy with budget 0 yields a single-point curve", () => {
    const set = buildCurveSet(rowsOf("0,mocu,0,,,,0.5,0.01"), SUMMARY);
    expect(set.steps).toEqual([0]);
    expect(set.curves[0].mean).toEqual([0.5]);
    expect(set.curves[0].stderr).toEqual([0]);
  });
});
