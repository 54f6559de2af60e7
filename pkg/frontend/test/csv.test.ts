import { describe, expect, it } from "vitest";
import { parseCampaignCsv, parseSummary, SchemaError } from "../src/csv.js";

const HEADER = "replication,strategy,step,pair_i,pair_j,outcome,mocu,mocu_stderr";

function csv(...rows: string[]): string {
  return [HEADER, ...rows].join("\n") + "\n";
}

describe("parseCampaignCsv", () => {
  it("parses step-0 and step rows", () => {
    const rows = parseCampaignCsv(
      csv("0,mocu,0,,,,0.5,0.01", "0,mocu,1,0,1,1,0.4,0.01"), "t.csv");
    expect(rows).toHaveLength(2);
    expect(rows[0].pair).toBeNull();
    expect(rows[1].pair).toEqual([0, 1]);
    expect(rows[1].outcome).toBe(true);
    expect(rows[1].mocu).toBeCloseTo(0.4);
  });

  it("rejects a wrong header with line 1", () => {
    expect(() => parseCampaignCsv("a,b,c\n", "t.csv"))
      .toThrowError(/t\.csv: line 1: header/);
  });

  it("reports the offending line for a bad field count", () => {
    const text = csv("0,mocu,0,,,,0.5,0.01", "0;mocu;1;0;1;1;0.4;0.01");
    expect(() => parseCampaignCsv(text, "t.csv")).toThrowError(/line 3/);
  });

  it("rejects non-numeric cost values", () => {
    expect(() => parseCampaignCsv(csv("0,mocu,0,,,,oops,0.01"), "t.csv"))
      .toThrowError(/line 2: field 'mocu'/);
  });

  it("ties empty pair fields to step 0", () => {
    expect(() => parseCampaignCsv(csv("0,mocu,2,,,,0.5,0.01"), "t.csv"))
      .toThrowError(/only empty on step-0/);
    expect(() => parseCampaignCsv(csv("0,mocu,0,0,1,1,0.5,0.01"), "t.csv"))
      .toThrowError(/step-0 rows/);
  });

  it("rejects unordered pairs and bad outcomes", () => {
    expect(() => parseCampaignCsv(csv("0,mocu,1,1,0,1,0.5,0.01"), "t.csv"))
      .toThrowError(/pair_i < pair_j/);
    expect(() => parseCampaignCsv(csv("0,mocu,1,0,1,2,0.5,0.01"), "t.csv"))
      .toThrowError(/outcome/);
  });

  it("is a SchemaError with structured location", () => {
    try {
      parseCampaignCsv(csv("x,mocu,0,,,,0.5,0.01"), "t.csv");
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(SchemaError);
      expect((err as SchemaError).line).toBe(2);
    }
  });
});

describe("parseSummary", () => {
  it("extracts baseline and replication count", () => {
    const s = parseSummary(JSON.stringify({
      replications: 10, min_attainable: { mean: 0.2, stderr: 0.01 },
    }), "s.json");
    expect(s.replications).toBe(10);
    expect(s.baseline).toBeCloseTo(0.2);
  });

  it("rejects missing fields and bad JSON", () => {
    expect(() => parseSummary("{}", "s.json")).toThrowError(/min_attainable/);
    expect(() => parseSummary("{", "s.json")).toThrowError(/invalid JSON/);
  });
});
