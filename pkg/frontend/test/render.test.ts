import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { main } from "../src/cli.js";
import { renderFigure } from "../src/render.js";

const HEADER = "replication,strategy,step,pair_i,pair_j,outcome,mocu,mocu_stderr";

function campaignCsv(): string {
  const rows = [HEADER];
  for (let rep = 0; rep < 3; rep++) {
    for (const [s, drop] of [["mocu", 0.12], ["entropy", 0.06], ["random", 0.04]] as const) {
      rows.push(`${rep},${s},0,,,,${0.5 + 0.01 * rep},0.01`);
      for (let step = 1; step <= 4; step++) {
        const v = 0.5 + 0.01 * rep - drop * step;
        rows.push(`${rep},${s},${step},0,${step},1,${v.toFixed(6)},0.01`);
      }
    }
  }
  return rows.join("\n") + "\n";
}

const SUMMARY = JSON.stringify({
  replications: 3,
  min_attainable: { mean: 0.05, stderr: 0.002 },
});

describe("renderFigure", () => {
  it("draws one curve with a band per strategy plus the dashed baseline", () => {
    const svg = renderFigure(campaignCsv(), "c.csv", SUMMARY, "s.json", "svg") as string;
    expect(svg.match(/class="strategy-curve"/g)).toHaveLength(3);
    expect(svg.match(/class="stderr-band"/g)).toHaveLength(3);
    expect(svg).toContain('class="baseline"');
    expect(svg).toContain("stroke-dasharray");
    expect(svg).toContain("experimental updates");
    expect(svg).toContain("MOCU");
    expect(svg).toContain("min attainable");
  });

  it("renders a single point for one strategy at budget 0", () => {
    const csv = `${HEADER}\n0,mocu,0,,,,0.5,0.01\n`;
    const svg = renderFigure(csv, "c.csv", SUMMARY, "s.json", "svg") as string;
    expect(svg.match(/class="strategy-curve"/g)).toHaveLength(1);
    expect(svg).toContain("<circle");
  });

  it("produces a valid PNG with the right dimensions, deterministically", () => {
    const png = renderFigure(campaignCsv(), "c.csv", SUMMARY, "s.json", "png") as Buffer;
    expect([...png.subarray(0, 8)]).toEqual([137, 80, 78, 71, 13, 10, 26, 10]);
    expect(png.readUInt32BE(16)).toBe(720);
    expect(png.readUInt32BE(20)).toBe(480);
    const again = renderFigure(campaignCsv(), "c.csv", SUMMARY, "s.json", "png") as Buffer;
    expect(again.equals(png)).toBe(true);
  });

  it("propagates schema violations with the line number", () => {
    const bad = campaignCsv().replace("2,random,4,0,4,1", "2,random,4,0,4,maybe");
    expect(() => renderFigure(bad, "c.csv", SUMMARY, "s.json", "svg"))
      .toThrowError(/c\.csv: line \d+/);
  });
});

describe("cli", () => {
  it("writes the requested image and reports missing inputs", () => {
    const dir = mkdtempSync(join(tmpdir(), "render-"));
    const csvPath = join(dir, "campaign.csv");
    const summaryPath = join(dir, "summary.json");
    writeFileSync(csvPath, campaignCsv());
    writeFileSync(summaryPath, SUMMARY);
    const out = join(dir, "figure.svg");
    expect(main(["render", "--csv", csvPath, "--summary", summaryPath,
                 "--out", out])).toBe(0);
    expect(main(["render", "--csv", join(dir, "nope.csv"),
                 "--summary", summaryPath, "--out", out])).toBe(1);
    expect(main(["render", "--csv", csvPath, "--summary", summaryPath,
                 "--out", join(dir, "figure.bmp")])).toBe(1);
    expect(main(["nope"])).toBe(2);
    expect(main(["render", "--csv", csvPath])).toBe(2);
  });
});
