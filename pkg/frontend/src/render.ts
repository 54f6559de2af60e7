/** Ties the pipeline together: files in, image bytes out. */

import { readFileSync } from "node:fs";
import { parseCampaignCsv, parseSummary } from "./csv.js";
import { buildCurveSet } from "./curves.js";
import { buildLayout } from "./layout.js";
import { renderPng } from "./png.js";
import { renderSvg } from "./svg.js";

export type ImageKind = "svg" | "png";

export function kindForPath(outPath: string): ImageKind {
  if (outPath.endsWith(".svg")) return "svg";
  if (outPath.endsWith(".png")) return "png";
  throw new Error(`output path must end in .svg or .png, got '${outPath}'`);
}

export function renderFigure(csvText: string, csvPath: string,
                             summaryText: string, summaryPath: string,
                             kind: ImageKind): string | Buffer {
  const rows = parseCampaignCsv(csvText, csvPath);
  const summary = parseSummary(summaryText, summaryPath);
  const layout = buildLayout(buildCurveSet(rows, summary));
  return kind === "svg" ? renderSvg(layout) : renderPng(layout);
}

export function renderFromFiles(csvPath: string, summaryPath: string,
                                outPath: string): string | Buffer {
  const kind = kindForPath(outPath);
  const csvText = readFileSync(csvPath, "utf8");
  const summaryText = readFileSync(summaryPath, "utf8");
  return renderFigure(csvText, csvPath, summaryText, summaryPath, kind);
}
