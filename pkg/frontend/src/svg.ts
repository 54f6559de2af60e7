/** SVG backend: emits the figure as a standalone vector document. */

import { BASELINE_COLOR, Layout, Point } from "./layout.js";

function fmt(v: number): string {
  return Number(v.toFixed(2)).toString();
}

function pathOf(points: Point[], close = false): string {
  const d = points.map((p, k) => `${k === 0 ? "M" : "L"}${fmt(p.x)} ${fmt(p.y)}`).join(" ");
  return close ? `${d} Z` : d;
}

export function renderSvg(layout: Layout): string {
  const { plot } = layout;
  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${layout.width}" height="${layout.height}" viewBox="0 0 ${layout.width} ${layout.height}" font-family="sans-serif" font-size="13">`);
  parts.push(`<rect width="${layout.width}" height="${layout.height}" fill="white"/>`);

  for (const tick of layout.yTicks) {
    parts.push(`<line x1="${fmt(plot.x0)}" y1="${fmt(tick.pos)}" x2="${fmt(plot.x1)}" y2="${fmt(tick.pos)}" stroke="#dddddd" stroke-width="1"/>`);
    parts.push(`<text x="${fmt(plot.x0 - 8)}" y="${fmt(tick.pos + 4)}" text-anchor="end">${tick.label}</text>`);
  }
  for (const tick of layout.xTicks) {
    parts.push(`<line x1="${fmt(tick.pos)}" y1="${fmt(plot.y1)}" x2="${fmt(tick.pos)}" y2="${fmt(plot.y1 + 5)}" stroke="black" stroke-width="1"/>`);
    parts.push(`<text x="${fmt(tick.pos)}" y="${fmt(plot.y1 + 20)}" text-anchor="middle">${tick.label}</text>`);
  }

  for (const curve of layout.curves) {
    parts.push(`<path class="stderr-band" d="${pathOf(curve.band, true)}" fill="${curve.color}" fill-opacity="0.18" stroke="none"/>`);
  }
  parts.push(`<line class="baseline" x1="${fmt(plot.x0)}" y1="${fmt(layout.baselineY)}" x2="${fmt(plot.x1)}" y2="${fmt(layout.baselineY)}" stroke="${BASELINE_COLOR}" stroke-width="1.5" stroke-dasharray="7 5"/>`);
  parts.push(`<text x="${fmt(plot.x0 + 6)}" y="${fmt(layout.baselineY - 6)}" fill="${BASELINE_COLOR}">${layout.baselineLabel}</text>`);
  for (const curve of layout.curves) {
    parts.push(`<path class="strategy-curve" data-strategy="${curve.strategy}" d="${pathOf(curve.line)}" fill="none" stroke="${curve.color}" stroke-width="2"/>`);
    for (const p of curve.line) {
      parts.push(`<circle cx="${fmt(p.x)}" cy="${fmt(p.y)}" r="2.5" fill="${curve.color}"/>`);
    }
  }

  parts.push(`<line x1="${fmt(plot.x0)}" y1="${fmt(plot.y1)}" x2="${fmt(plot.x1)}" y2="${fmt(plot.y1)}" stroke="black" stroke-width="1.5"/>`);
  parts.push(`<line x1="${fmt(plot.x0)}" y1="${fmt(plot.y0)}" x2="${fmt(plot.x0)}" y2="${fmt(plot.y1)}" stroke="black" stroke-width="1.5"/>`);
  parts.push(`<text x="${fmt((plot.x0 + plot.x1) / 2)}" y="${fmt(layout.height - 14)}" text-anchor="middle">${layout.xLabel}</text>`);
  parts.push(`<text x="18" y="${fmt((plot.y0 + plot.y1) / 2)}" text-anchor="middle" transform="rotate(-90 18 ${fmt((plot.y0 + plot.y1) / 2)})">${layout.yLabel}</text>`);

  for (const item of layout.legend) {
    parts.push(`<line x1="${fmt(item.x)}" y1="${fmt(item.y)}" x2="${fmt(item.x + 26)}" y2="${fmt(item.y)}" stroke="${item.color}" stroke-width="2.5"/>`);
    parts.push(`<text x="${fmt(item.x + 34)}" y="${fmt(item.y + 4)}">${item.label}</text>`);
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
