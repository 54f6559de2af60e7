/**
 * Figure geometry shared by the SVG and PNG backends: pixel positions for
 * axes, ticks, curves, bands, baseline, and legend.
 */

import { CurveSet } from "./curves.js";

export const WIDTH = 720;
export const HEIGHT = 480;
export const MARGIN = { left: 70, right: 24, top: 20, bottom: 56 };

export const STRATEGY_COLORS: Record<string, string> = {
  mocu: "#1f77b4",
  entropy: "#ff7f0e",
  random: "#2ca02c",
};
export const FALLBACK_COLORS = ["#d62728", "#9467bd", "#8c564b"];
export const BASELINE_COLOR = "#555555";

export interface Point { x: number; y: number; }

export interface CurveGeometry {
  strategy: string;
  color: string;
  line: Point[];
  /** closed polygon: upper edge left-to-right then lower edge back */
  band: Point[];
}

export interface Tick { pos: number; label: string; }

export interface Layout {
  width: number;
  height: number;
  plot: { x0: number; y0: number; x1: number; y1: number };
  xTicks: Tick[];
  yTicks: Tick[];
  xLabel: string;
  yLabel: string;
  curves: CurveGeometry[];
  baselineY: number;
  baselineLabel: string;
  legend: { x: number; y: number; color: string; label: string }[];
}

function niceTicks(lo: number, hi: number, target = 6): number[] {
  const span = hi - lo || 1;
  const raw = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 2.5, 5, 10].map((m) => m * mag).find((s) => span / s <= target)
    ?? 10 * mag;
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + 1e-12; v += step) ticks.push(Number(v.toFixed(12)));
  return ticks;
}

export function colorFor(strategy: string, index: number): string {
  return STRATEGY_COLORS[strategy] ?? FALLBACK_COLORS[index % FALLBACK_COLORS.length];
}

export function buildLayout(set: CurveSet): Layout {
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = MARGIN.top;
  const y1 = HEIGHT - MARGIN.bottom;

  const maxStep = set.steps[set.steps.length - 1];
  let yMin = set.baseline;
  let yMax = set.baseline;
  for (const curve of set.curves) {
    for (let k = 0; k < curve.mean.length; k++) {
      yMin = Math.min(yMin, curve.mean[k] - curve.stderr[k]);
      yMax = Math.max(yMax, curve.mean[k] + curve.stderr[k]);
    }
  }
  const pad = (yMax - yMin || Math.abs(yMax) || 1) * 0.08;
  yMin = Math.max(0, yMin - pad);
  yMax += pad;

  const sx = (v: number) => x0 + (maxStep === 0 ? 0.5 * (x1 - x0) : (v / maxStep) * (x1 - x0));
  const sy = (v: number) => y1 - ((v - yMin) / (yMax - yMin)) * (y1 - y0);

  const curves: CurveGeometry[] = set.curves.map((curve, index) => {
    const line = set.steps.map((s, k) => ({ x: sx(s), y: sy(curve.mean[k]) }));
    const upper = set.steps.map((s, k) => ({ x: sx(s), y: sy(curve.mean[k] + curve.stderr[k]) }));
    const lower = set.steps.map((s, k) => ({ x: sx(s), y: sy(curve.mean[k] - curve.stderr[k]) }));
    return {
      strategy: curve.strategy,
      color: colorFor(curve.strategy, index),
      line,
      band: [...upper, ...lower.reverse()],
    };
  });

  const xTicks = (maxStep <= 12
    ? set.steps
    : niceTicks(0, maxStep).filter((v) => Number.isInteger(v)))
    .map((v) => ({ pos: sx(v), label: String(v) }));
  const yTicks = niceTicks(yMin, yMax).map((v) => ({ pos: sy(v), label: trimNumber(v) }));

  return {
    width: WIDTH,
    height: HEIGHT,
    plot: { x0, y0, x1, y1 },
    xTicks,
    yTicks,
    xLabel: "experimental updates",
    yLabel: "MOCU",
    curves,
    baselineY: sy(set.baseline),
    baselineLabel: "min attainable",
    legend: curves.map((c, k) => ({
      x: x1 - 170,
      y: y0 + 18 + 22 * k,
      color: c.color,
      label: `${c.strategy} (n=${set.replications})`,
    })),
  };
}

function trimNumber(v: number): string {
  const s = v.toFixed(4);
  return s.replace(/0+$/, "").replace(/\.$/, "");
}
