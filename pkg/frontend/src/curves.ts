/**
 * Aggregate campaign rows into per-strategy mean curves with stderr bands.
 * Only arithmetic on recorded values happens here; nothing is re-simulated.
 */

import { CampaignRow, Summary } from "./csv.js";

export interface Curve {
  strategy: string;
  /** indexed by step, starting at 0 */
  mean: number[];
  stderr: number[];
}

export interface CurveSet {
  steps: number[];
  curves: Curve[];
  baseline: number;
  baselineStderr: number;
  replications: number;
}

function meanAndStderr(values: number[]): [number, number] {
  const n = values.length;
  const mean = values.reduce((a, b) => a + b, 0) / n;
  if (n < 2) return [mean, 0];
  const varSum = values.reduce((a, b) => a + (b - mean) * (b - mean), 0);
  return [mean, Math.sqrt(varSum / (n - 1)) / Math.sqrt(n)];
}

/** Group rows into a common-step-axis curve per strategy. */
export function buildCurveSet(rows: CampaignRow[], summary: Summary): CurveSet {
  const byStrategy = new Map<string, Map<number, number[]>>();
  for (const row of rows) {
    let steps = byStrategy.get(row.strategy);
    if (!steps) byStrategy.set(row.strategy, (steps = new Map()));
    let values = steps.get(row.step);
    if (!values) steps.set(row.step, (values = []));
    values.push(row.mocu);
  }

  let maxStep = 0;
  for (const steps of byStrategy.values()) {
    for (const step of steps.keys()) maxStep = Math.max(maxStep, step);
  }
  const axis = Array.from({ length: maxStep + 1 }, (_, k) => k);

  const curves: Curve[] = [];
  for (const [strategy, steps] of byStrategy) {
    if (!steps.has(0)) {
      throw new Error(`strategy '${strategy}' has no step-0 record; curves must start at 0`);
    }
    const mean: number[] = [];
    const stderr: number[] = [];
    for (const step of axis) {
      const values = steps.get(step);
      if (!values) {
        throw new Error(`strategy '${strategy}' is missing step ${step}; curves must share the step axis`);
      }
      const [m, s] = meanAndStderr(values);
      mean.push(m);
      stderr.push(s);
    }
    curves.push({ strategy, mean, stderr });
  }
  curves.sort((a, b) => (a.strategy < b.strategy ? -1 : a.strategy > b.strategy ? 1 : 0));

  return {
    steps: axis,
    curves,
    baseline: summary.baseline,
    baselineStderr: summary.baselineStderr,
    replications: summary.replications,
  };
}
