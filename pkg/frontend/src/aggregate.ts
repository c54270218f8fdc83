/** Turns result rows into the per-figure series and bars. */

import { BaiRow, RoundRow } from "./csv.js";
import { ci95Halfwidth, mean, rollingMean } from "./stats.js";

export interface SeriesPoint {
  x: number;
  y: number;
  halfwidth?: number;
}

export interface Series {
  label: string;
  points: SeriesPoint[];
}

export interface Bar {
  label: string;
  value: number;
  halfwidth?: number;
  point?: number;
  pointHalfwidth?: number;
}

export function algorithms(rows: { algorithm: string }[]): string[] {
  return [...new Set(rows.map((r) => r.algorithm))];
}

function byAlgRun<T extends { algorithm: string; run: number }>(rows: T[]): Map<string, Map<number, T[]>> {
  const out = new Map<string, Map<number, T[]>>();
  for (const row of rows) {
    let runs = out.get(row.algorithm);
    if (!runs) {
      runs = new Map();
      out.set(row.algorithm, runs);
    }
    let list = runs.get(row.run);
    if (!list) {
      list = [];
      runs.set(row.run, list);
    }
    list.push(row);
  }
  return out;
}

/** Cross-run mean and CI of one per-round column, one series per algorithm. */
export function roundSeries(rows: RoundRow[], column: "pseudoRegret" | "npr"): Series[] {
  const series: Series[] = [];
  for (const alg of algorithms(rows)) {
    const perRound = new Map<number, number[]>();
    for (const row of rows) {
      if (row.algorithm !== alg) continue;
      let list = perRound.get(row.round);
      if (!list) {
        list = [];
        perRound.set(row.round, list);
      }
      list.push(row[column]);
    }
    const points = [...perRound.entries()]
      .sort((a, b) => a[0] - b[0])
      .map(([round, values]) => ({
        x: round,
        y: mean(values),
        halfwidth: ci95Halfwidth(values),
      }));
    series.push({ label: alg, points });
  }
  if (series.length === 0) {
    throw new Error("empty selection: no algorithms in rounds data");
  }
  return series;
}

/** Optimal-arm share of pulls (bar) and of rounds (point), per algorithm. */
export function optShareBars(rows: RoundRow[]): Bar[] {
  const grouped = byAlgRun(rows);
  const bars: Bar[] = [];
  for (const [alg, runs] of grouped) {
    const optStar: number[] = [];
    const optiStar: number[] = [];
    for (const list of runs.values()) {
      const pulls = list.reduce((acc, r) => acc + r.npr, 0);
      const optPulls = list.reduce((acc, r) => acc + r.pullsOfOpt, 0);
      const optRounds = list.filter((r) => r.pullsOfOpt > 0).length;
      optStar.push(optPulls / pulls);
      optiStar.push(optRounds / list.length);
    }
    bars.push({
      label: alg,
      value: mean(optStar),
      halfwidth: ci95Halfwidth(optStar),
      point: mean(optiStar),
      pointHalfwidth: ci95Halfwidth(optiStar),
    });
  }
  if (bars.length === 0) {
    throw new Error("empty selection: no algorithms in rounds data");
  }
  return bars;
}

export interface BaiBars {
  misidentification: Bar[];
  relativeUsage: Bar[];
}

/** Misidentification bars for every algorithm, plus rounds/pull usage
 * relative to the reference (one-pull-per-round) algorithm when present. */
export function baiBars(rows: BaiRow[], reference = "ucbe"): BaiBars {
  const grouped = byAlgRun(rows);
  if (grouped.size === 0) {
    throw new Error("empty selection: no algorithms in identification data");
  }
  const misidentification: Bar[] = [];
  for (const [alg, runs] of grouped) {
    const wrong = [...runs.values()].map((list) => mean(list.map((r) => 1 - r.correct)));
    misidentification.push({ label: alg, value: mean(wrong), halfwidth: ci95Halfwidth(wrong) });
  }
  const relativeUsage: Bar[] = [];
  const ref = grouped.get(reference);
  if (ref) {
    const refRounds = mean([...ref.values()].flat().map((r) => r.roundsUsed));
    const refPulls = mean([...ref.values()].flat().map((r) => r.pullsUsed));
    for (const [alg, runs] of grouped) {
      if (alg === reference) continue;
      const all = [...runs.values()].flat();
      const psiRounds = all.map((r) => (r.roundsUsed - refRounds) / refRounds);
      const psiPulls = all.map((r) => (r.pullsUsed - refPulls) / refPulls);
      relativeUsage.push({
        label: `rounds ${alg}`,
        value: mean(psiRounds),
        halfwidth: ci95Halfwidth(psiRounds),
      });
      relativeUsage.push({
        label: `pulls ${alg}`,
        value: mean(psiPulls),
        halfwidth: ci95Halfwidth(psiPulls),
      });
    }
  }
  return { misidentification, relativeUsage };
}

/** Pair every `seq-X` algorithm with its plain `X` counterpart. */
export function ratioPairs(names: string[]): Array<[string, string]> {
  return names
    .filter((name) => name.startsWith("seq-") && names.includes(name.slice(4)))
    .map((name) => [name, name.slice(4)]);
}

/** Per-round mean and CI of the run-paired regret ratio seq/base. Rounds
 * where any base run has zero regret are skipped. */
export function ratioSeries(rows: RoundRow[]): Series[] {
  const pairs = ratioPairs(algorithms(rows));
  if (pairs.length === 0) {
    throw new Error("empty selection: no seq-*/base algorithm pairs for ratios");
  }
  const grouped = byAlgRun(rows);
  const series: Series[] = [];
  for (const [seqName, baseName] of pairs) {
    const seqRuns = grouped.get(seqName)!;
    const baseRuns = grouped.get(baseName)!;
    const rounds = [...new Set([...seqRuns.values()].flat().map((r) => r.round))].sort(
      (a, b) => a - b,
    );
    const points: SeriesPoint[] = [];
    for (const round of rounds) {
      const ratios: number[] = [];
      let defined = true;
      for (const [run, seqList] of seqRuns) {
        const seqRow = seqList.find((r) => r.round === round);
        const baseRow = baseRuns.get(run)?.find((r) => r.round === round);
        if (!seqRow || !baseRow || baseRow.pseudoRegret === 0) {
          defined = false;
          break;
        }
        ratios.push(seqRow.pseudoRegret / baseRow.pseudoRegret);
      }
      if (defined && ratios.length > 0) {
        points.push({ x: round, y: mean(ratios), halfwidth: ci95Halfwidth(ratios) });
      }
    }
    series.push({ label: `${seqName} / ${baseName}`, points });
  }
  return series;
}

/** Correct-identification rate against the round budget, smoothed with a
 * progressive rolling mean. */
export function identificationSeries(rows: BaiRow[], window: number): Series[] {
  if (rows.length === 0) {
    throw new Error("empty selection: no identification data");
  }
  const series: Series[] = [];
  for (const alg of algorithms(rows)) {
    const sorted = rows
      .filter((r) => r.algorithm === alg)
      .sort((a, b) => a.roundsUsed - b.roundsUsed || a.run - b.run);
    const smoothed = rollingMean(
      sorted.map((r) => r.correct),
      window,
    );
    series.push({
      label: alg,
      points: sorted.map((r, i) => ({ x: r.roundsUsed, y: smoothed[i] })),
    });
  }
  return series;
}
