/** The six figure kinds, from result CSVs to SVG strings. */

import { readFileSync } from "node:fs";

import { baiBars, identificationSeries, optShareBars, ratioSeries, roundSeries } from "./aggregate.js";
import { BaiRow, RoundRow, parseBai, parseRounds } from "./csv.js";
import { renderBars, renderLines } from "./svg.js";

export const FIGURE_KINDS = [
  "regret",
  "npr",
  "optstar",
  "bai-bars",
  "ratio",
  "identification",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureSpec {
  kind: FigureKind;
  roundsFiles: string[];
  baiFiles: string[];
  outPath: string;
  /** Rolling window of the identification curves. */
  window: number;
  displayNames?: Record<string, string>;
}

export function defaultSpec(kind: FigureKind, outPath: string): FigureSpec {
  return { kind, roundsFiles: [], baiFiles: [], outPath, window: 75 };
}

function loadRounds(spec: FigureSpec): RoundRow[] {
  const rows = spec.roundsFiles.flatMap((path) =>
    parseRounds(readFileSync(path, "utf-8"), path),
  );
  if (rows.length === 0) {
    throw new Error(`figure '${spec.kind}' has no rounds input`);
  }
  return rename(rows, spec.displayNames);
}

function loadBai(spec: FigureSpec): BaiRow[] {
  const rows = spec.baiFiles.flatMap((path) => parseBai(readFileSync(path, "utf-8"), path));
  if (rows.length === 0) {
    throw new Error(`figure '${spec.kind}' has no identification input`);
  }
  return rename(rows, spec.displayNames);
}

function rename<T extends { algorithm: string }>(rows: T[], names?: Record<string, string>): T[] {
  if (!names) {
    return rows;
  }
  return rows.map((row) => ({ ...row, algorithm: names[row.algorithm] ?? row.algorithm }));
}

export function buildFigure(spec: FigureSpec): string {
  if (spec.window < 1) {
    throw new Error(`window must be >= 1, got ${spec.window}`);
  }
  switch (spec.kind) {
    case "regret":
      return renderLines(
        roundSeries(loadRounds(spec), "pseudoRegret"),
        "Cumulative pseudo-regret",
        "round",
        "pseudo-regret",
      );
    case "npr":
      return renderLines(
        roundSeries(loadRounds(spec), "npr"),
        "Pulls per round",
        "round",
        "pulls",
      );
    case "optstar":
      return renderBars(
        optShareBars(loadRounds(spec)),
        "Optimal-arm share",
        "share of pulls",
        "share of rounds",
      );
    case "bai-bars": {
      const { misidentification, relativeUsage } = baiBars(loadBai(spec));
      const bars = misidentification.concat(relativeUsage);
      return renderBars(bars, "Identification error and relative usage", "value");
    }
    case "ratio":
      return renderLines(
        ratioSeries(loadRounds(spec)),
        "Regret ratio, sequential / naive",
        "round",
        "ratio",
      );
    case "identification":
      return renderLines(
        identificationSeries(loadBai(spec), spec.window),
        `Correct identification (rolling mean, n = ${spec.window})`,
        "rounds used",
        "share correct",
      );
  }
}
