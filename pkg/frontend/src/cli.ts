#!/usr/bin/env node
/** make-figures: read spnb result CSVs and write the figure SVGs.
 *
 * Usage: make-figures --results <dir> --out <dir> [--figure <kind>] [--window N]
 *
 * Without --figure every kind whose input files exist is rendered; with it
 * the named kind is rendered and missing input is an error.
 */

import { mkdirSync, readdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { FIGURE_KINDS, FigureKind, buildFigure, defaultSpec } from "./figures.js";

interface Args {
  results: string;
  out: string;
  figure?: FigureKind;
  window: number;
}

export function parseArgs(argv: string[]): Args {
  const args: Partial<Args> = { window: 75 };
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) {
      throw new Error(`missing value for ${flag}`);
    }
    switch (flag) {
      case "--results":
        args.results = value;
        break;
      case "--out":
        args.out = value;
        break;
      case "--figure":
        if (!(FIGURE_KINDS as readonly string[]).includes(value)) {
          throw new Error(`unknown figure kind '${value}'; known: ${FIGURE_KINDS.join(", ")}`);
        }
        args.figure = value as FigureKind;
        break;
      case "--window":
        args.window = Number(value);
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  if (!args.results || !args.out) {
    throw new Error("usage: make-figures --results <dir> --out <dir> [--figure <kind>] [--window N]");
  }
  return args as Args;
}

const needsRounds: FigureKind[] = ["regret", "npr", "optstar", "ratio"];

export function makeFigures(args: Args): string[] {
  const files = readdirSync(args.results);
  const roundsFiles = files
    .filter((f) => f.endsWith("_rounds.csv"))
    .map((f) => join(args.results, f));
  const baiFiles = files.filter((f) => f.endsWith("_bai.csv")).map((f) => join(args.results, f));
  const kinds = args.figure
    ? [args.figure]
    : FIGURE_KINDS.filter((kind) =>
        needsRounds.includes(kind) ? roundsFiles.length > 0 : baiFiles.length > 0,
      );
  if (kinds.length === 0) {
    throw new Error(`no result CSVs found under ${args.results}`);
  }
  mkdirSync(args.out, { recursive: true });
  const written: string[] = [];
  for (const kind of kinds) {
    const spec = defaultSpec(kind, join(args.out, `${kind}.svg`));
    spec.roundsFiles = roundsFiles;
    spec.baiFiles = baiFiles;
    spec.window = args.window;
    writeFileSync(spec.outPath, buildFigure(spec), "utf-8");
    written.push(spec.outPath);
  }
  return written;
}

export function main(argv: string[]): number {
  try {
    for (const path of makeFigures(parseArgs(argv))) {
      console.log(path);
    }
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
