/** Minimal CSV handling for the runner's result schemas. */

export type Row = Record<string, string>;

export function parseCsv(text: string): Row[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV");
  }
  const header = lines[0].split(",");
  return lines.slice(1).map((line) => {
    const fields = line.split(",");
    const row: Row = {};
    header.forEach((name, i) => {
      row[name] = fields[i] ?? "";
    });
    return row;
  });
}

export function requireColumns(rows: Row[], columns: string[], source: string): void {
  if (rows.length === 0) {
    throw new Error(`${source}: no data rows`);
  }
  for (const column of columns) {
    if (!(column in rows[0])) {
      throw new Error(`${source}: missing column '${column}'`);
    }
  }
}

export interface RoundRow {
  scenario: string;
  algorithm: string;
  run: number;
  round: number;
  pseudoRegret: number;
  npr: number;
  pullsOfOpt: number;
}

export interface BaiRow {
  scenario: string;
  algorithm: string;
  run: number;
  guess: number;
  correct: number;
  roundsUsed: number;
  pullsUsed: number;
}

export function parseRounds(text: string, source: string): RoundRow[] {
  const rows = parseCsv(text);
  requireColumns(
    rows,
    ["scenario", "algorithm", "run", "round", "pseudo_regret", "npr", "pulls_of_opt"],
    source,
  );
  return rows.map((row) => ({
    scenario: row.scenario,
    algorithm: row.algorithm,
    run: Number(row.run),
    round: Number(row.round),
    pseudoRegret: Number(row.pseudo_regret),
    npr: Number(row.npr),
    pullsOfOpt: Number(row.pulls_of_opt),
  }));
}

export function parseBai(text: string, source: string): BaiRow[] {
  const rows = parseCsv(text);
  requireColumns(
    rows,
    ["scenario", "algorithm", "run", "guess", "correct", "rounds_used", "pulls_used"],
    source,
  );
  return rows.map((row) => ({
    scenario: row.scenario,
    algorithm: row.algorithm,
    run: Number(row.run),
    guess: Number(row.guess),
    correct: Number(row.correct),
    roundsUsed: Number(row.rounds_used),
    pullsUsed: Number(row.pulls_used),
  }));
}
