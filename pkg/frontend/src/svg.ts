/** Deterministic SVG rendering: fixed size, palette and formatting, no
 * timestamps or randomness, so identical inputs give identical bytes. */

import { Bar, Series } from "./aggregate.js";

export const WIDTH = 640;
export const HEIGHT = 400;
const MARGIN = { top: 28, right: 16, bottom: 42, left: 56 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"];

/** Confidence decoration is dropped when it would be invisible: halfwidth
 * under 0.5% of the plotted value range. */
const NEGLIGIBLE_CI_FRACTION = 0.005;

const fmt = (v: number): string => {
  if (!Number.isFinite(v)) {
    throw new Error(`cannot render non-finite coordinate ${v}`);
  }
  return v.toFixed(2);
};

interface Scale {
  (value: number): number;
}

function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo || 1;
  return (value) => outLo + ((value - lo) / span) * (outHi - outLo);
}

function ticks(lo: number, hi: number, count = 5): number[] {
  const out: number[] = [];
  for (let i = 0; i <= count; i++) {
    out.push(lo + ((hi - lo) * i) / count);
  }
  return out;
}

function axes(
  xScale: Scale,
  yScale: Scale,
  xLo: number,
  xHi: number,
  yLo: number,
  yHi: number,
  xLabel: string,
  yLabel: string,
): string {
  const parts: string[] = [];
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#333"/>`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#333"/>`);
  for (const t of ticks(xLo, xHi)) {
    const x = fmt(xScale(t));
    parts.push(`<line x1="${x}" y1="${y0}" x2="${x}" y2="${y0 + 4}" stroke="#333"/>`);
    parts.push(
      `<text x="${x}" y="${y0 + 18}" font-size="11" text-anchor="middle">${+t.toPrecision(4)}</text>`,
    );
  }
  for (const t of ticks(yLo, yHi)) {
    const y = fmt(yScale(t));
    parts.push(`<line x1="${x0 - 4}" y1="${y}" x2="${x0}" y2="${y}" stroke="#333"/>`);
    parts.push(
      `<text x="${x0 - 8}" y="${y}" font-size="11" text-anchor="end" dominant-baseline="middle">${+t.toPrecision(3)}</text>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 8}" font-size="12" text-anchor="middle">${xLabel}</text>`,
  );
  parts.push(
    `<text x="14" y="${(y0 + y1) / 2}" font-size="12" text-anchor="middle" transform="rotate(-90 14 ${(y0 + y1) / 2})">${yLabel}</text>`,
  );
  return parts.join("\n");
}

function legend(labels: string[]): string {
  return labels
    .map((label, i) => {
      const y = MARGIN.top + 14 * i;
      const x = WIDTH - MARGIN.right - 150;
      const color = PALETTE[i % PALETTE.length];
      return (
        `<rect x="${x}" y="${y - 8}" width="10" height="10" fill="${color}"/>` +
        `<text x="${x + 14}" y="${y}" font-size="11">${label}</text>`
      );
    })
    .join("\n");
}

function document(title: string, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">\n` +
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>\n` +
    `<text x="${WIDTH / 2}" y="16" font-size="13" text-anchor="middle">${title}</text>\n` +
    `${body}\n</svg>\n`
  );
}

export function renderLines(series: Series[], title: string, xLabel: string, yLabel: string): string {
  const points = series.flatMap((s) => s.points);
  if (points.length === 0) {
    throw new Error(`empty selection: nothing to plot for '${title}'`);
  }
  const xs = points.map((p) => p.x);
  const yLos = points.map((p) => p.y - (p.halfwidth ?? 0));
  const yHis = points.map((p) => p.y + (p.halfwidth ?? 0));
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  let yLo = Math.min(0, ...yLos);
  let yHi = Math.max(...yHis);
  if (yLo === yHi) {
    yHi = yLo + 1;
  }
  const xScale = linearScale(xLo, xHi, MARGIN.left, WIDTH - MARGIN.right);
  const yScale = linearScale(yLo, yHi, HEIGHT - MARGIN.bottom, MARGIN.top);
  const range = yHi - yLo;
  const parts: string[] = [axes(xScale, yScale, xLo, xHi, yLo, yHi, xLabel, yLabel)];
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const maxHw = Math.max(...s.points.map((p) => p.halfwidth ?? 0));
    if (maxHw >= NEGLIGIBLE_CI_FRACTION * range) {
      const upper = s.points.map((p) => `${fmt(xScale(p.x))},${fmt(yScale(p.y + (p.halfwidth ?? 0)))}`);
      const lower = [...s.points]
        .reverse()
        .map((p) => `${fmt(xScale(p.x))},${fmt(yScale(p.y - (p.halfwidth ?? 0)))}`);
      parts.push(
        `<polygon class="ci-band" points="${upper.concat(lower).join(" ")}" fill="${color}" opacity="0.15"/>`,
      );
    }
    const path = s.points.map((p) => `${fmt(xScale(p.x))},${fmt(yScale(p.y))}`).join(" ");
    parts.push(`<polyline points="${path}" fill="none" stroke="${color}" stroke-width="1.5"/>`);
  });
  parts.push(legend(series.map((s) => s.label)));
  return document(title, parts.join("\n"));
}

export function renderBars(
  bars: Bar[],
  title: string,
  yLabel: string,
  secondaryLabel?: string,
): string {
  if (bars.length === 0) {
    throw new Error(`empty selection: nothing to plot for '${title}'`);
  }
  const values = bars.flatMap((b) => {
    const out = [b.value - (b.halfwidth ?? 0), b.value + (b.halfwidth ?? 0)];
    if (b.point !== undefined) {
      out.push(b.point - (b.pointHalfwidth ?? 0), b.point + (b.pointHalfwidth ?? 0));
    }
    return out;
  });
  let yLo = Math.min(0, ...values);
  let yHi = Math.max(0, ...values);
  if (yLo === yHi) {
    yHi = yLo + 1;
  }
  const yScale = linearScale(yLo, yHi, HEIGHT - MARGIN.bottom, MARGIN.top);
  const innerWidth = WIDTH - MARGIN.left - MARGIN.right;
  const slot = innerWidth / bars.length;
  const range = yHi - yLo;
  const parts: string[] = [
    axes((x) => x, yScale, 0, bars.length, yLo, yHi, "", yLabel),
  ];
  bars.forEach((bar, i) => {
    const color = PALETTE[i % PALETTE.length];
    const cx = MARGIN.left + slot * (i + 0.5);
    const barWidth = slot * 0.5;
    const y0 = yScale(0);
    const y1 = yScale(bar.value);
    parts.push(
      `<rect x="${fmt(cx - barWidth / 2)}" y="${fmt(Math.min(y0, y1))}" width="${fmt(barWidth)}" ` +
        `height="${fmt(Math.abs(y0 - y1))}" fill="${color}" opacity="0.8"/>`,
    );
    if (bar.halfwidth !== undefined && bar.halfwidth >= NEGLIGIBLE_CI_FRACTION * range) {
      const top = fmt(yScale(bar.value + bar.halfwidth));
      const bottom = fmt(yScale(bar.value - bar.halfwidth));
      parts.push(
        `<line class="ci-bar" x1="${fmt(cx)}" y1="${top}" x2="${fmt(cx)}" y2="${bottom}" stroke="#333"/>`,
      );
    }
    if (bar.point !== undefined) {
      parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(yScale(bar.point))}" r="4" fill="#222"/>`);
      if (
        bar.pointHalfwidth !== undefined &&
        bar.pointHalfwidth >= NEGLIGIBLE_CI_FRACTION * range
      ) {
        const top = fmt(yScale(bar.point + bar.pointHalfwidth));
        const bottom = fmt(yScale(bar.point - bar.pointHalfwidth));
        parts.push(
          `<line class="ci-bar" x1="${fmt(cx + 6)}" y1="${top}" x2="${fmt(cx + 6)}" y2="${bottom}" stroke="#555"/>`,
        );
      }
    }
    parts.push(
      `<text x="${fmt(cx)}" y="${HEIGHT - MARGIN.bottom + 16}" font-size="10" text-anchor="middle">${bar.label}</text>`,
    );
  });
  if (secondaryLabel) {
    parts.push(
      `<text x="${WIDTH - MARGIN.right}" y="${MARGIN.top - 8}" font-size="11" text-anchor="end">dots: ${secondaryLabel}</text>`,
    );
  }
  return document(title, parts.join("\n"));
}
