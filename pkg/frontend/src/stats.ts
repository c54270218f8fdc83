/** Presentation-layer aggregation. The mean/CI formulas duplicate the
 * simulation package's aggregate_ci on purpose and are pinned against it by
 * a fixture test. */

export function mean(values: number[]): number {
  if (values.length === 0) {
    throw new Error("mean of empty sample");
  }
  return values.reduce((a, b) => a + b, 0) / values.length;
}

export function sampleStd(values: number[]): number {
  const m = mean(values);
  const squares = values.reduce((acc, v) => acc + (v - m) * (v - m), 0);
  return Math.sqrt(squares / (values.length - 1));
}

/** 95% normal halfwidth 1.96 * s / sqrt(n); undefined below two samples. */
export function ci95Halfwidth(values: number[]): number | undefined {
  if (values.length < 2) {
    return undefined;
  }
  return (1.96 * sampleStd(values)) / Math.sqrt(values.length);
}

/** Progressive rolling mean: out[i] averages the last `window` values seen
 * so far (fewer at the start). */
export function rollingMean(values: number[], window: number): number[] {
  if (window < 1) {
    throw new Error(`window must be >= 1, got ${window}`);
  }
  const out: number[] = new Array(values.length);
  let runningSum = 0;
  for (let i = 0; i < values.length; i++) {
    runningSum += values[i];
    if (i >= window) {
      runningSum -= values[i - window];
    }
    out[i] = runningSum / Math.min(i + 1, window);
  }
  return out;
}
