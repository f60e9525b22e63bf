import { describe, expect, it } from "vitest";

import { CurvePointRecord } from "../src/api.js";
import { curveSvg } from "../src/chart.js";

function point(labels: number, accuracy: number | null): CurvePointRecord {
  return {
    labels_used: labels,
    pool_accuracy: accuracy,
    certainty_mean: 0.5,
    example_id: `e${labels}`,
    assigned_sense: "s01",
  };
}

describe("curveSvg", () => {
  it("renders an empty chart for an empty history", () => {
    const svg = curveSvg([]);
    expect(svg).toContain("<svg");
    expect(svg).toContain('data-points="0"');
    expect(svg).not.toContain("polyline");
  });

  it("plots one circle per usable point", () => {
    const svg = curveSvg([point(1, 0.5), point(2, 0.75), point(3, 1.0)]);
    expect(svg).toContain('data-points="3"');
    expect(svg.match(/<circle/g)).toHaveLength(3);
    expect(svg).toContain("polyline");
  });

  it("skips points without accuracy", () => {
    const svg = curveSvg([point(1, 0.5), point(2, null), point(3, 0.9)]);
    expect(svg).toContain('data-points="2"');
  });

  it("is idempotent", () => {
    const points = [point(1, 0.4), point(2, 0.6)];
    expect(curveSvg(points)).toBe(curveSvg(points));
  });
});
