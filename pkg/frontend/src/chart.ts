/** Dependency-free SVG line chart for the learning curve. */

import { CurvePointRecord } from "./api.js";

const WIDTH = 560;
const HEIGHT = 220;
const PAD = 32;

function x(labels: number, maxLabels: number): number {
  return PAD + (labels / Math.max(1, maxLabels)) * (WIDTH - 2 * PAD);
}

function y(accuracy: number): number {
  return HEIGHT - PAD - accuracy * (HEIGHT - 2 * PAD);
}

/** Accuracy-vs-labels polyline; points without accuracy are skipped. */
export function curveSvg(points: CurvePointRecord[]): string {
  const usable = points.filter((p) => p.pool_accuracy !== null);
  const maxLabels = usable.length ? usable[usable.length - 1]!.labels_used : 1;
  const path = usable
    .map((p) => `${x(p.labels_used, maxLabels).toFixed(1)},${y(p.pool_accuracy!).toFixed(1)}`)
    .join(" ");
  const line = usable.length
    ? `<polyline fill="none" stroke="#2563eb" stroke-width="2" points="${path}"/>`
    : "";
  const dots = usable
    .map(
      (p) =>
        `<circle cx="${x(p.labels_used, maxLabels).toFixed(1)}" ` +
        `cy="${y(p.pool_accuracy!).toFixed(1)}" r="2.5" fill="#2563eb"/>`,
    )
    .join("");
  return `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" data-points="${usable.length}">
    <line x1="${PAD}" y1="${HEIGHT - PAD}" x2="${WIDTH - PAD}" y2="${HEIGHT - PAD}" stroke="#888"/>
    <line x1="${PAD}" y1="${PAD}" x2="${PAD}" y2="${HEIGHT - PAD}" stroke="#888"/>
    <text x="${PAD}" y="${HEIGHT - 8}" font-size="10" fill="#555">0</text>
    <text x="${WIDTH - PAD}" y="${HEIGHT - 8}" font-size="10" text-anchor="end" fill="#555">${maxLabels}</text>
    <text x="6" y="${PAD}" font-size="10" fill="#555">1.0</text>
    <text x="6" y="${HEIGHT - PAD}" font-size="10" fill="#555">0.0</text>
    ${line}${dots}
  </svg>`;
}
