/** Annotation session state machine and HTML rendering.
 *
 * The controller only mutates server state through postLabel; everything it
 * displays is taken verbatim from API payloads. Rendering is string-based so
 * the logic is testable without a DOM.
 */

import { AnnotationApi, ApiError, CurvePointRecord, QueryPayload } from "./api.js";
import { curveSvg } from "./chart.js";

export type Banner =
  | { tone: "error" | "warning" | "info"; text: string }
  | null;

export type Phase =
  | { kind: "loading" }
  | { kind: "query"; query: QueryPayload; selected: string | null; submitting: boolean }
  | { kind: "done" }
  | { kind: "disconnected" };

export interface SessionState {
  phase: Phase;
  banner: Banner;
  curve: CurvePointRecord[];
}

export class SessionController {
  state: SessionState = { phase: { kind: "loading" }, banner: null, curve: [] };

  constructor(
    private readonly api: AnnotationApi,
    private readonly onChange: (state: SessionState) => void = () => {},
  ) {}

  private update(partial: Partial<SessionState>): void {
    this.state = { ...this.state, ...partial };
    this.onChange(this.state);
  }

  /** Pull the pending (or next) query; 410 ends the session. */
  async fetchNext(keepBanner = false): Promise<void> {
    this.update({
      phase: { kind: "loading" },
      banner: keepBanner ? this.state.banner : null,
    });
    try {
      const query = await this.api.getNext();
      this.update({ phase: { kind: "query", query, selected: null, submitting: false } });
    } catch (error) {
      if (error instanceof ApiError && error.status === 410) {
        await this.refreshCurve();
        this.update({ phase: { kind: "done" }, banner: null });
      } else {
        this.update({
          phase: { kind: "disconnected" },
          banner: { tone: "error", text: describeFailure(error) },
        });
      }
    }
  }

  /** Select a candidate; enables submission. */
  choose(sense: string): void {
    const phase = this.state.phase;
    if (phase.kind !== "query" || phase.submitting) return;
    const known = phase.query.candidates.some((c) => c.sense === sense);
    if (!known) return;
    this.update({ phase: { ...phase, selected: sense } });
  }

  /** Candidate by keyboard digit 1..9 (1 = highest scored). */
  chooseByIndex(index: number): void {
    const phase = this.state.phase;
    if (phase.kind !== "query") return;
    const candidate = phase.query.candidates[index - 1];
    if (candidate) this.choose(candidate.sense);
  }

  canSubmit(): boolean {
    const phase = this.state.phase;
    return phase.kind === "query" && phase.selected !== null && !phase.submitting;
  }

  /** Commit the chosen sense; on success refresh the curve and auto-advance. */
  async submit(): Promise<void> {
    const phase = this.state.phase;
    if (phase.kind !== "query" || phase.selected === null || phase.submitting) return;
    this.update({ phase: { ...phase, submitting: true }, banner: null });
    try {
      await this.api.postLabel(phase.query.example.id, phase.selected);
      await this.refreshCurve();
      await this.fetchNext();
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        // stale query (e.g. another tab answered): surface it and re-fetch
        this.update({
          banner: { tone: "warning", text: `Query is stale: ${error.detail}` },
        });
        await this.fetchNext(true);
      } else if (error instanceof ApiError && error.status === 422) {
        this.update({
          phase: { ...phase, submitting: false },
          banner: { tone: "error", text: `Rejected label: ${error.detail}` },
        });
      } else {
        this.update({
          phase: { ...phase, submitting: false },
          banner: { tone: "error", text: describeFailure(error) },
        });
      }
    }
  }

  async refreshCurve(): Promise<void> {
    try {
      this.update({ curve: await this.api.getCurve() });
    } catch (error) {
      this.update({ banner: { tone: "warning", text: describeFailure(error) } });
    }
  }
}

export function describeFailure(error: unknown): string {
  if (error instanceof ApiError) return error.message;
  return `Network failure: ${error instanceof Error ? error.message : String(error)}`;
}

// -- rendering ---------------------------------------------------------------

const escapeHtml = (text: string): string =>
  text.replace(/[&<>"']/g, (ch) => `&#${ch.charCodeAt(0)};`);

export function renderSentence(query: QueryPayload): string {
  const slots = query.example.slots
    .map(
      (slot) =>
        `<span class="slot"><span class="noun">${escapeHtml(slot.noun)}</span>` +
        `<span class="case">${escapeHtml(slot.case)}</span></span>`,
    )
    .join(" ");
  return `${slots} <span class="verb">${escapeHtml(query.example.verb)}</span>`;
}

export function renderCandidates(query: QueryPayload, selected: string | null): string {
  return query.candidates
    .map((candidate, index) => {
      const width = Math.round(candidate.score * 100);
      const classes = ["candidate"];
      if (candidate.sense === selected) classes.push("selected");
      if (!candidate.survivor) classes.push("filtered");
      return (
        `<button class="${classes.join(" ")}" data-sense="${escapeHtml(candidate.sense)}">` +
        `<kbd>${index + 1}</kbd>` +
        `<span class="sense">${escapeHtml(candidate.sense)}</span>` +
        `<span class="bar"><span class="fill" style="width:${width}%"></span></span>` +
        `<span class="score">${candidate.score.toFixed(3)}</span>` +
        `</button>`
      );
    })
    .join("");
}

export function renderQuery(state: SessionState): string {
  if (state.phase.kind !== "query") return "";
  const { query, selected, submitting } = state.phase;
  const submitDisabled = selected === null || submitting ? " disabled" : "";
  return `
    <div class="meta">
      <span>labels: <strong>${query.iteration}</strong></span>
      <span>pool left: <strong>${query.pool_remaining}</strong></span>
      <span>stored: <strong>${query.labeled}</strong></span>
      <span>certainty: <strong>${query.certainty.toFixed(3)}</strong></span>
    </div>
    <p class="sentence" data-example="${escapeHtml(query.example.id)}">${renderSentence(query)}</p>
    <div class="candidates">${renderCandidates(query, selected)}</div>
    <button id="submit" class="submit"${submitDisabled}>label as ${
      selected ? escapeHtml(selected) : "…"
    }</button>
  `;
}

export function renderBanner(banner: Banner): string {
  if (!banner) return "";
  return `<div class="banner ${banner.tone}">${escapeHtml(banner.text)}</div>`;
}

export function renderApp(state: SessionState): string {
  const banner = renderBanner(state.banner);
  const chart = `<section class="curve"><h2>pool accuracy vs labels</h2>${curveSvg(
    state.curve,
  )}</section>`;
  switch (state.phase.kind) {
    case "loading":
      return `${banner}<p class="status">fetching next query…</p>${chart}`;
    case "disconnected":
      return `${banner}<p class="status">server unreachable.</p>
        <button id="retry" class="submit">retry</button>${chart}`;
    case "done":
      return `${banner}<p class="status">pool exhausted — annotation complete.</p>${chart}`;
    case "query":
      return `${banner}${renderQuery(state)}${chart}`;
  }
}
