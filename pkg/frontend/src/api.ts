/** Typed client for the annotation service JSON API. */

export interface Slot {
  case: string;
  noun: string;
}

export interface ExampleRecord {
  id: string;
  verb: string;
  slots: Slot[];
  gold_sense?: string;
}

export interface Candidate {
  sense: string;
  score: number;
  survivor: boolean;
  sims: Record<string, number>;
}

export interface QueryPayload {
  example: ExampleRecord;
  candidates: Candidate[];
  predicted: string;
  certainty: number;
  iteration: number;
  pool_remaining: number;
  labeled: number;
}

export interface LabelResult {
  labeled: number;
  pool: number;
  iteration: number;
}

export interface CurvePointRecord {
  labels_used: number;
  pool_accuracy: number | null;
  certainty_mean: number | null;
  example_id: string;
  assigned_sense: string;
}

export interface StatePayload {
  session: string;
  labeled: number;
  pool: number;
  pending: string | null;
  config: Record<string, unknown>;
}

/** Error carrying the HTTP status so callers can branch on 409/410/422. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function request<T>(
  fetchFn: typeof fetch,
  url: string,
  init?: RequestInit,
): Promise<T> {
  const response = await fetchFn(url, init);
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = (await response.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class AnnotationApi {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  getState(): Promise<StatePayload> {
    return request<StatePayload>(this.fetchFn, `${this.base}/api/state`);
  }

  getNext(): Promise<QueryPayload> {
    return request<QueryPayload>(this.fetchFn, `${this.base}/api/next`);
  }

  postLabel(exampleId: string, sense: string): Promise<LabelResult> {
    return request<LabelResult>(this.fetchFn, `${this.base}/api/label`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ example_id: exampleId, sense }),
    });
  }

  async getCurve(): Promise<CurvePointRecord[]> {
    const body = await request<{ points: CurvePointRecord[] }>(
      this.fetchFn,
      `${this.base}/api/curve`,
    );
    return body.points;
  }

  getExample(exampleId: string): Promise<ExampleRecord> {
    return request<ExampleRecord>(
      this.fetchFn,
      `${this.base}/api/example/${encodeURIComponent(exampleId)}`,
    );
  }
}
