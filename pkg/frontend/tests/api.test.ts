import { describe, expect, it } from "vitest";

import { AnnotationApi, ApiError } from "../src/api.js";

function fakeFetch(
  handler: (url: string, init?: RequestInit) => { status: number; body: unknown },
): typeof fetch {
  return (async (url: RequestInfo | URL, init?: RequestInit) => {
    const { status, body } = handler(String(url), init);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  }) as typeof fetch;
}

describe("AnnotationApi", () => {
  it("parses the next-query payload", async () => {
    const payload = {
      example: { id: "e1", verb: "v", slots: [{ case: "c1", noun: "a" }] },
      candidates: [{ sense: "s01", score: 0.5, survivor: true, sims: { c1: 0.5 } }],
      predicted: "s01",
      certainty: 0.25,
      iteration: 3,
      pool_remaining: 7,
      labeled: 9,
    };
    const api = new AnnotationApi("", fakeFetch(() => ({ status: 200, body: payload })));
    const query = await api.getNext();
    expect(query.example.id).toBe("e1");
    expect(query.candidates[0]!.score).toBe(0.5);
  });

  it("posts labels as JSON", async () => {
    let captured: { url: string; body: unknown } | null = null;
    const api = new AnnotationApi(
      "",
      fakeFetch((url, init) => {
        captured = { url, body: JSON.parse(String(init?.body)) };
        return { status: 200, body: { labeled: 1, pool: 5, iteration: 1 } };
      }),
    );
    const result = await api.postLabel("e9", "s02");
    expect(result.labeled).toBe(1);
    expect(captured!.url).toBe("/api/label");
    expect(captured!.body).toEqual({ example_id: "e9", sense: "s02" });
  });

  it("raises ApiError with the status and detail", async () => {
    const api = new AnnotationApi(
      "",
      fakeFetch(() => ({ status: 409, body: { detail: "not pending" } })),
    );
    const error = await api.postLabel("e1", "s01").catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect((error as ApiError).status).toBe(409);
    expect((error as ApiError).detail).toBe("not pending");
  });

  it("unwraps the curve points array", async () => {
    const points = [
      {
        labels_used: 1,
        pool_accuracy: 0.5,
        certainty_mean: 0.4,
        example_id: "e1",
        assigned_sense: "s01",
      },
    ];
    const api = new AnnotationApi("", fakeFetch(() => ({ status: 200, body: { points } })));
    expect(await api.getCurve()).toEqual(points);
  });
});
