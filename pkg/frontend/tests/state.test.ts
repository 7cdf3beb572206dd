import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { UiState } from "../src/state.js";
import { ViewModel } from "../src/types.js";

const fixture: ViewModel = JSON.parse(
  readFileSync(join(__dirname, "fixtures", "view.json"), "utf-8"),
);

describe("revision monotonicity", () => {
  it("never accepts a view older than one already rendered", () => {
    const state = new UiState();
    expect(state.accept({ ...fixture, revision: 3 })).toBe(true);
    expect(state.accept({ ...fixture, revision: 1 })).toBe(false); // stale
    expect(state.view?.revision).toBe(3);
    expect(state.accept({ ...fixture, revision: 3 })).toBe(true); // same is fine
    expect(state.accept({ ...fixture, revision: 7 })).toBe(true);
    expect(state.lastRevision).toBe(7);
  });
});

describe("view fetch coalescing", () => {
  it("keeps a single fetch in flight and refetches once afterwards", async () => {
    let calls = 0;
    const resolvers: ((r: Response) => void)[] = [];
    const gatedFetch = (input: string): Promise<Response> => {
      if (!input.endsWith("/api/view")) throw new Error("unexpected");
      calls++;
      return new Promise((resolve) => resolvers.push(resolve));
    };
    const api = new ApiClient("", gatedFetch);

    const p1 = api.getView();
    const p2 = api.getView(); // queued behind p1, no second request yet
    const p3 = api.getView();
    expect(calls).toBe(1);

    const body = (revision: number) =>
      new Response(JSON.stringify({ ...fixture, revision }), { status: 200 });
    resolvers[0](body(1));
    await vi.waitFor(() => expect(calls).toBe(2)); // exactly one follow-up
    resolvers[1](body(2));

    // every caller resolves with the newest fetched view
    expect((await p1).revision).toBe(2);
    expect((await p2).revision).toBe(2);
    expect((await p3).revision).toBe(2);
    expect(calls).toBe(2);

    // the client is idle again: a later call issues a fresh request
    const p4 = api.getView();
    expect(calls).toBe(3);
    resolvers[2](body(3));
    expect((await p4).revision).toBe(3);
  });
});
