/** In-memory stand-in for the session endpoints, driven through fetch. */

import { ViewModel } from "../src/types.js";

export class FakeServer {
  revision = 0;
  posts: Record<string, unknown>[] = [];
  viewRequests = 0;

  constructor(private readonly baseView: ViewModel) {}

  fetch = async (input: string, init?: RequestInit): Promise<Response> => {
    if (input.endsWith("/api/event") && init?.method === "POST") {
      const event = JSON.parse(String(init.body));
      if (event.type === "SetDSelect" && (event.value < 0 || event.value > 1)) {
        return this.json(400, { error: { field: "value", message: "out of range" } });
      }
      this.posts.push(event);
      this.revision += 1;
      return this.json(200, { revision: this.revision, warnings: [] });
    }
    if (input.endsWith("/api/view")) {
      this.viewRequests += 1;
      return this.json(200, { ...this.baseView, revision: this.revision });
    }
    return this.json(404, {});
  };

  private json(status: number, body: unknown): Response {
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  }
}
