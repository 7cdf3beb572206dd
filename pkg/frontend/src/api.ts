import { DatasetMeta, EventResponse, SessionEvent, ViewModel } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

/**
 * Thin client over the session endpoints. At most one view fetch is in
 * flight; refreshes requested meanwhile coalesce into a single follow-up.
 */
export class ApiClient {
  private current: Promise<ViewModel> | null = null;
  private refreshQueued = false;

  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    const response = await this.fetchImpl(this.base + path, init);
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const detail =
        (body as { error?: { field?: string; message?: string } }).error ?? {};
      throw new ApiError(
        response.status,
        detail.message ? `${detail.field}: ${detail.message}` : `HTTP ${response.status}`,
      );
    }
    return body;
  }

  getMeta(): Promise<DatasetMeta> {
    return this.request("/api/dataset/meta") as Promise<DatasetMeta>;
  }

  postEvent(event: SessionEvent): Promise<EventResponse> {
    return this.request("/api/event", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(event),
    }) as Promise<EventResponse>;
  }

  /**
   * Fetch the current view with at most one request in flight. Calls that
   * arrive mid-fetch queue a single follow-up, and every caller resolves
   * with the newest view fetched.
   */
  getView(): Promise<ViewModel> {
    if (this.current) {
      this.refreshQueued = true;
      return this.current;
    }
    this.current = (async () => {
      try {
        let view = (await this.request("/api/view")) as ViewModel;
        while (this.refreshQueued) {
          this.refreshQueued = false; // state moved on while we were fetching
          view = (await this.request("/api/view")) as ViewModel;
        }
        return view;
      } finally {
        this.current = null;
        this.refreshQueued = false;
      }
    })();
    return this.current;
  }
}
