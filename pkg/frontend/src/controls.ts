/**
 * DOM-free controller logic for the interactive widgets. The DOM glue in
 * main.ts forwards raw input values here; everything observable (what gets
 * posted, when, and how the view refreshes) lives in these classes.
 */

import { ApiClient } from "./api.js";
import { UiState } from "./state.js";
import { SessionEvent, ViewModel } from "./types.js";
import { throttleLatest } from "./throttle.js";

export const SLIDER_MIN_INTERVAL_MS = 100; // ≤ 10 posts/s while dragging

export type RenderFn = (view: ViewModel) => void;
export type ErrorFn = (message: string | null) => void;

/** Posts events, then refreshes and renders the newest non-stale view. */
export class EventPump {
  constructor(
    readonly api: ApiClient,
    readonly state: UiState,
    private readonly render: RenderFn,
    private readonly onError: ErrorFn = () => undefined,
  ) {}

  async refresh(): Promise<void> {
    try {
      const view = await this.api.getView();
      if (this.state.accept(view)) {
        this.render(view);
      }
      this.onError(null);
    } catch (err) {
      this.onError(err instanceof Error ? err.message : String(err));
    }
  }

  async send(event: SessionEvent): Promise<void> {
    try {
      await this.api.postEvent(event);
      this.onError(null);
    } catch (err) {
      // the next successful refresh resynchronizes the UI
      this.onError(err instanceof Error ? err.message : String(err));
    }
    await this.refresh();
  }
}

/** Slider drags are rate-limited; the latest value always lands. */
export class SliderControl {
  readonly input: (value: number) => void;
  posts = 0;

  constructor(
    pump: EventPump,
    makeEvent: (value: number) => SessionEvent,
    intervalMs: number = SLIDER_MIN_INTERVAL_MS,
  ) {
    this.input = throttleLatest((value: number) => {
      this.posts++;
      void pump.send(makeEvent(value));
    }, intervalMs);
  }
}
