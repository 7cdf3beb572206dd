import { ViewModel } from "./types.js";

/**
 * Client view state with revision-discard: responses that arrive out of
 * order never roll the rendered view backwards.
 */
export class UiState {
  lastRevision = -1;
  view: ViewModel | null = null;

  /** Accept a fetched view unless something newer was already rendered. */
  accept(view: ViewModel): boolean {
    if (view.revision < this.lastRevision) {
      return false; // stale response from an in-flight fetch; drop it
    }
    this.lastRevision = view.revision;
    this.view = view;
    return true;
  }
}
