/**
 * DOM glue: builds the window (PCP panels left, dimension graph right,
 * widgets in the sidebar), wires inputs into the controllers, and paints
 * canvases when a new view arrives. All decisions about what to post and
 * which views to keep live in controls.ts / state.ts / brush.ts.
 */

import { ApiClient, ApiError } from "./api.js";
import { BrushMode, BrushTracker, brushEvent } from "./brush.js";
import { EventPump, SliderControl } from "./controls.js";
import { colorFor } from "./palette.js";
import {
  Ctx2D,
  panelsPixelHeight,
  renderDimensionGraph,
  renderPcpPanels,
} from "./render.js";
import { UiState } from "./state.js";
import { DatasetMeta, SliderSpec, ViewModel } from "./types.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

function setBanner(message: string | null): void {
  const banner = $("banner");
  banner.textContent = message ?? "";
  banner.style.display = message ? "block" : "none";
}

function scaledContext(canvas: HTMLCanvasElement, cssWidth: number, cssHeight: number): Ctx2D {
  const dpr = window.devicePixelRatio || 1;
  canvas.width = Math.max(1, Math.round(cssWidth * dpr));
  canvas.height = Math.max(1, Math.round(cssHeight * dpr));
  canvas.style.width = `${cssWidth}px`;
  canvas.style.height = `${cssHeight}px`;
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("2d canvas context unavailable");
  ctx.setTransform(dpr, 0, 0, dpr, 0, 0);
  return ctx;
}

function sliderInput(
  id: string,
  spec: SliderSpec,
  initial: number,
  onInput: (value: number) => void,
): HTMLInputElement {
  const el = $(id) as unknown as HTMLInputElement;
  el.min = String(spec.min);
  el.max = String(spec.max);
  el.step = String((spec.max - spec.min) / spec.steps);
  el.value = String(initial);
  const label = document.querySelector(`label[for="${id}"] span`);
  const show = (v: number) => {
    if (label) label.textContent = v.toFixed(3);
  };
  show(initial);
  el.addEventListener("input", () => {
    const v = Number(el.value);
    show(v);
    onInput(v);
  });
  return el;
}

class App {
  private readonly api = new ApiClient("");
  private readonly state = new UiState();
  private readonly pump = new EventPump(
    this.api,
    this.state,
    (view) => this.paint(view),
    (msg) => setBanner(msg),
  );
  private readonly brush = new BrushTracker();
  private brushMode: BrushMode = "include";
  private meta!: DatasetMeta;
  private selectedCat: number | null = null;
  private mode: "distance_cliques" | "label_rules" = "distance_cliques";

  async start(): Promise<void> {
    this.meta = await this.waitForMeta();
    this.buildControls();
    this.wireBrush();
    new ResizeObserver(() => this.repaint()).observe($("panels-pane"));
    await this.pump.refresh();
  }

  private async waitForMeta(): Promise<DatasetMeta> {
    for (;;) {
      try {
        return await this.api.getMeta();
      } catch (err) {
        if (err instanceof ApiError && err.status === 503) {
          setBanner("distance precompute is running…");
          await new Promise((resolve) => setTimeout(resolve, 500));
          continue;
        }
        throw err;
      }
    }
  }

  private buildControls(): void {
    document.title = `dimscope: ${this.meta.name}`;
    $("dataset-name").textContent =
      `${this.meta.name} (${this.meta.items} items, ${this.meta.numeric_dims.length} numeric dims)`;

    // mode radios
    for (const mode of ["distance_cliques", "label_rules"] as const) {
      const radio = $(`mode-${mode}`) as unknown as HTMLInputElement;
      radio.addEventListener("change", () => {
        if (!radio.checked) return;
        this.mode = mode;
        this.syncSliderVisibility();
        void this.pump.send({ type: "SetMode", mode });
      });
    }

    // categorical radio buttons in the sidebar
    const catBox = $("cat-dims");
    const addCatRadio = (label: string, dim: number | null) => {
      const wrap = document.createElement("label");
      const radio = document.createElement("input");
      radio.type = "radio";
      radio.name = "cat-dim";
      radio.checked = dim === this.selectedCat;
      radio.addEventListener("change", () => void this.selectCat(dim));
      wrap.appendChild(radio);
      wrap.appendChild(document.createTextNode(` ${label}`));
      catBox.appendChild(wrap);
    };
    addCatRadio("none (k-means colors)", null);
    for (const cat of this.meta.categorical_dims) {
      addCatRadio(cat.label, cat.id);
    }

    const sliders = this.meta.sliders;
    const defaults = this.meta.defaults;
    const mk = (id: string, key: keyof typeof sliders, makeEvent: (v: number) => Parameters<EventPump["send"]>[0]) => {
      const control = new SliderControl(this.pump, makeEvent);
      sliderInput(id, sliders[key], defaults[key], control.input);
    };
    mk("d-select", "d_select", (v) => ({ type: "SetDSelect", value: v }));
    mk("d-remove", "d_remove", (v) => ({ type: "SetDRemove", value: v }));
    mk("t-sup", "t_sup", (v) => ({
      type: "SetRuleThresholds", t_sup: v, t_con: this.currentNumber("t-con"), direction: "range_to_label",
    }));
    mk("t-con", "t_con", (v) => ({
      type: "SetRuleThresholds", t_sup: this.currentNumber("t-sup"), t_con: v, direction: "range_to_label",
    }));
    mk("opacity", "opacity", (v) => ({ type: "SetOpacity", value: Math.max(v, 0.01) }));

    const kInput = $("kmeans-k") as unknown as HTMLInputElement;
    kInput.value = "4";
    kInput.addEventListener("change", () => {
      const k = Math.max(1, Math.min(this.meta.items, Number(kInput.value) || 4));
      if (this.selectedCat === null) {
        void this.pump.send({ type: "SetColorSource", source: "kmeans", k, seed: 0 });
      }
    });

    $("brush-include").addEventListener("change", () => (this.brushMode = "include"));
    $("brush-exclude").addEventListener("change", () => (this.brushMode = "exclude"));
    $("clear-overrides").addEventListener("click", () =>
      void this.pump.send({ type: "ClearOverrides" }),
    );
    this.syncSliderVisibility();
    this.wireDivider();
  }

  private currentNumber(id: string): number {
    return Number(($(id) as unknown as HTMLInputElement).value);
  }

  private async selectCat(dim: number | null): Promise<void> {
    this.selectedCat = dim;
    if (dim === null) {
      // order matters: categorical coloring blocks clearing the dim
      const k = Math.max(1, Math.min(this.meta.items, Number(this.currentNumber("kmeans-k")) || 4));
      await this.pump.send({ type: "SetColorSource", source: "kmeans", k, seed: 0 });
      await this.pump.send({ type: "SetCatDim", dim: null });
    } else {
      await this.pump.send({ type: "SetCatDim", dim });
      await this.pump.send({ type: "SetColorSource", source: "categorical" });
    }
  }

  private syncSliderVisibility(): void {
    $("distance-sliders").style.display = this.mode === "distance_cliques" ? "block" : "none";
    $("rule-sliders").style.display = this.mode === "label_rules" ? "block" : "none";
  }

  private wireDivider(): void {
    // draggable divider between the panel and graph panes (convenience)
    const divider = $("divider");
    const grid = $("workspace");
    let dragging = false;
    divider.addEventListener("mousedown", () => (dragging = true));
    window.addEventListener("mouseup", () => (dragging = false));
    window.addEventListener("mousemove", (e) => {
      if (!dragging) return;
      const bounds = grid.getBoundingClientRect();
      const frac = Math.min(0.8, Math.max(0.3, (e.clientX - bounds.left) / bounds.width));
      grid.style.gridTemplateColumns = `${(frac * 100).toFixed(1)}% 6px 1fr`;
      this.repaint();
    });
  }

  private wireBrush(): void {
    const overlay = $("graph-overlay") as unknown as HTMLCanvasElement;
    const local = (e: MouseEvent): [number, number] => {
      const r = overlay.getBoundingClientRect();
      return [e.clientX - r.left, e.clientY - r.top];
    };
    overlay.addEventListener("mousedown", (e) => {
      const [x, y] = local(e);
      this.brush.begin(x, y);
    });
    overlay.addEventListener("mousemove", (e) => {
      if (!this.brush.active) return;
      const [x, y] = local(e);
      this.brush.move(x, y);
      this.drawBrushRect();
    });
    window.addEventListener("mouseup", (e) => {
      if (!this.brush.active) return;
      const rect = this.brush.finish(...local(e));
      this.drawBrushRect();
      const view = this.state.view;
      if (!rect || !view) return;
      const size = overlay.getBoundingClientRect();
      const event = brushEvent(
        view.graph.positions, rect, { width: size.width, height: size.height }, this.brushMode,
      );
      if (event) void this.pump.send(event);
    });
  }

  private drawBrushRect(): void {
    const overlay = $("graph-overlay") as unknown as HTMLCanvasElement;
    const size = overlay.getBoundingClientRect();
    const ctx = scaledContext(overlay, size.width, size.height);
    ctx.clearRect(0, 0, size.width, size.height);
    const rect = this.brush.current;
    if (!rect) return;
    ctx.strokeStyle = "#555555";
    ctx.globalAlpha = 0.9;
    ctx.beginPath();
    ctx.moveTo(rect.x, rect.y);
    ctx.lineTo(rect.x + rect.width, rect.y);
    ctx.lineTo(rect.x + rect.width, rect.y + rect.height);
    ctx.lineTo(rect.x, rect.y + rect.height);
    ctx.lineTo(rect.x, rect.y);
    ctx.stroke();
  }

  private paint(view: ViewModel): void {
    const panelsPane = $("panels-pane");
    const width = Math.max(320, panelsPane.clientWidth - 16);
    const height = panelsPixelHeight(view.panels.length);
    const panelsCtx = scaledContext(
      $("panels-canvas") as unknown as HTMLCanvasElement, width, height,
    );
    renderPcpPanels(panelsCtx, view, width, height);

    const graphPane = $("graph-pane");
    const gsize = Math.max(240, Math.min(graphPane.clientWidth, graphPane.clientHeight) - 40);
    const graphCtx = scaledContext(
      $("graph-canvas") as unknown as HTMLCanvasElement, gsize, gsize,
    );
    const overlay = $("graph-overlay") as unknown as HTMLCanvasElement;
    overlay.style.width = `${gsize}px`;
    overlay.style.height = `${gsize}px`;
    renderDimensionGraph(graphCtx, view, gsize, gsize);

    this.paintLegend(view);
    $("revision").textContent = `revision ${view.revision}`;
    setBanner(view.advisory);
  }

  private paintLegend(view: ViewModel): void {
    const box = $("legend");
    box.textContent = "";
    for (const entry of view.legend) {
      const row = document.createElement("div");
      row.className = "legend-row";
      const swatch = document.createElement("span");
      swatch.className = "swatch";
      swatch.style.background = colorFor(entry.index);
      row.appendChild(swatch);
      row.appendChild(document.createTextNode(` ${entry.label}`));
      box.appendChild(row);
    }
  }

  private repaint(): void {
    if (this.state.view) this.paint(this.state.view);
  }
}

new App().start().catch((err) => setBanner(`failed to start: ${err}`));
