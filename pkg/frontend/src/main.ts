// Wiring: build the panel skeleton, bind controls to the session
// controller, re-render on every state change.

import { ApiClient } from "./api";
import {
  el,
  renderComparison,
  renderDiff,
  renderError,
  renderHistory,
  renderOutcome,
  renderRankingTable,
  renderTrace,
} from "./render";
import { AppState, SessionController } from "./state";

export interface App {
  controller: SessionController;
  root: HTMLElement;
  /** Await the most recent UI action (click handlers are async). */
  flush: () => Promise<void>;
}

function skeleton(): HTMLElement {
  const root = el("div", { class: "app" });
  root.append(
    el("section", { id: "examples-panel" }, [
      el("h3", {}, ["examples"]),
      el("select", { id: "example-select" }),
      el("button", { id: "load-example" }, ["load"]),
      el("span", { id: "example-blurb" }),
    ]),
    el("section", { id: "ranking-panel" }, [
      el("h3", {}, ["current ranking"]),
      el("button", { id: "toggle-view" }, ["show ordinal"]),
      el("div", { id: "ranking-table-holder" }),
      el("div", { id: "history-holder" }, []),
      el("button", { id: "undo" }, ["undo"]),
    ]),
    el("section", { id: "strategy-panel" }, [
      el("h3", {}, ["strategy"]),
      el("select", { id: "strategy-select" }),
      el("label", {}, [
        el("input", { id: "opt-subsumption", type: "checkbox" }),
        "subsumption removal",
      ]),
      el("label", {}, [
        el("input", { id: "opt-recovery", type: "checkbox" }),
        "recovery",
      ]),
      el("label", {}, [
        "half-life ",
        el("input", { id: "opt-half-life", type: "text", placeholder: "off" }),
      ]),
      el("label", {}, [
        "seed ",
        el("input", { id: "opt-seed", type: "text", value: "0" }),
      ]),
    ]),
    el("section", { id: "revision-panel" }, [
      el("h3", {}, ["revise"]),
      el("input", { id: "formula-input", type: "text", placeholder: "formula" }),
      el("input", { id: "degree-input", type: "text", placeholder: "degree (optional)" }),
      el("button", { id: "do-whatif" }, ["what if?"]),
      el("button", { id: "do-revise" }, ["revise"]),
      el("button", { id: "do-compare" }, ["compare strategies"]),
      el("button", { id: "do-extract" }, ["extract"]),
      el("span", { id: "revision-error-holder" }),
    ]),
    el("section", { id: "outcome-panel" }, [el("h3", {}, ["last outcome"])]),
    el("section", { id: "whatif-panel" }, [el("h3", {}, ["what-if diff"])]),
    el("section", { id: "comparison-panel" }, []),
    el("section", { id: "trace-panel" }, [el("h3", {}, ["trace"])]),
  );
  return root;
}

function clearAfter(section: HTMLElement, keep: number): void {
  while (section.childNodes.length > keep) {
    section.removeChild(section.lastChild!);
  }
}

function redraw(root: HTMLElement, state: AppState): void {
  const select = root.querySelector<HTMLSelectElement>("#example-select")!;
  if (select.options.length !== state.examples.length) {
    select.replaceChildren(
      ...state.examples.map((e) => el("option", { value: e.name }, [e.name])),
    );
  }
  const blurb = root.querySelector<HTMLElement>("#example-blurb")!;
  const chosen = state.examples.find((e) => e.name === select.value);
  blurb.textContent = chosen ? chosen.description : "";

  const holder = root.querySelector<HTMLElement>("#ranking-table-holder")!;
  holder.replaceChildren(
    state.session
      ? renderRankingTable(state.session.ranking, state.display)
      : el("p", { class: "empty" }, ["no session"]),
  );
  root.querySelector<HTMLElement>("#toggle-view")!.textContent =
    state.display === "degrees" ? "show ordinal" : "show degrees";
  root
    .querySelector<HTMLElement>("#history-holder")!
    .replaceChildren(renderHistory(state));

  const outcomePanel = root.querySelector<HTMLElement>("#outcome-panel")!;
  clearAfter(outcomePanel, 1);
  if (state.lastOutcome) outcomePanel.append(renderOutcome(state.lastOutcome));

  const whatifPanel = root.querySelector<HTMLElement>("#whatif-panel")!;
  clearAfter(whatifPanel, 1);
  if (state.whatIfOutcome && state.session) {
    whatifPanel.append(renderOutcome(state.whatIfOutcome));
    whatifPanel.append(
      renderDiff(state.session.ranking, state.whatIfOutcome.after),
    );
  }

  const comparisonPanel = root.querySelector<HTMLElement>("#comparison-panel")!;
  comparisonPanel.replaceChildren();
  if (state.comparison && state.session) {
    comparisonPanel.append(el("h3", {}, ["strategy comparison"]));
    comparisonPanel.append(
      renderComparison(state.session.ranking, state.comparison),
    );
  }

  const tracePanel = root.querySelector<HTMLElement>("#trace-panel")!;
  clearAfter(tracePanel, 1);
  const traced = state.whatIfOutcome ?? state.lastOutcome;
  if (traced) tracePanel.append(renderTrace(traced.trace));

  const errorHolder = root.querySelector<HTMLElement>("#revision-error-holder")!;
  errorHolder.replaceChildren();
  const formulaInput = root.querySelector<HTMLInputElement>("#formula-input")!;
  formulaInput.classList.remove("input-error");
  if (state.error) {
    errorHolder.append(renderError(state.error));
    if (state.error.source === "revision") {
      formulaInput.classList.add("input-error");
    }
  }
}

export function initApp(mount: HTMLElement, apiBase = ""): App {
  const controller = new SessionController(new ApiClient(apiBase));
  const root = skeleton();
  mount.replaceChildren(root);
  controller.onChange((state) => redraw(root, state));

  const strategySelect = root.querySelector<HTMLSelectElement>("#strategy-select")!;
  strategySelect.replaceChildren(
    ...["standard", "maxi", "hybrid", "global", "linear", "quick"].map((s) =>
      el("option", { value: s, ...(s === "maxi" ? { selected: "" } : {}) }, [s]),
    ),
  );

  let pending: Promise<void> = Promise.resolve();
  const track = (fn: () => Promise<void>) => () => {
    pending = fn();
    return pending;
  };

  const value = (id: string) =>
    root.querySelector<HTMLInputElement>(id)!.value.trim();
  const checked = (id: string) =>
    root.querySelector<HTMLInputElement>(id)!.checked;

  const configPatch = () => {
    const halfLife = value("#opt-half-life");
    return {
      strategy: strategySelect.value,
      subsumption: checked("#opt-subsumption"),
      recovery: checked("#opt-recovery"),
      ...(halfLife && halfLife !== "off" ? { half_life: halfLife } : {}),
      seed: Number(value("#opt-seed") || "0"),
    };
  };

  const bind = (id: string, fn: () => Promise<void>) =>
    root.querySelector<HTMLElement>(id)!.addEventListener("click", track(fn));

  bind("#load-example", () =>
    controller.loadExample(
      root.querySelector<HTMLSelectElement>("#example-select")!.value,
    ),
  );
  bind("#toggle-view", async () =>
    controller.setDisplay(
      controller.state.display === "degrees" ? "ordinal" : "degrees",
    ),
  );
  bind("#do-revise", () =>
    controller.revise(value("#formula-input"), value("#degree-input"), configPatch()),
  );
  bind("#do-whatif", () =>
    controller.whatIf(value("#formula-input"), value("#degree-input"), configPatch()),
  );
  bind("#do-compare", () =>
    controller.compareStrategies(value("#formula-input"), value("#degree-input")),
  );
  bind("#do-extract", () => controller.extract());
  bind("#undo", () => controller.undo());

  pending = controller.loadExamples();

  return {
    controller,
    root,
    flush: async () => {
      await pending;
    },
  };
}

declare global {
  interface Window {
    entrenchApp?: App;
  }
}

if (typeof document !== "undefined") {
  const mount = document.getElementById("app");
  if (mount) {
    window.entrenchApp = initApp(mount, "");
  }
}
