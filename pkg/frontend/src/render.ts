// DOM builders. Render functions are pure: state in, elements out.

import { Belief, OutcomeView, RankingView, TraceView } from "./api";
import { AppState, InlineError } from "./state";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  for (const child of children) {
    node.append(typeof child === "string" ? document.createTextNode(child) : child);
  }
  return node;
}

export function renderRankingTable(
  ranking: RankingView,
  display: "degrees" | "ordinal",
): HTMLTableElement {
  const table = el("table", { class: "ranking-table", "data-display": display });
  const head = el("tr", {}, [
    el("th", {}, [display === "degrees" ? "degree" : "rank"]),
    el("th", {}, ["belief"]),
  ]);
  table.append(el("thead", {}, [head]));
  const body = el("tbody");
  if (display === "degrees") {
    for (const b of ranking.beliefs) {
      body.append(
        el("tr", { class: "belief-row", "data-formula": b.formula }, [
          el("td", { class: "degree" }, [b.degree]),
          el("td", { class: "formula" }, [b.formula]),
        ]),
      );
    }
  } else {
    ranking.ordinal.forEach((rank, i) => {
      for (const formula of rank) {
        body.append(
          el("tr", { class: "belief-row", "data-formula": formula }, [
            el("td", { class: "rank" }, [String(i + 1)]),
            el("td", { class: "formula" }, [formula]),
          ]),
        );
      }
    });
  }
  table.append(body);
  return table;
}

export function renderConsistencyBadge(consistent: boolean): HTMLElement {
  return el(
    "span",
    {
      id: "consistency-badge",
      class: consistent ? "badge ok" : "badge bad",
      "data-consistent": String(consistent),
    },
    [consistent ? "consistent" : "inconsistent"],
  );
}

function beliefList(items: Belief[], cls: string): HTMLElement {
  const ul = el("ul", { class: cls });
  for (const b of items) {
    ul.append(
      el("li", { class: `${cls}-item`, "data-formula": b.formula }, [
        `${b.formula} (${b.degree})`,
      ]),
    );
  }
  return ul;
}

export function renderOutcome(outcome: OutcomeView): HTMLElement {
  const panel = el("div", { class: "outcome" });
  panel.append(renderConsistencyBadge(outcome.consistent));
  if (outcome.incoming) {
    panel.append(
      el("p", { class: "incoming" }, [
        `accepted ${outcome.incoming.formula} at ${outcome.incoming.degree}`,
      ]),
    );
  }
  panel.append(el("h4", {}, ["removed"]));
  panel.append(
    outcome.removed.length
      ? beliefList(outcome.removed, "removed-belief")
      : el("p", { class: "empty" }, ["nothing removed"]),
  );
  if (outcome.recovered.length) {
    panel.append(el("h4", {}, ["recovered"]));
    panel.append(beliefList(outcome.recovered, "recovered-belief"));
  }
  if (outcome.decay_applied) {
    panel.append(
      el("p", { class: "decay" }, [`decay applied: ${outcome.decay_applied}`]),
    );
  }
  return panel;
}

function degreeMap(r: RankingView): Map<string, string> {
  return new Map(r.beliefs.map((b) => [b.formula, b.degree]));
}

/** Side-by-side diff of the current ranking against a hypothetical one. */
export function renderDiff(
  current: RankingView,
  hypothetical: RankingView,
): HTMLTableElement {
  const now = degreeMap(current);
  const then = degreeMap(hypothetical);
  const formulas = [...new Set([...now.keys(), ...then.keys()])].sort();
  const table = el("table", { class: "diff-table" });
  table.append(
    el("thead", {}, [
      el("tr", {}, [
        el("th", {}, ["belief"]),
        el("th", {}, ["current"]),
        el("th", {}, ["what-if"]),
      ]),
    ]),
  );
  const body = el("tbody");
  for (const f of formulas) {
    const before = now.get(f);
    const after = then.get(f);
    const cls =
      before === after
        ? "same"
        : before === undefined
          ? "added"
          : after === undefined
            ? "dropped"
            : "changed";
    body.append(
      el("tr", { class: `diff-row ${cls}`, "data-formula": f }, [
        el("td", { class: "formula" }, [f]),
        el("td", {}, [before ?? "—"]),
        el("td", {}, [after ?? "—"]),
      ]),
    );
  }
  table.append(body);
  return table;
}

/** Six-column comparison of hypothetical outcomes per strategy. */
export function renderComparison(
  current: RankingView,
  comparison: Record<string, OutcomeView | InlineError>,
): HTMLTableElement {
  const strategies = Object.keys(comparison);
  const formulas = new Set<string>(current.beliefs.map((b) => b.formula));
  const maps = new Map<string, Map<string, string>>();
  for (const s of strategies) {
    const out = comparison[s];
    if ("after" in out) {
      maps.set(s, degreeMap(out.after));
      for (const b of out.after.beliefs) formulas.add(b.formula);
    }
  }
  const table = el("table", { class: "comparison-table" });
  const head = el("tr", {}, [el("th", {}, ["belief"])]);
  for (const s of strategies) head.append(el("th", { class: "strategy" }, [s]));
  table.append(el("thead", {}, [head]));
  const body = el("tbody");
  for (const f of [...formulas].sort()) {
    const row = el("tr", { "data-formula": f }, [el("td", { class: "formula" }, [f])]);
    for (const s of strategies) {
      const out = comparison[s];
      if (!("after" in out)) {
        row.append(el("td", { class: "error" }, ["?"]));
        continue;
      }
      const d = maps.get(s)!.get(f);
      row.append(
        el("td", { class: d === undefined ? "dropped" : "kept" }, [d ?? "✕"]),
      );
    }
    body.append(row);
  }
  table.append(body);
  const foot = el("tr", { class: "verdicts" }, [el("td", {}, ["result"])]);
  for (const s of strategies) {
    const out = comparison[s];
    foot.append(
      el("td", {}, [
        "after" in out
          ? renderConsistencyBadge(out.consistent)
          : el("span", { class: "badge bad" }, [out.category]),
      ]),
    );
  }
  body.append(foot);
  return table;
}

export function renderTrace(trace: TraceView): HTMLElement {
  const panel = el("div", { class: "trace" });
  panel.append(
    el("p", {}, [
      `strategy ${trace.strategy}`,
      trace.protected ? `, protecting ${trace.protected}` : "",
      `, result ${trace.final}`,
    ]),
  );
  for (const rank of trace.ranks) {
    const where = rank.threshold === null ? "pool" : `rank ${rank.threshold}`;
    const item = el("div", { class: "trace-rank" });
    item.append(
      el("p", {}, [
        `${where}${rank.phase ? ` (${rank.phase})` : ""}: ` +
          `${rank.candidates.length} candidate(s)`,
      ]),
    );
    for (const conflict of rank.conflicts) {
      item.append(
        el("p", { class: "conflict" }, [`conflict: {${conflict.join(", ")}}`]),
      );
    }
    if (rank.removed.length) {
      item.append(
        el("p", { class: "trace-removed" }, [`removed: ${rank.removed.join(", ")}`]),
      );
    }
    if (rank.regathered.length) {
      item.append(
        el("p", { class: "trace-regathered" }, [
          `regathered: ${rank.regathered.join(", ")}`,
        ]),
      );
    }
    for (const w of rank.warnings) {
      item.append(el("p", { class: "warning" }, [w]));
    }
    panel.append(item);
  }
  for (const w of trace.warnings) {
    panel.append(el("p", { class: "warning" }, [w]));
  }
  return panel;
}

export function renderError(error: InlineError): HTMLElement {
  return el("span", { class: "inline-error", "data-source": error.source }, [
    `${error.category}: ${error.message}`,
  ]);
}

export function renderHistory(state: AppState): HTMLElement {
  const n = state.session?.history_length ?? 0;
  const panel = el("div", { class: "history" });
  panel.append(
    el("span", { id: "history-length" }, [`${n} committed operation(s)`]),
  );
  return panel;
}
