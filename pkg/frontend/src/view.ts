// Pure view builders: plain vnode objects, no DOM access, so tests can
// inspect exactly what would be rendered and what each click would do.

import type { CheckResult, SessionState, TreeNode } from "./types.js";

export interface VNode {
  tag: string;
  attrs: Record<string, string>;
  children: Array<VNode | string>;
  on?: Record<string, () => void>;
}

export function h(tag: string, attrs: Record<string, string> = {},
                  children: Array<VNode | string> = [],
                  on?: Record<string, () => void>): VNode {
  return { tag, attrs, children, on };
}

export function collect(node: VNode, predicate: (n: VNode) => boolean): VNode[] {
  const found: VNode[] = [];
  const walk = (n: VNode) => {
    if (predicate(n)) {
      found.push(n);
    }
    for (const child of n.children) {
      if (typeof child !== "string") {
        walk(child);
      }
    }
  };
  walk(node);
  return found;
}

const OPERATOR: Record<string, string> = {
  and: "&", or: "|", cand: "?&", cor: "?|",
};

// ---------------------------------------------------------------------------
// Game board: the formula tree with the environment's options clickable
// ---------------------------------------------------------------------------

export interface BoardCallbacks {
  onMove: (move: string) => void;
  onMachineHint: () => void;
}

function group(inner: VNode[], needed: boolean): VNode[] {
  if (!needed) {
    return inner;
  }
  return [h("span", { class: "paren" }, ["("]), ...inner,
          h("span", { class: "paren" }, [")"])];
}

function renderNode(node: TreeNode, callbacks: BoardCallbacks,
                    grouped: boolean): VNode[] {
  if (node.env_choosable) {
    const options = node.children.map((child, index) =>
      h("button", {
        class: "choice-option",
        "data-move": child.path,
        title: `play ${child.path}`,
      }, renderNode(child, callbacks, child.children.length > 0),
        { click: () => callbacks.onMove(child.path) }));
    const joined: VNode[] = [];
    options.forEach((option, index) => {
      if (index > 0) {
        joined.push(h("span", { class: "op your-turn" },
                      [OPERATOR[node.kind] ?? "?"]));
      }
      joined.push(option);
    });
    return group([h("span", { class: "env-choice", "data-path": node.path },
                    joined)], grouped);
  }
  if (node.machine_choosable) {
    return group([h("span", {
      class: "machine-choice",
      "data-path": node.path,
      title: "machine's choice — not yours",
    }, joinPlain(node, callbacks), { click: callbacks.onMachineHint })], grouped);
  }
  if (node.children.length === 0) {
    return [h("span", { class: `leaf ${node.kind}` }, [node.text])];
  }
  if (node.kind === "neg") {
    return group([h("span", { class: "op" }, ["~"]),
                  ...renderNode(node.children[0], callbacks,
                                node.children[0].children.length > 0)],
                 grouped);
  }
  if (node.kind === "impl") {
    return group([
      ...renderNode(node.children[0], callbacks,
                    node.children[0].children.length > 0),
      h("span", { class: "op" }, ["->"]),
      ...renderNode(node.children[1], callbacks,
                    node.children[1].children.length > 0),
    ], grouped);
  }
  const parts: VNode[] = [];
  node.children.forEach((child, index) => {
    if (index > 0) {
      parts.push(h("span", { class: "op" }, [OPERATOR[node.kind] ?? "?"]));
    }
    parts.push(h("span", {}, renderNode(child, callbacks,
                                        child.children.length > 0)));
  });
  return group(parts, grouped);
}

function joinPlain(node: TreeNode, callbacks: BoardCallbacks): Array<VNode | string> {
  const parts: Array<VNode | string> = [];
  node.children.forEach((child, index) => {
    if (index > 0) {
      parts.push(h("span", { class: "op" }, [OPERATOR[node.kind] ?? "?"]));
    }
    parts.push(h("span", {}, renderNode(child, callbacks,
                                        child.children.length > 0)));
  });
  return parts;
}

export function boardView(state: SessionState, callbacks: BoardCallbacks): VNode {
  return h("div", { class: "board", "data-line": String(state.line) },
           renderNode(state.tree, callbacks, false));
}

export function clickableMoves(board: VNode): string[] {
  return collect(board, n => n.attrs["data-move"] !== undefined)
    .map(n => n.attrs["data-move"]);
}

// ---------------------------------------------------------------------------
// Run log, banner, diagnostics, interpretation
// ---------------------------------------------------------------------------

export function runLogView(state: SessionState): VNode {
  const items = state.run.map(entry =>
    h("li", { class: `run-${entry.role}` },
      [`${entry.role === "machine" ? "machine" : "you"}: ${entry.move}`]));
  return h("ol", { class: "run-log" }, items);
}

export function bannerText(state: SessionState): string {
  if (state.outcome.forfeited) {
    return "Illegal move: machine wins by forfeit";
  }
  if (state.status === "awaiting_environment") {
    return "Your move: click a component you want to pick";
  }
  if (state.outcome.machine_wins_everywhere) {
    return "Machine wins under every interpretation";
  }
  if (state.outcome.winner_now) {
    return `${state.outcome.winner_now} wins under the chosen interpretation`;
  }
  return "Outcome depends on the interpretation";
}

export function bannerView(state: SessionState): VNode {
  const tone = state.status === "awaiting_environment" ? "info"
    : state.outcome.machine_wins_everywhere || state.outcome.forfeited
      ? "win" : "lose";
  return h("div", { class: `banner banner-${tone}` }, [bannerText(state)]);
}

export type LineMark = "ok" | "error" | "warning";

export function lineMarks(check: CheckResult): Map<number, LineMark> {
  const marks = new Map<number, LineMark>();
  for (let line = 1; line <= check.lines; line++) {
    marks.set(line, "ok");
  }
  for (const d of check.diagnostics) {
    if (d.severity === "warning" && marks.get(d.line) !== "error") {
      marks.set(d.line, "warning");
    }
    if (d.severity === "error") {
      marks.set(d.line, "error");
    }
  }
  return marks;
}

export function diagnosticsView(check: CheckResult): VNode {
  const marks = lineMarks(check);
  const rows: VNode[] = [];
  for (const [line, mark] of [...marks.entries()].sort((a, b) => a[0] - b[0])) {
    rows.push(h("li", { class: `mark mark-${mark}`, "data-proof-line": String(line) },
                [`line ${line}: ${mark}`]));
  }
  for (const d of check.diagnostics) {
    rows.push(h("li", { class: `diag diag-${d.severity}` },
                [`${d.severity} [${d.code}] line ${d.line}: ${d.message}`]));
  }
  const summary = check.valid
    ? `${check.lines} lines, valid (mode=${check.mode})`
    : `invalid (mode=${check.mode})`;
  return h("div", { class: "diagnostics" },
           [h("p", { class: check.valid ? "verdict-ok" : "verdict-bad" }, [summary]),
            h("ul", {}, rows)]);
}

export function truthOf(state: SessionState,
                        assignment: Record<string, boolean>): boolean | null {
  if (!state.truth_table) {
    return null;
  }
  const row = state.truth_table.find(r =>
    state.atoms.every(name => (r.assignment[name] ?? false) === (assignment[name] ?? false)));
  return row ? row.value : null;
}

export function interpretationView(state: SessionState,
                                   chosen: Record<string, boolean>,
                                   onToggle: (atom: string) => void): VNode {
  const toggles = state.atoms.map(name =>
    h("button", {
      class: `atom-toggle ${chosen[name] ? "atom-true" : "atom-false"}`,
      "data-atom": name,
    }, [`${name} = ${chosen[name] ? "1" : "0"}`], { click: () => onToggle(name) }));
  const value = truthOf(state, chosen);
  const verdict = value === null
    ? "truth table too large; ask the server"
    : `elementarization ${state.elementarization} is ${value ? "true" : "false"} here`;
  return h("div", { class: "interpretation" },
           [h("div", { class: "toggles" }, toggles),
            h("p", { class: value ? "interp-true" : "interp-false" }, [verdict])]);
}
