// Strategy graph rendering and the visited-path reconstruction.

import type { RunEntry, SessionState, Strategy, StrategyEdge } from "./types.js";
import { h, VNode } from "./view.js";

function edgeMove(edge: StrategyEdge): string {
  return edge.path ? `${edge.path}.${edge.component}` : String(edge.component);
}

function machineChain(strategy: Strategy, from: number, steps: number): number[] {
  const chain: number[] = [];
  let current = from;
  for (let i = 0; i < steps; i++) {
    const edge = strategy.edges.find(
      e => e.from === current && e.role === "machine");
    if (!edge) {
      return chain;
    }
    current = edge.to;
    chain.push(current);
  }
  return chain;
}

/**
 * Reconstruct the proof lines a session has walked through.
 *
 * Machine edges are unique per node, so machine replies are followed
 * directly.  An environment move normally matches an edge label; when
 * premise matching permuted components the label may differ, so the
 * candidates are disambiguated by the length of the forced machine
 * chain behind them and, for the final segment, the line the session
 * actually reports.
 */
export function visitedLines(strategy: Strategy, run: RunEntry[],
                             currentLine: number): number[] {
  const conclusion = Math.max(...strategy.nodes.map(n => n.line));
  const visited = [conclusion];
  let current = conclusion;
  let i = 0;
  while (i < run.length) {
    if (run[i].role === "machine") {
      const [next] = machineChain(strategy, current, 1);
      if (next === undefined) {
        break;
      }
      current = next;
      visited.push(current);
      i++;
      continue;
    }
    let follow = 0;
    while (i + 1 + follow < run.length && run[i + 1 + follow].role === "machine") {
      follow++;
    }
    const last = i + 1 + follow >= run.length;
    const candidates = strategy.edges.filter(
      e => e.from === current && e.role === "environment");
    let chosen = candidates.find(e => edgeMove(e) === run[i].move);
    if (!chosen) {
      chosen = candidates.find(e => {
        const chain = machineChain(strategy, e.to, follow);
        if (chain.length !== follow) {
          return false;
        }
        const end = chain.length ? chain[chain.length - 1] : e.to;
        return !last || end === currentLine;
      });
    }
    if (!chosen) {
      break;
    }
    current = chosen.to;
    visited.push(current);
    i++;
  }
  return visited;
}

export function strategyView(state: SessionState): VNode {
  const strategy = state.strategy;
  const visited = new Set(visitedLines(strategy, state.run, state.line));
  const ordered = [...strategy.nodes].sort((a, b) => b.line - a.line);
  const position = new Map<number, { x: number; y: number }>();
  ordered.forEach((node, index) => {
    position.set(node.line, { x: 90 + (index % 2) * 240, y: 36 + index * 56 });
  });
  const width = 420;
  const height = 48 + ordered.length * 56;
  const parts: VNode[] = [];
  for (const edge of strategy.edges) {
    const a = position.get(edge.from)!;
    const b = position.get(edge.to)!;
    parts.push(h("line", {
      x1: String(a.x), y1: String(a.y), x2: String(b.x), y2: String(b.y),
      class: `edge edge-${edge.role}`,
      "stroke-dasharray": edge.role === "environment" ? "6 4" : "none",
      "data-edge": `${edge.from}-${edge.to}`,
    }));
    const mx = (a.x + b.x) / 2;
    const my = (a.y + b.y) / 2;
    parts.push(h("text", {
      x: String(mx + 6), y: String(my), class: `edge-label ${edge.role}`,
    }, [`${edge.role === "machine" ? "m" : "e"} ${edgeMove(edge)}`]));
  }
  for (const node of ordered) {
    const at = position.get(node.line)!;
    const classes = ["node", `rule-${node.rule}`];
    if (visited.has(node.line)) {
      classes.push("visited");
    }
    if (node.line === state.line) {
      classes.push("current");
    }
    parts.push(h("circle", {
      cx: String(at.x), cy: String(at.y), r: "17",
      class: classes.join(" "),
      "data-node": String(node.line),
    }));
    parts.push(h("text", {
      x: String(at.x), y: String(at.y + 4), class: "node-number",
      "text-anchor": "middle",
    }, [String(node.line)]));
    parts.push(h("text", {
      x: String(at.x + 26), y: String(at.y + 4), class: "node-formula",
    }, [node.formula]));
  }
  return h("svg", {
    class: "strategy",
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
  }, parts);
}
