// Materialize vnodes into real DOM; SVG elements need their namespace.

import type { VNode } from "./view.js";

const SVG_TAGS = new Set(["svg", "line", "circle", "text", "path", "g"]);

export function materialize(node: VNode | string): Node {
  if (typeof node === "string") {
    return document.createTextNode(node);
  }
  const element = SVG_TAGS.has(node.tag)
    ? document.createElementNS("http://www.w3.org/2000/svg", node.tag)
    : document.createElement(node.tag);
  for (const [name, value] of Object.entries(node.attrs)) {
    element.setAttribute(name, value);
  }
  if (node.on) {
    for (const [event, handler] of Object.entries(node.on)) {
      element.addEventListener(event, handler);
    }
  }
  for (const child of node.children) {
    element.appendChild(materialize(child));
  }
  return element;
}

export function mount(target: Element, nodes: Array<VNode | string>): void {
  target.replaceChildren(...nodes.map(materialize));
}
