// Browser bootstrap: build the page from the app state after every change.

import { ApiClient } from "./api.js";
import { App } from "./app.js";
import { mount } from "./dom.js";
import { PRESETS } from "./presets.js";
import { strategyView } from "./strategy.js";
import {
  VNode, bannerView, boardView, diagnosticsView, h, interpretationView,
  runLogView,
} from "./view.js";

function editorPanel(app: App): VNode {
  const { state } = app;
  const presetButtons = PRESETS.map(preset =>
    h("button", { class: "preset", "data-preset": preset.name },
      [preset.title], { click: () => void app.loadPreset(preset.name) }));
  const modeToggle = h("label", { class: "mode-toggle" }, [
    h("input", {
      type: "checkbox",
      ...(state.mode === "strict" ? { checked: "checked" } : {}),
    }, [], {
      change: () => void app.setMode(state.mode === "strict" ? "iso" : "strict"),
    }),
    " strict matching",
  ]);
  const editor = h("textarea", {
    class: "proof-editor", rows: "12", spellcheck: "false",
  }, [state.proofText]);
  editor.on = {
    change: () => {
      const element = document.querySelector<HTMLTextAreaElement>(".proof-editor");
      if (element) {
        void app.setProof(element.value);
      }
    },
  };
  const children: Array<VNode | string> = [
    h("h2", {}, ["Proof"]),
    h("div", { class: "presets" }, presetButtons),
    editor,
    modeToggle,
  ];
  if (state.check) {
    children.push(diagnosticsView(state.check));
    if (state.check.valid) {
      children.push(h("button", { class: "start" }, ["Start game"],
                      { click: () => void app.startSession() }));
    }
  }
  return h("section", { class: "panel editor-panel" }, children);
}

function gamePanel(app: App): VNode {
  const session = app.state.session;
  if (!session) {
    return h("section", { class: "panel game-panel" },
             [h("h2", {}, ["Game"]),
              h("p", { class: "hint" },
                ["Check a proof, then start a game: you play the environment, "
                 + "the machine answers from the proof."])]);
  }
  const children: Array<VNode | string> = [
    h("h2", {}, [`Game (line ${session.line}, ${session.status})`]),
    bannerView(session),
    boardView(session, {
      onMove: move => void app.clickMove(move),
      onMachineHint: () => app.machineHint(),
    }),
    h("div", { class: "controls" }, [
      h("button", { class: "stop" }, ["Stop"],
        { click: () => void app.stopSession() }),
    ]),
    h("h3", {}, ["Run"]),
    runLogView(session),
    h("h3", {}, ["Interpretation"]),
    interpretationView(session, app.state.chosenInterpretation,
                       atom => app.toggleAtom(atom)),
    h("h3", {}, ["Strategy"]),
    strategyView(session),
  ];
  return h("section", { class: "panel game-panel" }, children);
}

function page(app: App): VNode[] {
  const notice = app.state.notice
    ? [h("div", { class: "notice" }, [app.state.notice])]
    : [];
  return [
    h("header", {}, [h("h1", {}, ["CL1 playground"]),
                     h("p", { class: "tagline" },
                       ["verify a proof, then beat it if you can"])]),
    ...notice,
    h("main", {}, [editorPanel(app), gamePanel(app)]),
  ];
}

function start() {
  const root = document.getElementById("app");
  if (!root) {
    throw new Error("missing #app element");
  }
  const app = new App(new ApiClient(), current => mount(root, page(current)));
  void app.runCheck();
}

start();
