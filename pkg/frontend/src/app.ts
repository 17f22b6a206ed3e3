// Controller: owns the page state, talks to the API, never decides game
// legality itself; every board change comes from a server response.

import { ApiClient, ApiRequestError } from "./api.js";
import { PRESETS } from "./presets.js";
import type { CheckResult, SessionState } from "./types.js";

export type Mode = "iso" | "strict";

export interface AppState {
  proofText: string;
  mode: Mode;
  check: CheckResult | null;
  session: SessionState | null;
  chosenInterpretation: Record<string, boolean>;
  notice: string | null;
  busy: boolean;
}

export class App {
  state: AppState = {
    proofText: PRESETS[0]?.text ?? "",
    mode: "iso",
    check: null,
    session: null,
    chosenInterpretation: {},
    notice: null,
    busy: false,
  };

  constructor(private api: ApiClient,
              private onRender: (app: App) => void = () => {}) {}

  private render() {
    this.onRender(this);
  }

  loadPreset(name: string): Promise<void> {
    const preset = PRESETS.find(p => p.name === name);
    if (!preset) {
      throw new Error(`no preset ${name}`);
    }
    return this.setProof(preset.text);
  }

  async setProof(text: string): Promise<void> {
    this.state.proofText = text;
    this.state.session = null;
    await this.runCheck();
  }

  async setMode(mode: Mode): Promise<void> {
    this.state.mode = mode;
    this.state.session = null;
    await this.runCheck();
  }

  async runCheck(): Promise<void> {
    this.state.busy = true;
    this.render();
    try {
      this.state.check = await this.api.check(this.state.proofText, this.state.mode);
      this.state.notice = null;
    } catch (error) {
      this.state.check = null;
      this.state.notice = describe(error);
    } finally {
      this.state.busy = false;
    }
    this.render();
  }

  async startSession(): Promise<void> {
    this.state.busy = true;
    this.render();
    try {
      const response = await this.api.createSession(
        this.state.proofText, this.state.mode);
      this.adopt(response.state);
      this.state.notice = null;
    } catch (error) {
      this.state.notice = describe(error);
    } finally {
      this.state.busy = false;
    }
    this.render();
  }

  private adopt(state: SessionState) {
    this.state.session = state;
    const chosen: Record<string, boolean> = {};
    for (const atom of state.atoms) {
      chosen[atom] = this.state.chosenInterpretation[atom] ?? true;
    }
    this.state.chosenInterpretation = chosen;
  }

  async clickMove(move: string): Promise<void> {
    const session = this.state.session;
    if (!session) {
      return;
    }
    try {
      const response = await this.api.move(session.id, move);
      this.adopt(response.state);
      this.state.notice = null;
    } catch (error) {
      if (error instanceof ApiRequestError && error.status === 409) {
        const legal = error.legalMoves();
        this.state.notice = legal.length
          ? `illegal move; legal: ${legal.join(", ")}`
          : "illegal move";
      } else {
        this.state.notice = describe(error);
      }
    }
    this.render();
  }

  machineHint(): void {
    this.state.notice = "machine's choice — not yours";
    this.render();
  }

  async stopSession(): Promise<void> {
    const session = this.state.session;
    if (!session) {
      return;
    }
    const response = await this.api.stop(session.id);
    this.adopt(response.state);
    this.render();
  }

  toggleAtom(name: string): void {
    this.state.chosenInterpretation[name] = !this.state.chosenInterpretation[name];
    this.render();
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiRequestError) {
    return `${error.body.code}: ${error.body.message}`;
  }
  return error instanceof Error ? error.message : String(error);
}
