/** Explorer wiring: one active session per tab, every state change
 * round-trips to the service (no optimistic updates, no local algebra). */

import { ApiError, SessionApi, type QuiverObj, type SessionState } from "./api.js";
import { project, type ViewState } from "./state.js";
import { renderAll, type RenderTargets } from "./render.js";

export interface ExplorerOptions {
  baseUrl: string;
  targets: RenderTargets;
  toast?: (message: string) => void;
}

export class Explorer {
  private api: SessionApi;
  private targets: RenderTargets;
  private toast: (message: string) => void;
  private serverState: SessionState | null = null;
  bannerMode: "strict" | "symmetric" = "symmetric";
  view: ViewState | null = null;

  constructor(options: ExplorerOptions) {
    this.api = new SessionApi(options.baseUrl);
    this.targets = options.targets;
    this.toast = options.toast ?? (() => undefined);
  }

  private show(state: SessionState): ViewState {
    this.serverState = state;
    this.view = project(state, this.bannerMode);
    renderAll(this.targets, this.view, (k) => void this.clickVertex(k));
    return this.view;
  }

  async loadQuiverText(text: string): Promise<ViewState | null> {
    let quiver: QuiverObj;
    try {
      quiver = JSON.parse(text) as QuiverObj;
    } catch (exc) {
      this.toast(`invalid JSON: ${(exc as Error).message}`);
      return null;
    }
    return this.loadQuiver(quiver);
  }

  async loadQuiver(quiver: QuiverObj): Promise<ViewState | null> {
    try {
      return this.show(await this.api.createSession(quiver));
    } catch (exc) {
      this.toast(this.describe(exc));
      return null;
    }
  }

  async clickVertex(k: number): Promise<ViewState | null> {
    if (!this.serverState) return null;
    if (this.view?.frozen.has(k)) {
      return this.view; // frozen vertices are inert (tooltip explains)
    }
    try {
      return this.show(await this.api.mutate(this.serverState.id, k));
    } catch (exc) {
      this.toast(this.describe(exc));
      return this.view;
    }
  }

  async undo(): Promise<ViewState | null> {
    if (!this.serverState) return null;
    if (this.serverState.history.length === 0) {
      return this.view; // empty history: inert
    }
    return this.show(await this.api.undo(this.serverState.id));
  }

  async replayWord(word: number[]): Promise<ViewState | null> {
    if (!this.serverState) return null;
    return this.show(await this.api.replayWord(this.serverState.id, word));
  }

  toggleBannerMode(): ViewState | null {
    this.bannerMode = this.bannerMode === "symmetric" ? "strict" : "symmetric";
    if (this.serverState) {
      return this.show(this.serverState);
    }
    return null;
  }

  private describe(exc: unknown): string {
    if (exc instanceof ApiError) {
      return `server error ${exc.status}: ${exc.detail}`;
    }
    return String(exc);
  }
}
