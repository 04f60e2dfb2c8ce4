// Interaction core shared by the browser shell and the tests. Owns the view
// state and talks to the API; contains no DOM access so every operation can
// run headless.

import { ApiClient, ApiError, NodeDetail } from "./api.js";
import {
  ViewState,
  appendDelta,
  emptyView,
  findNode,
  hideNode,
  replaceView,
  visibleIds,
} from "./state.js";

export class ExplorerController {
  readonly state: ViewState = emptyView();
  notice: string | null = null;
  toasts: string[] = [];
  /** Fired after any state change; the shell re-renders and re-heats layout. */
  onChange: () => void = () => {};

  private introduceInFlight = new Set<number>();

  constructor(private readonly api: ApiClient) {}

  async search(keyword: string, nodeLimit = 25, relLimit = 25): Promise<boolean> {
    const trimmed = keyword.trim();
    if (!trimmed) {
      this.toast("enter a keyword to search");
      return false;
    }
    let view;
    try {
      view = await this.api.search(trimmed, nodeLimit, relLimit);
    } catch (err) {
      this.toast(this.describe(err));
      return false;
    }
    replaceView(this.state, view);
    this.notice = view.nodes.length ? null : "no matches";
    this.onChange();
    return true;
  }

  /** Fetch the info-panel payload; null means the id is gone on the server. */
  async select(id: number): Promise<NodeDetail | null> {
    this.state.selection = findNode(this.state, id) ? id : null;
    this.state.menu = null;
    this.onChange();
    try {
      return await this.api.node(id);
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) return null;
      this.toast(this.describe(err));
      return null;
    }
  }

  clearSelection(): void {
    this.state.selection = null;
    this.state.menu = null;
    this.onChange();
  }

  async expand(id: number): Promise<number> {
    let delta;
    try {
      delta = await this.api.expand(id, visibleIds(this.state));
    } catch (err) {
      this.toast(this.describe(err));
      return 0;
    }
    const added = appendDelta(this.state, id, delta);
    this.state.menu = null;
    this.onChange();
    return added;
  }

  /** Client-only: the node and its incident edges leave the view, nothing
   * is sent to the server. */
  hide(id: number): void {
    hideNode(this.state, id);
    this.onChange();
  }

  async introduce(id: number): Promise<void> {
    const node = findNode(this.state, id);
    if (!node || node.label !== "Product") {
      this.toast("AI introduction is available for Product nodes only");
      return;
    }
    if (this.introduceInFlight.has(id)) return;
    this.introduceInFlight.add(id);
    this.state.menu = null;
    this.state.modal = { nodeId: id, phase: "loading" };
    this.onChange();
    try {
      const report = await this.api.aiIntroduce(id);
      this.state.modal = {
        nodeId: id,
        phase: "ready",
        markdown: report.markdown,
        modelId: report.model_id,
      };
    } catch (err) {
      this.state.modal = { nodeId: id, phase: "error", message: this.describe(err) };
    } finally {
      this.introduceInFlight.delete(id);
      this.onChange();
    }
  }

  closeModal(): void {
    this.state.modal = null;
    this.onChange();
  }

  openMenu(id: number, x: number, y: number): void {
    if (!findNode(this.state, id)) return;
    this.state.menu = { nodeId: id, x, y };
    this.onChange();
  }

  closeMenu(): void {
    if (this.state.menu) {
      this.state.menu = null;
      this.onChange();
    }
  }

  toast(message: string): void {
    this.toasts.push(message);
    this.onChange();
  }

  drainToasts(): string[] {
    const out = this.toasts;
    this.toasts = [];
    return out;
  }

  private describe(err: unknown): string {
    if (err instanceof ApiError) return `${err.code}: ${err.message}`;
    return err instanceof Error ? err.message : String(err);
  }
}
