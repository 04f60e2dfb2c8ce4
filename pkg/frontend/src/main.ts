// Browser shell: wires the controller to the toolbar, canvas, info panel,
// context menu, report modal and toast stack.

import { ApiClient, NodeDetail } from "./api.js";
import { ExplorerController } from "./controller.js";
import { DEFAULT_LAYOUT, layoutTick } from "./layout.js";
import { escapeHtml, renderMarkdown } from "./markdown.js";
import { CanvasRenderer } from "./render.js";
import { findNode } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found as T;
}

const api = new ApiClient("");
const controller = new ExplorerController(api);

const canvas = el<HTMLCanvasElement>("canvas");
const renderer = new CanvasRenderer(canvas);
const keywordInput = el<HTMLInputElement>("keyword");
const nodeLimitInput = el<HTMLInputElement>("node-limit");
const relLimitInput = el<HTMLInputElement>("rel-limit");
const panel = el<HTMLElement>("panel");
const menu = el<HTMLElement>("menu");
const modalOverlay = el<HTMLElement>("modal-overlay");
const modalBody = el<HTMLElement>("modal-body");
const modalTitle = el<HTMLElement>("modal-title");
const toasts = el<HTMLElement>("toasts");
const statsLine = el<HTMLElement>("stats");

let heat = DEFAULT_LAYOUT.maxTicks;

function limit(input: HTMLInputElement): number {
  const value = Number.parseInt(input.value, 10);
  if (!Number.isFinite(value)) return 25;
  return Math.min(500, Math.max(1, value));
}

// --- info panel -------------------------------------------------------------

function renderPanel(detail: NodeDetail | null, staleId?: number): void {
  if (!detail) {
    if (staleId !== undefined) {
      panel.innerHTML = `<div class="panel-title">node ${staleId}</div>
        <div class="panel-note">no longer exists on the server</div>`;
      panel.hidden = false;
    } else {
      panel.hidden = true;
    }
    return;
  }
  const rows = Object.entries(detail.properties)
    .map(
      ([key, value]) =>
        `<tr><td>${escapeHtml(key)}</td><td>${escapeHtml(String(value))}</td></tr>`,
    )
    .join("");
  panel.innerHTML = `<div class="panel-title">
      <span class="swatch swatch-${escapeHtml(detail.label)}"></span>
      ${escapeHtml(detail.label)} #${detail.id}</div>
    <table>${rows}</table>
    <div class="panel-note">${detail.degree} relationship${detail.degree === 1 ? "" : "s"}</div>`;
  panel.hidden = false;
}

// --- context menu -----------------------------------------------------------

function syncMenu(): void {
  const state = controller.state;
  if (!state.menu) {
    menu.hidden = true;
    return;
  }
  const node = findNode(state, state.menu.nodeId);
  if (!node) {
    menu.hidden = true;
    return;
  }
  const isProduct = node.label === "Product";
  menu.innerHTML = `
    <button data-action="expand">Expand Node</button>
    <button data-action="hide">Hide Node</button>
    <button data-action="introduce" ${isProduct ? "" : "disabled"}>AI Product Introduction</button>`;
  menu.style.left = `${state.menu.x}px`;
  menu.style.top = `${state.menu.y}px`;
  menu.hidden = false;
}

menu.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  const action = target.dataset["action"];
  const open = controller.state.menu;
  if (!action || !open) return;
  const id = open.nodeId;
  if (action === "expand") void controller.expand(id);
  else if (action === "hide") controller.hide(id);
  else if (action === "introduce") void controller.introduce(id);
});

// --- report modal -----------------------------------------------------------

function syncModal(): void {
  const modal = controller.state.modal;
  if (!modal) {
    modalOverlay.hidden = true;
    return;
  }
  const node = findNode(controller.state, modal.nodeId);
  modalTitle.textContent = node ? node.name : `node ${modal.nodeId}`;
  if (modal.phase === "loading") {
    modalBody.innerHTML = `<div class="spinner"></div><p class="muted">asking the analyst…</p>`;
  } else if (modal.phase === "ready") {
    modalBody.innerHTML = `<article class="report">${renderMarkdown(modal.markdown)}</article>
      <p class="muted">generated by ${escapeHtml(modal.modelId)}</p>`;
  } else {
    modalBody.innerHTML = `<p class="error-note">${escapeHtml(modal.message)}</p>
      <button id="modal-retry">Retry</button>`;
    const retry = document.getElementById("modal-retry");
    retry?.addEventListener("click", () => void controller.introduce(modal.nodeId));
  }
  modalOverlay.hidden = false;
}

el<HTMLElement>("modal-close").addEventListener("click", () => controller.closeModal());
modalOverlay.addEventListener("click", (event) => {
  if (event.target === modalOverlay) controller.closeModal();
});

// --- toasts -----------------------------------------------------------------

function flushToasts(): void {
  for (const message of controller.drainToasts()) {
    const item = document.createElement("div");
    item.className = "toast";
    item.textContent = message;
    toasts.appendChild(item);
    setTimeout(() => item.remove(), 4500);
  }
}

// --- canvas interactions ------------------------------------------------------

type DragMode =
  | { kind: "node"; id: number; moved: boolean }
  | { kind: "pan"; lastX: number; lastY: number; moved: boolean }
  | null;

let drag: DragMode = null;

canvas.addEventListener("mousedown", (event) => {
  if (event.button !== 0) return;
  const hit = renderer.pick(controller.state, event.offsetX, event.offsetY);
  if (hit) {
    hit.pinned = true;
    drag = { kind: "node", id: hit.id, moved: false };
  } else {
    drag = { kind: "pan", lastX: event.offsetX, lastY: event.offsetY, moved: false };
  }
});

canvas.addEventListener("mousemove", (event) => {
  if (!drag) return;
  if (drag.kind === "node") {
    const node = findNode(controller.state, drag.id);
    if (!node) return;
    const [wx, wy] = renderer.screenToWorld(event.offsetX, event.offsetY);
    node.x = wx;
    node.y = wy;
    node.vx = 0;
    node.vy = 0;
    drag.moved = true;
    heat = DEFAULT_LAYOUT.maxTicks;
  } else {
    const dx = event.offsetX - drag.lastX;
    const dy = event.offsetY - drag.lastY;
    renderer.camera.panX += dx / renderer.camera.scale;
    renderer.camera.panY += dy / renderer.camera.scale;
    drag.lastX = event.offsetX;
    drag.lastY = event.offsetY;
    if (dx !== 0 || dy !== 0) drag.moved = true;
  }
});

window.addEventListener("mouseup", (event) => {
  if (!drag) return;
  const finished = drag;
  drag = null;
  if (finished.moved) return;
  // a press without movement is a click: select or clear
  const hit = renderer.pick(controller.state, event.offsetX, event.offsetY);
  if (hit && finished.kind === "node" && hit.id === finished.id) {
    hit.pinned = false; // plain click should not leave the node pinned
    void controller.select(hit.id).then((detail) => renderPanel(detail, hit.id));
  } else if (event.target === canvas) {
    controller.clearSelection();
    renderPanel(null);
  }
});

canvas.addEventListener("dblclick", (event) => {
  const hit = renderer.pick(controller.state, event.offsetX, event.offsetY);
  if (hit) {
    hit.pinned = false;
    heat = DEFAULT_LAYOUT.maxTicks;
  }
});

canvas.addEventListener("contextmenu", (event) => {
  event.preventDefault();
  const hit = renderer.pick(controller.state, event.offsetX, event.offsetY);
  if (hit) controller.openMenu(hit.id, event.clientX, event.clientY);
  else controller.closeMenu();
});

canvas.addEventListener("wheel", (event) => {
  event.preventDefault();
  renderer.camera.zoom(event.deltaY < 0 ? 1.12 : 0.89);
});

document.addEventListener("mousedown", (event) => {
  if (!menu.hidden && !menu.contains(event.target as Node)) controller.closeMenu();
});

// --- toolbar ------------------------------------------------------------------

async function runSearch(): Promise<void> {
  await controller.search(keywordInput.value, limit(nodeLimitInput), limit(relLimitInput));
  renderPanel(null);
}

el<HTMLButtonElement>("search-btn").addEventListener("click", () => void runSearch());
keywordInput.addEventListener("keydown", (event) => {
  if (event.key === "Enter") void runSearch();
});

// --- boot ---------------------------------------------------------------------

controller.onChange = () => {
  heat = DEFAULT_LAYOUT.maxTicks;
  syncMenu();
  syncModal();
  flushToasts();
};

function frame(): void {
  if (heat > 0) {
    layoutTick(controller.state, DEFAULT_LAYOUT);
    heat -= 1;
  }
  renderer.draw(controller.state, controller.notice ?? "search the catalog to begin");
  requestAnimationFrame(frame);
}

window.addEventListener("resize", () => renderer.resize());
renderer.resize();
requestAnimationFrame(frame);

void api
  .stats()
  .then((stats) => {
    statsLine.textContent = `${stats["nodes"]} nodes · ${stats["relationships"]} relationships`;
  })
  .catch(() => {
    statsLine.textContent = "stats unavailable";
  });
