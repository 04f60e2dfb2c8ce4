// View state and its pure mutations. Everything here is side-effect free so
// the interaction invariants (closure, unique ids, hide-is-local) can be
// tested without a DOM or a server.

import type { WireNode, WireView } from "./api.js";

export interface ViewNode {
  id: number;
  label: string;
  name: string;
  properties: Record<string, unknown>;
  x: number;
  y: number;
  vx: number;
  vy: number;
  ax: number;
  ay: number;
  pinned: boolean;
}

export interface ViewLink {
  id: number;
  type: string;
  source: number;
  target: number;
}

export type ModalState =
  | { nodeId: number; phase: "loading" }
  | { nodeId: number; phase: "ready"; markdown: string; modelId: string }
  | { nodeId: number; phase: "error"; message: string };

export interface ViewState {
  nodes: ViewNode[];
  links: ViewLink[];
  selection: number | null;
  menu: { nodeId: number; x: number; y: number } | null;
  modal: ModalState | null;
}

export function emptyView(): ViewState {
  return { nodes: [], links: [], selection: null, menu: null, modal: null };
}

export function nodeName(wire: WireNode): string {
  const name = wire.properties["name"];
  return typeof name === "string" ? name : String(name ?? wire.id);
}

export function findNode(state: ViewState, id: number): ViewNode | undefined {
  return state.nodes.find((n) => n.id === id);
}

export function visibleIds(state: ViewState): number[] {
  return state.nodes.map((n) => n.id);
}

// Deterministic pseudo-random angle per node id; keeps initial placement
// stable across repeated searches so golden tests and users see the same view.
function scatter(id: number, index: number): { x: number; y: number } {
  const angle = ((id * 2654435761) % 360) * (Math.PI / 180);
  const radius = 60 + 28 * Math.sqrt(index);
  return { x: Math.cos(angle) * radius, y: Math.sin(angle) * radius };
}

function toViewNode(wire: WireNode, x: number, y: number): ViewNode {
  return {
    id: wire.id,
    label: wire.label,
    name: nodeName(wire),
    properties: wire.properties,
    x,
    y,
    vx: 0,
    vy: 0,
    ax: 0,
    ay: 0,
    pinned: false,
  };
}

/** Replace the whole view with a fresh search result. */
export function replaceView(state: ViewState, wire: WireView): void {
  state.nodes = wire.nodes.map((n, i) => {
    const at = scatter(n.id, i);
    return toViewNode(n, at.x, at.y);
  });
  state.links = wire.links.map((l) => ({ ...l }));
  state.selection = null;
  state.menu = null;
}

/**
 * Append an expand delta: new nodes spawn beside the node they were expanded
 * from, existing nodes and positions are left alone. Duplicate node or link
 * ids in the delta are ignored. Returns the number of nodes actually added.
 */
export function appendDelta(state: ViewState, around: number, wire: WireView): number {
  const nodeIds = new Set(state.nodes.map((n) => n.id));
  const linkIds = new Set(state.links.map((l) => l.id));
  const origin = findNode(state, around);
  const ox = origin ? origin.x : 0;
  const oy = origin ? origin.y : 0;
  let added = 0;
  for (const incoming of wire.nodes) {
    if (nodeIds.has(incoming.id)) continue;
    nodeIds.add(incoming.id);
    const at = scatter(incoming.id, added + 1);
    state.nodes.push(toViewNode(incoming, ox + at.x * 0.6, oy + at.y * 0.6));
    added += 1;
  }
  for (const link of wire.links) {
    if (linkIds.has(link.id)) continue;
    if (!nodeIds.has(link.source) || !nodeIds.has(link.target)) continue;
    linkIds.add(link.id);
    state.links.push({ ...link });
  }
  return added;
}

/**
 * Remove a node and its incident edges from the view. Purely local: no
 * network involvement, the server graph is untouched.
 */
export function hideNode(state: ViewState, id: number): void {
  state.nodes = state.nodes.filter((n) => n.id !== id);
  state.links = state.links.filter((l) => l.source !== id && l.target !== id);
  if (state.selection === id) state.selection = null;
  if (state.menu && state.menu.nodeId === id) state.menu = null;
}

/** Every link endpoint rendered, every node id unique. */
export function isClosed(state: ViewState): boolean {
  const ids = new Set<number>();
  for (const node of state.nodes) {
    if (ids.has(node.id)) return false;
    ids.add(node.id);
  }
  const linkIds = new Set<number>();
  for (const link of state.links) {
    if (linkIds.has(link.id)) return false;
    linkIds.add(link.id);
    if (!ids.has(link.source) || !ids.has(link.target)) return false;
  }
  return true;
}
