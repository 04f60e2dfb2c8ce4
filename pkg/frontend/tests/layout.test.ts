import { describe, expect, it } from "vitest";

import { DEFAULT_LAYOUT, kineticEnergy, layoutTick, runLayout } from "../src/layout.js";
import type { ViewNode, ViewState } from "../src/state.js";
import { lcg } from "./fakes.js";

function node(id: number, x: number, y: number): ViewNode {
  return {
    id,
    label: "Product",
    name: `n${id}`,
    properties: {},
    x,
    y,
    vx: 0,
    vy: 0,
    ax: 0,
    ay: 0,
    pinned: false,
  };
}

function view(nodes: ViewNode[], links: ViewState["links"]): ViewState {
  return { nodes, links, selection: null, menu: null, modal: null };
}

function randomView(seed: number, nodeCount: number, linkCount: number): ViewState {
  const rand = lcg(seed);
  const nodes: ViewNode[] = [];
  for (let i = 0; i < nodeCount; i++) {
    nodes.push(node(i + 1, (rand() - 0.5) * 600, (rand() - 0.5) * 600));
  }
  const links: ViewState["links"] = [];
  for (let i = 0; i < linkCount; i++) {
    const a = 1 + Math.floor(rand() * nodeCount);
    const b = 1 + Math.floor(rand() * nodeCount);
    if (a === b) continue;
    links.push({ id: i + 1, type: "BELONGS_TO", source: a, target: b });
  }
  return view(nodes, links);
}

describe("layout", () => {
  it("keeps every position and velocity finite for 1000 ticks on 100 nodes", () => {
    const state = randomView(99, 100, 160);
    const started = Date.now();
    for (let tick = 0; tick < 1000; tick++) {
      layoutTick(state, DEFAULT_LAYOUT);
    }
    const elapsed = Date.now() - started;
    for (const n of state.nodes) {
      expect(Number.isFinite(n.x)).toBe(true);
      expect(Number.isFinite(n.y)).toBe(true);
      expect(Number.isFinite(n.vx)).toBe(true);
      expect(Number.isFinite(n.vy)).toBe(true);
    }
    expect(elapsed).toBeLessThan(5000);
  });

  it("survives nodes stacked on the same position", () => {
    const state = view(
      [node(1, 10, 10), node(2, 10, 10), node(3, 10, 10)],
      [{ id: 1, type: "BELONGS_TO", source: 1, target: 2 }],
    );
    for (let tick = 0; tick < 200; tick++) layoutTick(state, DEFAULT_LAYOUT);
    for (const n of state.nodes) {
      expect(Number.isFinite(n.x)).toBe(true);
      expect(Number.isFinite(n.y)).toBe(true);
    }
    // the stack must break apart
    expect(Math.hypot(state.nodes[0].x - state.nodes[1].x, state.nodes[0].y - state.nodes[1].y))
      .toBeGreaterThan(1);
  });

  it("settles two linked nodes within 5% of the spring rest length", () => {
    const state = view(
      [node(1, -10, 4), node(2, 35, -9)],
      [{ id: 1, type: "HAS_BRAND", source: 1, target: 2 }],
    );
    runLayout(state, DEFAULT_LAYOUT);
    const [a, b] = state.nodes;
    const distance = Math.hypot(a.x - b.x, a.y - b.y);
    const rest = DEFAULT_LAYOUT.springLength;
    expect(Math.abs(distance - rest)).toBeLessThanOrEqual(0.05 * rest);
  });

  it("drifts a lone node toward the canvas center", () => {
    const state = view([node(1, 240, -180)], []);
    const before = Math.hypot(state.nodes[0].x, state.nodes[0].y);
    for (let tick = 0; tick < 300; tick++) layoutTick(state, DEFAULT_LAYOUT);
    const after = Math.hypot(state.nodes[0].x, state.nodes[0].y);
    expect(after).toBeLessThan(before);
  });

  it("never moves a pinned node", () => {
    const state = view(
      [node(1, 0, 0), node(2, 30, 0)],
      [{ id: 1, type: "HAS_MODEL", source: 1, target: 2 }],
    );
    state.nodes[0].pinned = true;
    for (let tick = 0; tick < 100; tick++) layoutTick(state, DEFAULT_LAYOUT);
    expect(state.nodes[0].x).toBe(0);
    expect(state.nodes[0].y).toBe(0);
    expect(state.nodes[1].x).not.toBe(30);
  });

  it("dissipates kinetic energy across 50 random graphs", () => {
    for (let seed = 1; seed <= 50; seed++) {
      const state = randomView(seed, 12, 16);
      let peak = 0;
      let latePeak = 0;
      let last = 0;
      for (let tick = 0; tick < 200; tick++) {
        layoutTick(state, DEFAULT_LAYOUT);
        last = kineticEnergy(state);
        peak = Math.max(peak, last);
        if (tick >= 100) latePeak = Math.max(latePeak, last);
      }
      expect(latePeak).toBeLessThanOrEqual(peak);
      expect(last).toBeLessThan(peak * 0.01 + 1e-12);
    }
  });
});
