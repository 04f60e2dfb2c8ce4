// Force-directed layout: velocity-Verlet integration of pairwise repulsion,
// spring forces along links, and a weak centering pull, with velocities
// damped by a cooling factor every tick. No external layout engine.

import type { ViewState } from "./state.js";

export interface LayoutParams {
  repulsion: number; // pairwise push, falls off with squared distance
  springLength: number; // link rest length in world units
  stiffness: number; // spring constant
  centering: number; // pull toward the origin
  cooling: number; // per-tick velocity damping, in (0, 1)
  maxTicks: number; // simulation budget per activation
}

export const DEFAULT_LAYOUT: LayoutParams = {
  repulsion: 3000,
  springLength: 120,
  stiffness: 0.08,
  centering: 0.0005,
  cooling: 0.85,
  maxTicks: 300,
};

const DT = 1;
const MIN_DISTANCE = 0.01;
const MAX_FORCE = 50;
const REST_SPEED = 0.02; // below this total speed the system counts as settled

function clampForce(value: number): number {
  if (value > MAX_FORCE) return MAX_FORCE;
  if (value < -MAX_FORCE) return -MAX_FORCE;
  return value;
}

function accumulateForces(state: ViewState, params: LayoutParams): Map<number, [number, number]> {
  const forces = new Map<number, [number, number]>();
  for (const node of state.nodes) forces.set(node.id, [0, 0]);

  const nodes = state.nodes;
  for (let i = 0; i < nodes.length; i++) {
    for (let j = i + 1; j < nodes.length; j++) {
      const a = nodes[i];
      const b = nodes[j];
      let dx = b.x - a.x;
      let dy = b.y - a.y;
      let dist = Math.hypot(dx, dy);
      if (dist < MIN_DISTANCE) {
        // coincident nodes: push apart along a fixed axis to stay deterministic
        dx = MIN_DISTANCE;
        dy = 0;
        dist = MIN_DISTANCE;
      }
      const push = params.repulsion / (dist * dist);
      const fx = (dx / dist) * push;
      const fy = (dy / dist) * push;
      const fa = forces.get(a.id)!;
      const fb = forces.get(b.id)!;
      fa[0] -= fx;
      fa[1] -= fy;
      fb[0] += fx;
      fb[1] += fy;
    }
  }

  const byId = new Map(nodes.map((n) => [n.id, n]));
  for (const link of state.links) {
    const a = byId.get(link.source);
    const b = byId.get(link.target);
    if (!a || !b || a === b) continue;
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    let dist = Math.hypot(dx, dy);
    if (dist < MIN_DISTANCE) {
      dx = MIN_DISTANCE;
      dy = 0;
      dist = MIN_DISTANCE;
    }
    const pull = params.stiffness * (dist - params.springLength);
    const fx = (dx / dist) * pull;
    const fy = (dy / dist) * pull;
    const fa = forces.get(a.id)!;
    const fb = forces.get(b.id)!;
    fa[0] += fx;
    fa[1] += fy;
    fb[0] -= fx;
    fb[1] -= fy;
  }

  for (const node of nodes) {
    const f = forces.get(node.id)!;
    f[0] = clampForce(f[0] - params.centering * node.x);
    f[1] = clampForce(f[1] - params.centering * node.y);
  }
  return forces;
}

/** One velocity-Verlet step. Pinned nodes hold their position. */
export function layoutTick(state: ViewState, params: LayoutParams): void {
  for (const node of state.nodes) {
    if (node.pinned) continue;
    node.x += node.vx * DT + 0.5 * node.ax * DT * DT;
    node.y += node.vy * DT + 0.5 * node.ay * DT * DT;
  }
  const forces = accumulateForces(state, params);
  for (const node of state.nodes) {
    if (node.pinned) {
      node.vx = 0;
      node.vy = 0;
      node.ax = 0;
      node.ay = 0;
      continue;
    }
    const [fx, fy] = forces.get(node.id)!;
    node.vx = (node.vx + 0.5 * (node.ax + fx) * DT) * params.cooling;
    node.vy = (node.vy + 0.5 * (node.ay + fy) * DT) * params.cooling;
    node.ax = fx;
    node.ay = fy;
  }
}

export function kineticEnergy(state: ViewState): number {
  let total = 0;
  for (const node of state.nodes) {
    total += 0.5 * (node.vx * node.vx + node.vy * node.vy);
  }
  return total;
}

/**
 * Run ticks until the system settles or the budget runs out; returns the
 * number of ticks executed.
 */
export function runLayout(state: ViewState, params: LayoutParams = DEFAULT_LAYOUT): number {
  let tick = 0;
  for (; tick < params.maxTicks; tick++) {
    layoutTick(state, params);
    let speed = 0;
    for (const node of state.nodes) speed += Math.hypot(node.vx, node.vy);
    if (speed < REST_SPEED) {
      tick += 1;
      break;
    }
  }
  return tick;
}
