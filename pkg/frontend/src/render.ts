// Canvas drawing and hit-testing. Node color and shape are a total function
// of the label so each of the five labels reads distinctly at a glance.

import type { ViewNode, ViewState } from "./state.js";

export type Shape = "circle" | "square" | "diamond" | "triangle" | "hexagon";

export interface NodeStyle {
  color: string;
  shape: Shape;
}

const STYLES: Record<string, NodeStyle> = {
  Category: { color: "#8e6fd8", shape: "hexagon" },
  Product: { color: "#4d9de0", shape: "circle" },
  Brand: { color: "#e8903a", shape: "square" },
  Model: { color: "#3bb273", shape: "diamond" },
  Price: { color: "#e15554", shape: "triangle" },
};

const FALLBACK: NodeStyle = { color: "#9aa0a6", shape: "circle" };

export function styleFor(label: string): NodeStyle {
  return STYLES[label] ?? FALLBACK;
}

export const NODE_RADIUS = 11;

export class Camera {
  scale = 1;
  panX = 0;
  panY = 0;

  toScreen(x: number, y: number, w: number, h: number): [number, number] {
    return [w / 2 + (x + this.panX) * this.scale, h / 2 + (y + this.panY) * this.scale];
  }

  toWorld(sx: number, sy: number, w: number, h: number): [number, number] {
    return [(sx - w / 2) / this.scale - this.panX, (sy - h / 2) / this.scale - this.panY];
  }

  zoom(factor: number): void {
    this.scale = Math.min(4, Math.max(0.2, this.scale * factor));
  }
}

function tracePolygon(ctx: CanvasRenderingContext2D, cx: number, cy: number, r: number, sides: number, rotate: number): void {
  ctx.beginPath();
  for (let i = 0; i < sides; i++) {
    const angle = rotate + (i * 2 * Math.PI) / sides;
    const px = cx + r * Math.cos(angle);
    const py = cy + r * Math.sin(angle);
    if (i === 0) ctx.moveTo(px, py);
    else ctx.lineTo(px, py);
  }
  ctx.closePath();
}

function traceShape(ctx: CanvasRenderingContext2D, shape: Shape, cx: number, cy: number, r: number): void {
  switch (shape) {
    case "circle":
      ctx.beginPath();
      ctx.arc(cx, cy, r, 0, 2 * Math.PI);
      break;
    case "square":
      ctx.beginPath();
      ctx.rect(cx - r * 0.9, cy - r * 0.9, r * 1.8, r * 1.8);
      break;
    case "diamond":
      tracePolygon(ctx, cx, cy, r * 1.1, 4, 0);
      break;
    case "triangle":
      tracePolygon(ctx, cx, cy, r * 1.15, 3, -Math.PI / 2);
      break;
    case "hexagon":
      tracePolygon(ctx, cx, cy, r * 1.05, 6, Math.PI / 6);
      break;
  }
}

export class CanvasRenderer {
  readonly camera = new Camera();
  private ctx: CanvasRenderingContext2D;

  constructor(private canvas: HTMLCanvasElement) {
    const ctx = canvas.getContext("2d");
    if (!ctx) throw new Error("2d canvas context unavailable");
    this.ctx = ctx;
  }

  resize(): void {
    const parent = this.canvas.parentElement;
    if (!parent) return;
    const ratio = window.devicePixelRatio || 1;
    this.canvas.width = parent.clientWidth * ratio;
    this.canvas.height = parent.clientHeight * ratio;
    this.canvas.style.width = `${parent.clientWidth}px`;
    this.canvas.style.height = `${parent.clientHeight}px`;
    this.ctx.setTransform(ratio, 0, 0, ratio, 0, 0);
  }

  private size(): [number, number] {
    const ratio = window.devicePixelRatio || 1;
    return [this.canvas.width / ratio, this.canvas.height / ratio];
  }

  draw(state: ViewState, notice: string | null): void {
    const ctx = this.ctx;
    const [w, h] = this.size();
    ctx.clearRect(0, 0, w, h);

    const positions = new Map<number, [number, number]>();
    for (const node of state.nodes) {
      positions.set(node.id, this.camera.toScreen(node.x, node.y, w, h));
    }

    ctx.strokeStyle = "rgba(130, 140, 155, 0.55)";
    ctx.lineWidth = 1.2;
    for (const link of state.links) {
      const a = positions.get(link.source);
      const b = positions.get(link.target);
      if (!a || !b) continue;
      ctx.beginPath();
      ctx.moveTo(a[0], a[1]);
      ctx.lineTo(b[0], b[1]);
      ctx.stroke();
    }

    const r = NODE_RADIUS * this.camera.scale;
    for (const node of state.nodes) {
      const [sx, sy] = positions.get(node.id)!;
      const style = styleFor(node.label);
      traceShape(ctx, style.shape, sx, sy, r);
      ctx.fillStyle = style.color;
      ctx.fill();
      if (node.id === state.selection) {
        ctx.strokeStyle = "#f5f7fa";
        ctx.lineWidth = 2.5;
        ctx.stroke();
      }
      if (node.pinned) {
        ctx.beginPath();
        ctx.arc(sx, sy, r * 0.3, 0, 2 * Math.PI);
        ctx.fillStyle = "rgba(20, 24, 30, 0.8)";
        ctx.fill();
      }
      ctx.fillStyle = "#c9d1dc";
      ctx.font = `${Math.max(10, 11 * this.camera.scale)}px system-ui, sans-serif`;
      ctx.textAlign = "center";
      const label = node.name.length > 28 ? `${node.name.slice(0, 27)}…` : node.name;
      ctx.fillText(label, sx, sy + r + 13);
    }

    if (notice && state.nodes.length === 0) {
      ctx.fillStyle = "#8b93a0";
      ctx.font = "15px system-ui, sans-serif";
      ctx.textAlign = "center";
      ctx.fillText(notice, w / 2, h / 2);
    }
  }

  pick(state: ViewState, sx: number, sy: number): ViewNode | null {
    const [w, h] = this.size();
    const reach = (NODE_RADIUS + 4) * this.camera.scale;
    // iterate back to front so the most recently drawn node wins
    for (let i = state.nodes.length - 1; i >= 0; i--) {
      const node = state.nodes[i];
      const [px, py] = this.camera.toScreen(node.x, node.y, w, h);
      if (Math.hypot(px - sx, py - sy) <= reach) return node;
    }
    return null;
  }

  screenToWorld(sx: number, sy: number): [number, number] {
    const [w, h] = this.size();
    return this.camera.toWorld(sx, sy, w, h);
  }
}
