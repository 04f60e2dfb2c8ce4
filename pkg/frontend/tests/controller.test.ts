import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { ExplorerController } from "../src/controller.js";
import { isClosed, visibleIds } from "../src/state.js";
import { FakeServer, lcg, randomGraph, starGraph } from "./fakes.js";

function explorer(server: FakeServer): ExplorerController {
  return new ExplorerController(new ApiClient("", server.fetch));
}

describe("hide", () => {
  it("is client-only: zero network requests, node and incident edges removed", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Computing Server", 25, 25);
    expect(ui.state.nodes.length).toBeGreaterThan(2);

    const before = server.calls.length;
    ui.hide(10);

    expect(server.calls.length).toBe(before);
    expect(ui.state.nodes.some((n) => n.id === 10)).toBe(false);
    expect(ui.state.links.some((l) => l.source === 10 || l.target === 10)).toBe(false);
    expect(isClosed(ui.state)).toBe(true);
  });

  it("clears selection and menu when they point at the hidden node", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Huawei", 25, 25);
    await ui.select(11);
    ui.openMenu(11, 5, 5);
    ui.hide(11);
    expect(ui.state.selection).toBeNull();
    expect(ui.state.menu).toBeNull();
  });

  it("allows a hidden node to come back through a later expand", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Huawei TaiShan Server", 25, 25);
    ui.hide(11);
    expect(ui.state.nodes.some((n) => n.id === 11)).toBe(false);
    await ui.expand(10);
    expect(ui.state.nodes.some((n) => n.id === 11)).toBe(true);
    expect(isClosed(ui.state)).toBe(true);
  });
});

describe("expand", () => {
  it("appends the star of an isolated product", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Huawei TaiShan Server", 1, 25);
    expect(visibleIds(ui.state)).toEqual([10]);

    const added = await ui.expand(10);
    expect(added).toBe(4); // category, brand, model, price
    expect(new Set(visibleIds(ui.state))).toEqual(new Set([1, 10, 11, 12, 13]));
    expect(ui.state.links.length).toBe(4);
    expect(isClosed(ui.state)).toBe(true);
  });

  it("is idempotent: a second expand introduces no duplicate ids", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Huawei TaiShan Server", 1, 25);
    await ui.expand(10);
    const nodesAfterFirst = visibleIds(ui.state);
    const linksAfterFirst = ui.state.links.map((l) => l.id);

    const added = await ui.expand(10);
    expect(added).toBe(0);
    expect(visibleIds(ui.state)).toEqual(nodesAfterFirst);
    expect(ui.state.links.map((l) => l.id)).toEqual(linksAfterFirst);
    expect(isClosed(ui.state)).toBe(true);
  });

  it("keeps positions of nodes that were already in the view", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Huawei TaiShan Server", 1, 25);
    const product = ui.state.nodes[0];
    product.x = 77;
    product.y = -13;
    await ui.expand(10);
    const after = ui.state.nodes.find((n) => n.id === 10)!;
    expect(after.x).toBe(77);
    expect(after.y).toBe(-13);
  });

  it("holds endpoint closure after every step of scripted sequences", async () => {
    for (const seed of [3, 17, 2024]) {
      const graph = randomGraph(seed, 40, 70);
      const server = new FakeServer(graph);
      const ui = explorer(server);
      const rand = lcg(seed * 31);
      const keywords = ["server", "alpha", "beta", "node", "rack", "1"];

      for (let step = 0; step < 60; step++) {
        const visible = visibleIds(ui.state);
        const roll = rand();
        if (roll < 0.25 || visible.length === 0) {
          const keyword = keywords[Math.floor(rand() * keywords.length)];
          await ui.search(keyword, 1 + Math.floor(rand() * 30), 1 + Math.floor(rand() * 30));
        } else if (roll < 0.7) {
          const id = visible[Math.floor(rand() * visible.length)];
          await ui.expand(id);
        } else {
          const id = visible[Math.floor(rand() * visible.length)];
          ui.hide(id);
        }
        expect(isClosed(ui.state)).toBe(true);
      }
    }
  });
});

describe("search", () => {
  it("replaces the view and clears the selection", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Huawei", 25, 25);
    await ui.select(11);
    expect(ui.state.selection).toBe(11);
    await ui.search("Sugon", 25, 25);
    expect(ui.state.selection).toBeNull();
    expect(
      ui.state.nodes.every((n) => n.name.includes("Sugon") || n.id === 1 || n.id === 20),
    ).toBe(true);
    expect(isClosed(ui.state)).toBe(true);
  });

  it("leaves the view unchanged and toasts on an API error", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Huawei", 25, 25);
    const nodesBefore = visibleIds(ui.state);

    const ok = await ui.search("", 25, 25);
    expect(ok).toBe(false);
    expect(visibleIds(ui.state)).toEqual(nodesBefore);
    expect(ui.drainToasts().length).toBe(1);
  });

  it("reports no matches through the canvas notice", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("zzz-absent", 25, 25);
    expect(ui.state.nodes).toEqual([]);
    expect(ui.notice).toBe("no matches");
    await ui.search("Huawei", 25, 25);
    expect(ui.notice).toBeNull();
  });

  it("returns identical id sets when the same search runs twice", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Server", 25, 25);
    const nodes = visibleIds(ui.state);
    const links = ui.state.links.map((l) => l.id);
    await ui.search("Server", 25, 25);
    expect(visibleIds(ui.state)).toEqual(nodes);
    expect(ui.state.links.map((l) => l.id)).toEqual(links);
  });
});

describe("select", () => {
  it("echoes the node payload for the info panel", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Huawei TaiShan Server", 25, 25);
    const detail = await ui.select(10);
    expect(detail).not.toBeNull();
    expect(detail!.label).toBe("Product");
    expect(detail!.properties["name"]).toBe("Huawei TaiShan Server");
    expect(detail!.degree).toBe(4);
  });

  it("resolves to null for a stale id", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    const detail = await ui.select(999);
    expect(detail).toBeNull();
  });
});

describe("ai introduce", () => {
  it("stores the endpoint markdown byte-for-byte before rendering", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Huawei TaiShan Server", 25, 25);
    await ui.introduce(10);
    const modal = ui.state.modal;
    expect(modal?.phase).toBe("ready");
    if (modal?.phase === "ready") {
      expect(modal.markdown).toBe(server.introduceMarkdown);
      expect(modal.modelId).toBe("fake-analyst");
    }
  });

  it("refuses non-Product nodes without a network call", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Huawei", 25, 25);
    const before = server.calls.length;
    await ui.introduce(11);
    expect(server.calls.length).toBe(before);
    expect(ui.state.modal).toBeNull();
    expect(ui.drainToasts().length).toBe(1);
  });

  it("shows an error state on provider failure and supports retry", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Huawei TaiShan Server", 25, 25);

    server.failIntroduceWith = 502;
    await ui.introduce(10);
    expect(ui.state.modal?.phase).toBe("error");

    server.failIntroduceWith = null;
    await ui.introduce(10);
    expect(ui.state.modal?.phase).toBe("ready");
  });

  it("allows at most one in-flight request per node", async () => {
    const server = new FakeServer(starGraph());
    const ui = explorer(server);
    await ui.search("Huawei TaiShan Server", 25, 25);
    const before = server.calls.length;
    await Promise.all([ui.introduce(10), ui.introduce(10), ui.introduce(10)]);
    const introduceCalls = server.calls
      .slice(before)
      .filter((c) => c.url.includes("ai-introduce"));
    expect(introduceCalls.length).toBe(1);
  });
});
