// Typed client for the kgatlas REST API. The fetch implementation is
// injectable so tests can intercept and count every network call.

export interface WireNode {
  id: number;
  label: string;
  properties: Record<string, unknown>;
}

export interface WireLink {
  id: number;
  type: string;
  source: number;
  target: number;
}

export interface WireView {
  nodes: WireNode[];
  links: WireLink[];
}

export interface NodeDetail extends WireNode {
  degree: number;
}

export interface IntroduceResult {
  markdown: string;
  model_id: string;
  elapsed_ms: number;
}

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  search(keyword: string, nodeLimit: number, relLimit: number): Promise<WireView> {
    const params = new URLSearchParams({
      keyword,
      node_limit: String(nodeLimit),
      rel_limit: String(relLimit),
    });
    return this.request<WireView>(`/api/search?${params}`);
  }

  node(id: number): Promise<NodeDetail> {
    return this.request<NodeDetail>(`/api/node/${id}`);
  }

  expand(nodeId: number, visibleIds: number[]): Promise<WireView> {
    return this.request<WireView>("/api/expand", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ node_id: nodeId, visible_ids: visibleIds }),
    });
  }

  aiIntroduce(nodeId: number): Promise<IntroduceResult> {
    return this.request<IntroduceResult>("/api/ai-introduce", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ node_id: nodeId }),
    });
  }

  stats(): Promise<Record<string, number>> {
    return this.request<Record<string, number>>("/api/stats");
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let res: Response;
    try {
      res = await this.fetchFn(this.base + path, init);
    } catch (err) {
      throw new ApiError("network", err instanceof Error ? err.message : String(err), 0);
    }
    const body = await res.json().catch(() => null);
    if (!res.ok) {
      const detail = (body as { error?: { code?: string; message?: string } } | null)?.error;
      throw new ApiError(
        detail?.code ?? `http-${res.status}`,
        detail?.message ?? res.statusText,
        res.status,
      );
    }
    return body as T;
  }
}
