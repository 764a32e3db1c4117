import type { RenderTargets } from "../src/render.js";
import type { SessionState } from "../src/api.js";

export function makeTargets(): RenderTargets {
  const svg = document.createElementNS(
    "http://www.w3.org/2000/svg",
    "svg",
  ) as SVGSVGElement;
  const clusterPanel = document.createElement("div");
  const historyLine = document.createElement("p");
  const banner = document.createElement("div");
  document.body.appendChild(svg);
  document.body.appendChild(clusterPanel);
  document.body.appendChild(historyLine);
  document.body.appendChild(banner);
  return { svg, clusterPanel, historyLine, banner };
}

export function clusterStrings(targets: RenderTargets): string[] {
  return Array.from(
    targets.clusterPanel.querySelectorAll<HTMLElement>(".cluster-entry"),
  ).map((el) => el.dataset.full ?? "");
}

export const A2_STATE: SessionState = {
  id: "s1",
  n: 2,
  mode: { kind: "symmetric", allow_sign: true },
  history: [],
  cluster: ["x1", "x2"],
  cluster_expanded: ["x1", "x2"],
  quiver: {
    n: 2,
    edges: [{ from: 1, to: 2, val: [1, 1] }],
    symmetrizer: [1, 1],
    frozen: [],
  },
  loop: { strict: true, symmetric: true, witness: null },
};

export function fakeFetch(
  handler: (url: string, init?: RequestInit) => { status: number; body: unknown },
): typeof fetch {
  return (async (url: RequestInfo | URL, init?: RequestInit) => {
    const { status, body } = handler(String(url), init);
    return {
      ok: status >= 200 && status < 300,
      status,
      statusText: String(status),
      json: async () => body,
    } as Response;
  }) as typeof fetch;
}
