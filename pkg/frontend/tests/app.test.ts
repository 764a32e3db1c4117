import { afterEach, describe, expect, it, vi } from "vitest";

import { Explorer } from "../src/app.js";
import type { SessionState } from "../src/api.js";
import { A2_STATE, clusterStrings, fakeFetch, makeTargets } from "./helpers.js";

afterEach(() => {
  vi.unstubAllGlobals();
  document.body.innerHTML = "";
});

describe("Explorer", () => {
  it("creates a session and renders the initial seed", async () => {
    const calls: string[] = [];
    vi.stubGlobal(
      "fetch",
      fakeFetch((url) => {
        calls.push(url);
        return { status: 200, body: A2_STATE };
      }),
    );
    const targets = makeTargets();
    const app = new Explorer({ baseUrl: "http://api", targets });
    const view = await app.loadQuiverText(
      '{"n":2,"edges":[{"from":1,"to":2,"val":[1,1]}]}',
    );
    expect(view?.cluster).toEqual(["x1", "x2"]);
    expect(calls).toEqual(["http://api/v1/sessions"]);
    expect(clusterStrings(targets)).toEqual(["x1", "x2"]);
    expect(targets.svg.querySelectorAll("g.vertex").length).toBe(2);
  });

  it("shows server diagnostics verbatim on malformed files", async () => {
    vi.stubGlobal(
      "fetch",
      fakeFetch(() => ({
        status: 400,
        body: { detail: "parse error: missing field 'n'" },
      })),
    );
    const toasts: string[] = [];
    const app = new Explorer({
      baseUrl: "http://api",
      targets: makeTargets(),
      toast: (m) => toasts.push(m),
    });
    const view = await app.loadQuiverText('{"edges":[]}');
    expect(view).toBeNull();
    expect(toasts).toEqual(["server error 400: parse error: missing field 'n'"]);
  });

  it("rejects unparsable JSON client-side with a toast", async () => {
    const toasts: string[] = [];
    const app = new Explorer({
      baseUrl: "http://api",
      targets: makeTargets(),
      toast: (m) => toasts.push(m),
    });
    expect(await app.loadQuiverText("{")).toBeNull();
    expect(toasts[0]).toMatch(/invalid JSON/);
  });

  it("never computes algebra locally: sentinel strings render verbatim", async () => {
    const weird: SessionState = {
      ...A2_STATE,
      cluster: ["SENTINEL ALPHA", "SENTINEL BETA"],
      cluster_expanded: ["LONG ALPHA", "LONG BETA"],
    };
    vi.stubGlobal("fetch", fakeFetch(() => ({ status: 200, body: weird })));
    const targets = makeTargets();
    const app = new Explorer({ baseUrl: "http://api", targets });
    await app.loadQuiver(weird.quiver);
    expect(clusterStrings(targets)).toEqual(["SENTINEL ALPHA", "SENTINEL BETA"]);
    const entries = targets.clusterPanel.querySelectorAll<HTMLElement>(
      ".cluster-entry",
    );
    expect(entries[0].title).toBe("LONG ALPHA");
  });

  it("clicking a vertex round-trips to the service and re-renders", async () => {
    const mutated: SessionState = {
      ...A2_STATE,
      history: [1],
      cluster: ["(1 + x2)/x1", "x2"],
      cluster_expanded: ["x1^-1 + x1^-1*x2", "x2"],
      quiver: {
        n: 2,
        edges: [{ from: 2, to: 1, val: [1, 1] }],
        symmetrizer: [1, 1],
        frozen: [],
      },
      loop: { strict: false, symmetric: false, witness: null },
    };
    const posts: { url: string; body: unknown }[] = [];
    vi.stubGlobal(
      "fetch",
      fakeFetch((url, init) => {
        if (url.endsWith("/v1/sessions")) return { status: 200, body: A2_STATE };
        posts.push({ url, body: JSON.parse(String(init?.body)) });
        return { status: 200, body: mutated };
      }),
    );
    const targets = makeTargets();
    const app = new Explorer({ baseUrl: "http://api", targets });
    await app.loadQuiver(A2_STATE.quiver);
    const view = await app.clickVertex(1);
    expect(posts).toEqual([
      { url: "http://api/v1/sessions/s1/mutate", body: { vertex: 1 } },
    ]);
    expect(view?.cluster[0]).toBe("(1 + x2)/x1");
    expect(clusterStrings(targets)[0]).toBe("(1 + x2)/x1");
    expect(targets.historyLine.textContent).toBe("word: 1");
  });

  it("frozen vertex clicks are inert (no API traffic)", async () => {
    const frozenState: SessionState = {
      ...A2_STATE,
      quiver: { ...A2_STATE.quiver, frozen: [2] },
    };
    let mutateCalls = 0;
    vi.stubGlobal(
      "fetch",
      fakeFetch((url) => {
        if (url.includes("/mutate")) mutateCalls += 1;
        return { status: 200, body: frozenState };
      }),
    );
    const app = new Explorer({ baseUrl: "http://api", targets: makeTargets() });
    await app.loadQuiver(frozenState.quiver);
    await app.clickVertex(2);
    expect(mutateCalls).toBe(0);
  });

  it("undo with empty history is inert", async () => {
    let undoCalls = 0;
    vi.stubGlobal(
      "fetch",
      fakeFetch((url) => {
        if (url.endsWith("/undo")) undoCalls += 1;
        return { status: 200, body: A2_STATE };
      }),
    );
    const app = new Explorer({ baseUrl: "http://api", targets: makeTargets() });
    await app.loadQuiver(A2_STATE.quiver);
    await app.undo();
    expect(undoCalls).toBe(0);
  });

  it("loop banner follows the service's loop status and the mode toggle", async () => {
    const looped: SessionState = {
      ...A2_STATE,
      history: [1, 2, 1, 2, 1],
      cluster: ["x2", "x1"],
      cluster_expanded: ["x2", "x1"],
      loop: {
        strict: false,
        symmetric: true,
        witness: { sigma: [2, 1], sigma_cycles: "(1 2)", sign: 1 },
      },
    };
    vi.stubGlobal("fetch", fakeFetch(() => ({ status: 200, body: looped })));
    const targets = makeTargets();
    const app = new Explorer({ baseUrl: "http://api", targets });
    await app.loadQuiver(looped.quiver);
    expect(targets.banner.textContent).toBe(
      "rooted loop (symmetric, sigma=(1 2), sign=+)",
    );
    app.toggleBannerMode();
    expect(app.bannerMode).toBe("strict");
    expect(targets.banner.style.display).toBe("none");
  });
});
