/** ViewState: a pure projection of the service's session state.
 *
 * No mutation math happens here; every displayed string comes verbatim
 * from the server payload.
 */

import type { Point } from "./layout.js";
import type { SessionState } from "./api.js";
import { layoutQuiver } from "./layout.js";

export type BannerKind = "strict" | "symmetric" | "none";

export interface Banner {
  kind: BannerKind;
  text: string;
}

export interface ViewState {
  sessionId: string;
  n: number;
  positions: Point[];
  edges: { from: number; to: number; label: string }[];
  frozen: Set<number>;
  cluster: string[];
  clusterExpanded: string[];
  history: number[];
  banner: Banner;
  bannerMode: "strict" | "symmetric";
}

export function bannerFor(
  state: SessionState,
  bannerMode: "strict" | "symmetric",
): Banner {
  if (state.history.length === 0) {
    return { kind: "none", text: "" };
  }
  if (bannerMode === "strict") {
    return state.loop.strict
      ? { kind: "strict", text: "rooted loop (strict)" }
      : { kind: "none", text: "" };
  }
  if (state.loop.strict) {
    return { kind: "strict", text: "rooted loop (strict)" };
  }
  if (state.loop.symmetric && state.loop.witness) {
    const sign = state.loop.witness.sign > 0 ? "+" : "-";
    return {
      kind: "symmetric",
      text: `rooted loop (symmetric, sigma=${state.loop.witness.sigma_cycles}, sign=${sign})`,
    };
  }
  return { kind: "none", text: "" };
}

export function project(
  state: SessionState,
  bannerMode: "strict" | "symmetric" = "symmetric",
): ViewState {
  const valuationLabel = (val: [number, number]) =>
    val[0] === 1 && val[1] === 1 ? "" : `(${val[0]},${val[1]})`;
  return {
    sessionId: state.id,
    n: state.n,
    positions: layoutQuiver(state.quiver),
    edges: state.quiver.edges.map((e) => ({
      from: e.from,
      to: e.to,
      label: valuationLabel(e.val),
    })),
    frozen: new Set(state.quiver.frozen ?? []),
    cluster: state.cluster,
    clusterExpanded: state.cluster_expanded,
    history: state.history,
    banner: bannerFor(state, bannerMode),
    bannerMode,
  };
}
