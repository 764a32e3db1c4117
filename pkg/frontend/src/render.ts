/** DOM rendering of a ViewState: SVG quiver drawing, cluster panel,
 * history line and loop banner. Long Laurent expressions elide with the
 * full form available on hover (title attribute). */

import type { ViewState } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const ELIDE_AT = 42;

export interface RenderTargets {
  svg: SVGSVGElement;
  clusterPanel: HTMLElement;
  historyLine: HTMLElement;
  banner: HTMLElement;
}

export function renderQuiver(
  svg: SVGSVGElement,
  view: ViewState,
  onVertexClick: (k: number) => void,
): void {
  while (svg.firstChild) svg.removeChild(svg.firstChild);
  const defs = document.createElementNS(SVG_NS, "defs");
  defs.innerHTML =
    '<marker id="arrow" viewBox="0 0 10 10" refX="22" refY="5" ' +
    'markerWidth="7" markerHeight="7" orient="auto-start-reverse">' +
    '<path d="M 0 0 L 10 5 L 0 10 z" fill="#555"/></marker>';
  svg.appendChild(defs);

  for (const e of view.edges) {
    const a = view.positions[e.from - 1];
    const b = view.positions[e.to - 1];
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(a.x));
    line.setAttribute("y1", String(a.y));
    line.setAttribute("x2", String(b.x));
    line.setAttribute("y2", String(b.y));
    line.setAttribute("stroke", "#555");
    line.setAttribute("stroke-width", "1.6");
    line.setAttribute("marker-end", "url(#arrow)");
    svg.appendChild(line);
    if (e.label) {
      const text = document.createElementNS(SVG_NS, "text");
      text.setAttribute("x", String((a.x + b.x) / 2 + 6));
      text.setAttribute("y", String((a.y + b.y) / 2 - 6));
      text.setAttribute("class", "edge-label");
      text.textContent = e.label;
      svg.appendChild(text);
    }
  }

  for (let k = 1; k <= view.n; k++) {
    const p = view.positions[k - 1];
    const frozen = view.frozen.has(k);
    const g = document.createElementNS(SVG_NS, "g");
    g.setAttribute("class", frozen ? "vertex frozen" : "vertex");
    g.setAttribute("data-vertex", String(k));
    const circle = document.createElementNS(SVG_NS, frozen ? "rect" : "circle");
    if (frozen) {
      circle.setAttribute("x", String(p.x - 14));
      circle.setAttribute("y", String(p.y - 14));
      circle.setAttribute("width", "28");
      circle.setAttribute("height", "28");
      circle.setAttribute("fill", "#ddd");
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = `vertex ${k} is frozen`;
      g.appendChild(title);
    } else {
      circle.setAttribute("cx", String(p.x));
      circle.setAttribute("cy", String(p.y));
      circle.setAttribute("r", "16");
      circle.setAttribute("fill", "#7fb2e5");
      g.addEventListener("click", () => onVertexClick(k));
    }
    circle.setAttribute("stroke", "#333");
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(p.x));
    label.setAttribute("y", String(p.y + 4));
    label.setAttribute("text-anchor", "middle");
    label.textContent = String(k);
    g.appendChild(circle);
    g.appendChild(label);
    svg.appendChild(g);
  }
}

export function renderCluster(panel: HTMLElement, view: ViewState): void {
  panel.textContent = "";
  const list = document.createElement("ol");
  list.className = "cluster-list";
  view.cluster.forEach((display, i) => {
    const item = document.createElement("li");
    item.className = "cluster-entry";
    item.dataset.position = String(i + 1);
    const short =
      display.length > ELIDE_AT ? display.slice(0, ELIDE_AT - 1) + "…" : display;
    item.textContent = short;
    item.title = view.clusterExpanded[i];
    item.dataset.full = display;
    list.appendChild(item);
  });
  panel.appendChild(list);
}

export function renderHistory(line: HTMLElement, view: ViewState): void {
  line.textContent = view.history.length
    ? `word: ${view.history.join(",")}`
    : "word: (empty)";
}

export function renderBanner(el: HTMLElement, view: ViewState): void {
  el.textContent = view.banner.text;
  el.className = `banner banner-${view.banner.kind}`;
  el.style.display = view.banner.kind === "none" ? "none" : "block";
}

export function renderAll(
  targets: RenderTargets,
  view: ViewState,
  onVertexClick: (k: number) => void,
): void {
  renderQuiver(targets.svg, view, onVertexClick);
  renderCluster(targets.clusterPanel, view);
  renderHistory(targets.historyLine, view);
  renderBanner(targets.banner, view);
}
