/** Browser bootstrap: wire the Explorer to the static page. */

import { Explorer } from "./app.js";

const EXAMPLE = `{
  "n": 2,
  "edges": [{"from": 1, "to": 2, "val": [1, 1]}]
}`;

function toast(message: string): void {
  const el = document.getElementById("toast")!;
  el.textContent = message;
  el.style.display = "block";
  setTimeout(() => (el.style.display = "none"), 6000);
}

function main(): void {
  const explorer = new Explorer({
    baseUrl:
      (document.body.dataset.apiBase as string | undefined) ??
      "http://127.0.0.1:8787",
    targets: {
      svg: document.getElementById("quiver") as unknown as SVGSVGElement,
      clusterPanel: document.getElementById("cluster")!,
      historyLine: document.getElementById("history")!,
      banner: document.getElementById("banner")!,
    },
    toast,
  });

  const input = document.getElementById("quiver-input") as HTMLTextAreaElement;
  input.value = EXAMPLE;

  document.getElementById("load")!.addEventListener("click", () => {
    void explorer.loadQuiverText(input.value);
  });
  document.getElementById("undo")!.addEventListener("click", () => {
    void explorer.undo();
  });
  const modeButton = document.getElementById("mode")!;
  modeButton.addEventListener("click", () => {
    explorer.toggleBannerMode();
    modeButton.textContent = `banner: ${explorer.bannerMode}`;
  });
  const file = document.getElementById("quiver-file") as HTMLInputElement;
  file.addEventListener("change", () => {
    const f = file.files?.[0];
    if (!f) return;
    void f.text().then((text) => {
      input.value = text;
      return explorer.loadQuiverText(text);
    });
  });
}

document.addEventListener("DOMContentLoaded", main);
