/** Deterministic force-directed layout for quiver drawings.
 *
 * Initial positions come from a PRNG seeded by the vertex indices, and the
 * simulation runs a fixed number of steps, so the same quiver always lays
 * out identically (screenshots are reproducible in tests).
 */

import type { QuiverObj } from "./api.js";

export interface Point {
  x: number;
  y: number;
}

/** mulberry32: tiny deterministic PRNG. */
export function seededRandom(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a += 0x6d2b79f5;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

const STEPS = 250;
const REPULSION = 8000;
const SPRING = 0.04;
const REST_LENGTH = 120;
const CENTERING = 0.015;
const DAMPING = 0.85;

export function layoutQuiver(
  quiver: QuiverObj,
  width = 520,
  height = 360,
): Point[] {
  const n = quiver.n;
  if (n === 0) return [];
  const rand = seededRandom(
    n * 2654435761 + quiver.edges.reduce((h, e) => h * 31 + e.from * 7 + e.to, 17),
  );
  // seed on a circle with jitter so symmetric quivers still break ties
  const pos: Point[] = [];
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / n;
    pos.push({
      x: width / 2 + Math.cos(angle) * width * 0.3 + (rand() - 0.5) * 20,
      y: height / 2 + Math.sin(angle) * height * 0.3 + (rand() - 0.5) * 20,
    });
  }
  const vel: Point[] = pos.map(() => ({ x: 0, y: 0 }));
  const adjacency = quiver.edges.map((e) => [e.from - 1, e.to - 1] as const);

  for (let step = 0; step < STEPS; step++) {
    const force: Point[] = pos.map(() => ({ x: 0, y: 0 }));
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const dx = pos[i].x - pos[j].x;
        const dy = pos[i].y - pos[j].y;
        const d2 = Math.max(dx * dx + dy * dy, 1);
        const f = REPULSION / d2;
        const d = Math.sqrt(d2);
        force[i].x += (dx / d) * f;
        force[i].y += (dy / d) * f;
        force[j].x -= (dx / d) * f;
        force[j].y -= (dy / d) * f;
      }
    }
    for (const [a, b] of adjacency) {
      const dx = pos[b].x - pos[a].x;
      const dy = pos[b].y - pos[a].y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const f = SPRING * (d - REST_LENGTH);
      force[a].x += (dx / d) * f;
      force[a].y += (dy / d) * f;
      force[b].x -= (dx / d) * f;
      force[b].y -= (dy / d) * f;
    }
    for (let i = 0; i < n; i++) {
      force[i].x += (width / 2 - pos[i].x) * CENTERING;
      force[i].y += (height / 2 - pos[i].y) * CENTERING;
      vel[i].x = (vel[i].x + force[i].x * 0.02) * DAMPING;
      vel[i].y = (vel[i].y + force[i].y * 0.02) * DAMPING;
      pos[i].x += vel[i].x;
      pos[i].y += vel[i].y;
    }
  }
  // clamp into the viewport with a margin
  for (const p of pos) {
    p.x = Math.min(Math.max(p.x, 30), width - 30);
    p.y = Math.min(Math.max(p.y, 30), height - 30);
  }
  return pos;
}
