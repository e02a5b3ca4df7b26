/** Small deterministic force-directed layout for the board. */

export interface Point {
  x: number;
  y: number;
}

export function forceLayout(
  n: number,
  edges: [number, number][],
  width: number,
  height: number,
  iterations = 250,
): Point[] {
  if (n === 0) return [];
  // deterministic start on a circle, then spring/repulsion relaxation
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - 50;
  const points: Point[] = Array.from({ length: n }, (_, i) => ({
    x: cx + radius * Math.cos((2 * Math.PI * i) / n),
    y: cy + radius * Math.sin((2 * Math.PI * i) / n),
  }));
  if (n === 1) {
    points[0] = { x: cx, y: cy };
    return points;
  }
  const ideal = Math.min(160, (2.2 * radius) / Math.sqrt(n));
  for (let step = 0; step < iterations; step += 1) {
    const heat = 0.12 * (1 - step / iterations) + 0.02;
    const force: Point[] = points.map(() => ({ x: 0, y: 0 }));
    for (let i = 0; i < n; i += 1) {
      for (let j = i + 1; j < n; j += 1) {
        const dx = points[i].x - points[j].x;
        const dy = points[i].y - points[j].y;
        const d2 = Math.max(dx * dx + dy * dy, 1);
        const push = (ideal * ideal) / d2;
        const d = Math.sqrt(d2);
        force[i].x += (dx / d) * push * 8;
        force[i].y += (dy / d) * push * 8;
        force[j].x -= (dx / d) * push * 8;
        force[j].y -= (dy / d) * push * 8;
      }
    }
    for (const [u, v] of edges) {
      const dx = points[v].x - points[u].x;
      const dy = points[v].y - points[u].y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = (d - ideal) / d;
      force[u].x += dx * pull * 0.5;
      force[u].y += dy * pull * 0.5;
      force[v].x -= dx * pull * 0.5;
      force[v].y -= dy * pull * 0.5;
    }
    for (let i = 0; i < n; i += 1) {
      points[i].x += force[i].x * heat;
      points[i].y += force[i].y * heat;
      points[i].x = Math.min(width - 40, Math.max(40, points[i].x));
      points[i].y = Math.min(height - 40, Math.max(40, points[i].y));
    }
  }
  return points;
}
