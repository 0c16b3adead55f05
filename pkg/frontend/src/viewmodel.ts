// Pure transforms from server payloads to drawable data.
// The view model never invents combinatorial facts: every label, flag and
// position comes straight from the service response.

import type { FaceJson, GraphPayload } from "./types.js";

export interface FaceView {
  key: string;
  label: string;
  rightLabel: string;
  frozen: boolean;
  mutable: boolean;
  polygon: [number, number][];
  centroid: [number, number];
}

export interface VertexView {
  id: number;
  colour: string;
  x: number;
  y: number;
}

export interface ViewModel {
  n: number;
  k: number;
  width: number;
  height: number;
  vertices: VertexView[];
  edges: { x1: number; y1: number; x2: number; y2: number; boundary: boolean }[];
  faces: FaceView[];
  history: string[];
}

export const labelText = (label: number[]): string => label.join(",");

export function parseLabel(text: string): number[] {
  return text
    .split(",")
    .map((part) => Number.parseInt(part.trim(), 10))
    .filter((x) => Number.isFinite(x));
}

const scalePoint = (
  point: [number, number],
  width: number,
  height: number,
): [number, number] => {
  // layout coordinates live in roughly [-1.1, 1.1]
  const margin = 44;
  const scale = Math.min(width, height) / 2 - margin;
  return [
    width / 2 + point[0] * scale,
    height / 2 - point[1] * scale,
  ];
};

function centroid(points: [number, number][]): [number, number] {
  const sx = points.reduce((acc, point) => acc + point[0], 0);
  const sy = points.reduce((acc, point) => acc + point[1], 0);
  return [sx / points.length, sy / points.length];
}

export function buildViewModel(
  payload: GraphPayload,
  width = 680,
  height = 680,
): ViewModel {
  const positions = new Map<number, [number, number]>();
  for (const [id, point] of Object.entries(payload.layout)) {
    positions.set(Number(id), scalePoint(point, width, height));
  }
  const colourOf = new Map(payload.graph.vertices.map((v) => [v.id, v.colour]));
  const vertices: VertexView[] = payload.graph.vertices.map((v) => {
    const [x, y] = positions.get(v.id) ?? [0, 0];
    return { id: v.id, colour: v.colour, x, y };
  });
  const edges = payload.graph.edges.map(([u, v]) => {
    const [x1, y1] = positions.get(u) ?? [0, 0];
    const [x2, y2] = positions.get(v) ?? [0, 0];
    const boundary =
      colourOf.get(u) === "boundary" && colourOf.get(v) === "boundary";
    return { x1, y1, x2, y2, boundary };
  });
  const faces: FaceView[] = payload.faces.map((face: FaceJson) => {
    const polygon = face.vertices.map(
      (id) => positions.get(id) ?? ([0, 0] as [number, number]),
    );
    return {
      key: labelText(face.label),
      label: labelText(face.label),
      rightLabel: labelText(face.right_label),
      frozen: face.frozen,
      mutable: face.mutable,
      polygon,
      centroid: centroid(polygon),
    };
  });
  return {
    n: payload.graph.n,
    k: payload.graph.k,
    width,
    height,
    vertices,
    edges,
    faces,
    history: (payload.history ?? []).map(labelText),
  };
}
