// Shapes of the cli-service JSON responses the UI consumes.

export interface GraphJson {
  n: number;
  k: number;
  vertices: { id: number; colour: "black" | "white" | "boundary"; rotation: number[] }[];
  edges: [number, number][];
}

export interface FaceJson {
  label: number[];
  right_label: number[];
  frozen: boolean;
  mutable: boolean;
  vertices: number[];
}

export interface GraphPayload {
  graph: GraphJson;
  faces: FaceJson[];
  layout: Record<string, [number, number]>;
  history: number[][];
  changed?: { removed: number[]; added: number[] | null };
}

export interface ApiError {
  error: string;
  code: string;
}

export interface OrbitPayload {
  orbit: { n: number; k: number; labels: number[][] }[];
}
