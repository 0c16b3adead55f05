// SVG markup for a view model.  Pure string building so tests can assert
// on the exact rendering without a DOM.

import type { ViewModel } from "./viewmodel.js";

const esc = (text: string): string =>
  text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export function renderSvg(vm: ViewModel): string {
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${vm.width} ${vm.height}" width="${vm.width}" height="${vm.height}">`,
  );

  for (const face of vm.faces) {
    const points = face.polygon.map(([x, y]) => `${x.toFixed(1)},${y.toFixed(1)}`).join(" ");
    const cls = face.mutable ? "face mutable" : face.frozen ? "face frozen" : "face";
    parts.push(
      `<polygon class="${cls}" data-label="${esc(face.label)}" data-right="${esc(face.rightLabel)}" data-mutable="${face.mutable}" points="${points}"><title>left {${esc(face.label)}}  right {${esc(face.rightLabel)}}</title></polygon>`,
    );
  }

  for (const edge of vm.edges) {
    const cls = edge.boundary ? "edge boundary" : "edge";
    parts.push(
      `<line class="${cls}" x1="${edge.x1.toFixed(1)}" y1="${edge.y1.toFixed(1)}" x2="${edge.x2.toFixed(1)}" y2="${edge.y2.toFixed(1)}"/>`,
    );
  }

  for (const v of vm.vertices) {
    if (v.colour === "boundary") {
      parts.push(
        `<g class="bvertex"><circle cx="${v.x.toFixed(1)}" cy="${v.y.toFixed(1)}" r="3"/><text x="${(v.x * 1.07 - vm.width * 0.035).toFixed(1)}" y="${(v.y * 1.07 - vm.height * 0.035).toFixed(1)}" class="bindex">${v.id}</text></g>`,
      );
    } else {
      const fill = v.colour === "black" ? "#111" : "#fff";
      parts.push(
        `<circle class="vertex" cx="${v.x.toFixed(1)}" cy="${v.y.toFixed(1)}" r="7" fill="${fill}" stroke="#111"/>`,
      );
    }
  }

  for (const face of vm.faces) {
    const [cx, cy] = face.centroid;
    const cls = face.frozen ? "facelabel frozen" : "facelabel";
    parts.push(
      `<g class="${cls}" data-label="${esc(face.label)}"><text x="${cx.toFixed(1)}" y="${(cy - 3).toFixed(1)}" class="left">${esc(face.label)}</text><text x="${cx.toFixed(1)}" y="${(cy + 9).toFixed(1)}" class="right">${esc(face.rightLabel)}</text></g>`,
    );
  }

  parts.push("</svg>");
  return parts.join("");
}

export function renderHistory(history: string[]): string {
  if (!history.length) {
    return "<em>no mutations yet</em>";
  }
  return history.map((item) => `<span class="chip">{${esc(item)}}</span>`).join(" ");
}
