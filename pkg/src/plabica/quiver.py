"""Quivers attached to plabic graphs and quiver mutation."""

from __future__ import annotations

from .plabic import BLACK, BOUNDARY, WHITE, PlabicError


class Quiver:
    """Directed multigraph on labelled vertices, no loops or 2-cycles.

    Arrows are a multiplicity map on ordered vertex pairs; frozen-frozen
    arrows are dropped on construction and never recreated by mutation.
    """

    __slots__ = ("frozen", "arrows")

    def __init__(self, frozen, arrows):
        self.frozen = dict(frozen)
        cleaned = {}
        for (u, v), m in arrows.items():
            if m < 0:
                raise ValueError("negative arrow multiplicity")
            if m == 0 or u == v:
                continue
            if self.frozen.get(u) and self.frozen.get(v):
                continue
            cleaned[(u, v)] = cleaned.get((u, v), 0) + m
        # cancel 2-cycles
        for (u, v) in sorted(cleaned, key=repr):
            if (v, u) in cleaned and (u, v) in cleaned:
                m = min(cleaned[(u, v)], cleaned[(v, u)])
                cleaned[(u, v)] -= m
                cleaned[(v, u)] -= m
        self.arrows = {p: m for p, m in cleaned.items() if m > 0}

    def vertices(self):
        return sorted(self.frozen)

    def mutable_vertices(self):
        return sorted(v for v, fr in self.frozen.items() if not fr)

    def arrows_into(self, w):
        return {u: m for (u, v), m in self.arrows.items() if v == w}

    def arrows_out_of(self, w):
        return {v: m for (u, v), m in self.arrows.items() if u == w}

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.frozen == other.frozen
            and self.arrows == other.arrows
        )

    def __repr__(self):
        return f"Quiver({len(self.frozen)} vertices, {sum(self.arrows.values())} arrows)"

    def relabel(self, mapping):
        """New quiver with vertices renamed through mapping (identity elsewhere)."""
        f = {mapping.get(v, v): fr for v, fr in self.frozen.items()}
        a = {(mapping.get(u, u), mapping.get(v, v)): m for (u, v), m in self.arrows.items()}
        return Quiver(f, a)

    def to_json(self):
        verts = [
            {"label": list(v), "frozen": self.frozen[v]} for v in sorted(self.frozen)
        ]
        arrows = [
            {"from": list(u), "to": list(v), "multiplicity": m}
            for (u, v), m in sorted(self.arrows.items())
        ]
        return {"vertices": verts, "arrows": arrows}

    def to_dot(self):
        lines = ["digraph quiver {"]
        for v in sorted(self.frozen):
            shape = "box" if self.frozen[v] else "ellipse"
            name = "".join(map(str, v))
            lines.append(f'  "{name}" [shape={shape}];')
        for (u, v), m in sorted(self.arrows.items()):
            for _ in range(m):
                lines.append(
                    f'  "{"".join(map(str, u))}" -> "{"".join(map(str, v))}";'
                )
        lines.append("}")
        return "\n".join(lines)


def quiver_from_graph(G):
    """Quiver on the inner faces of G, arrows across bicoloured edges.

    Each arrow crosses its edge seeing the white endpoint on the left; with
    faces traced to the left of their darts this means the arrow runs from
    the face right of the white-to-black dart to the face left of it.
    """
    ok, witness = G.is_reduced()
    if not ok:
        raise PlabicError("not-reduced", f"quiver needs a reduced graph: {witness}")
    labels = G.face_labels()
    frozen_set = set(G.frozen_labels())
    frozen = {lab: (lab in frozen_set) for lab in labels.values()}
    face_of = G._face_of()
    arrows = {}
    for t, (u, v) in G.edges.items():
        cu, cv = G.colour[u], G.colour[v]
        if BOUNDARY in (cu, cv) or cu == cv:
            continue
        d = (t, 0) if cu == WHITE else (t, 1)
        left = face_of[d]
        right = face_of[(d[0], 1 - d[1])]
        if left == right:
            continue
        pair = (labels[right], labels[left])
        arrows[pair] = arrows.get(pair, 0) + 1
    return Quiver(frozen, arrows)



def mutate_quiver(Q, w):
    """Quiver mutation at a mutable vertex w."""
    if w not in Q.frozen:
        raise PlabicError("absent", f"no vertex {w}")
    if Q.frozen[w]:
        raise PlabicError("frozen", f"vertex {w} is frozen")
    arrows = dict(Q.arrows)
    into = Q.arrows_into(w)
    out = Q.arrows_out_of(w)
    for u, mu in into.items():
        for v, mv in out.items():
            if Q.frozen.get(u) and Q.frozen.get(v):
                continue
            arrows[(u, v)] = arrows.get((u, v), 0) + mu * mv
    for u, mu in into.items():
        arrows[(u, w)] = 0
        arrows[(w, u)] = arrows.get((w, u), 0) + mu
    for v, mv in out.items():
        arrows[(w, v)] = 0
        arrows[(v, w)] = arrows.get((v, w), 0) + mv
    return Quiver(Q.frozen, arrows)
