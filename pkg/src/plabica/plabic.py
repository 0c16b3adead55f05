"""Plabic graphs as combinatorial maps.

A graph is stored as a rotation system: every vertex carries the clockwise
cyclic order of its incident half-edges.  Boundary vertices 1..n sit on a
boundary cycle (whose edges belong to the map but are never traversed by
trips); inner vertices are coloured black or white.

Conventions, validated by the test suite against the known families:
  * rotations list darts clockwise in the drawing plane;
  * a trip arriving at a white vertex leaves along the first dart clockwise
    from the reversal of its arrival dart (the maximal left turn), and
    counterclockwise at a black vertex;
  * the face traced through dart d lies to the left of d, so face tracing
    follows cw-successor of the twin.
"""

from __future__ import annotations

import itertools
from math import atan2

from .subsets import (
    DihedralElement,
    KSubset,
    LabelCollection,
    cyclic_interval,
    dihedral_group,
    frozen_label,
    sigma,
)


class PlabicError(Exception):
    """Error with a machine-readable code for the CLI / HTTP layers."""

    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


BLACK, WHITE, BOUNDARY = "black", "white", "boundary"


def _other(colour):
    return BLACK if colour == WHITE else WHITE


class PlabicGraph:
    """Immutable plabic graph with n boundary vertices and trip type pi_{k,n}."""

    def __init__(self, n, k, colour, edges, rot, boundary, check=True):
        self.n = int(n)
        self.k = int(k)
        self.colour = dict(colour)
        self.edges = {t: (u, v) for t, (u, v) in edges.items()}
        self.rot = {v: tuple(r) for v, r in rot.items()}
        self.boundary = tuple(boundary)
        self._faces = None
        self._trips = None
        self._labels = None
        if check:
            self._validate()

    # -- structural basics ---------------------------------------------------

    def _validate(self):
        if len(self.boundary) != self.n:
            raise PlabicError("malformed", "boundary size does not match n")
        seen = {}
        for v, r in self.rot.items():
            for d in r:
                if d in seen:
                    raise PlabicError("malformed", f"dart {d} appears twice")
                seen[d] = v
        for t, (u, v) in self.edges.items():
            if u == v:
                raise PlabicError("malformed", f"loop edge at {u}")
            for s, w in ((0, u), (1, v)):
                if seen.get((t, s)) != w:
                    raise PlabicError("malformed", f"dart ({t},{s}) missing at vertex {w}")
        for b in self.boundary:
            if self.colour.get(b) != BOUNDARY:
                raise PlabicError("malformed", f"vertex {b} should be boundary-coloured")
            inner = [d for d in self.rot[b] if not self._is_cycle_dart(d)]
            if len(inner) != 1:
                raise PlabicError(
                    "malformed", f"boundary vertex {b} has {len(inner)} inner edges"
                )

    def _is_cycle_dart(self, d):
        u, v = self.edges[d[0]]
        return self.colour[u] == BOUNDARY and self.colour[v] == BOUNDARY

    def origin(self, d):
        return self.edges[d[0]][d[1]]

    def head(self, d):
        return self.edges[d[0]][1 - d[1]]

    @staticmethod
    def twin(d):
        return (d[0], 1 - d[1])

    def _cw_next(self, d):
        r = self.rot[self.origin(d)]
        return r[(r.index(d) + 1) % len(r)]

    def _ccw_next(self, d):
        r = self.rot[self.origin(d)]
        return r[(r.index(d) - 1) % len(r)]

    def degree(self, v):
        return len(self.rot[v])

    def inner_vertices(self):
        return [v for v, c in self.colour.items() if c != BOUNDARY]

    def inner_edge_tokens(self):
        return [t for t, (u, v) in self.edges.items()
                if self.colour[u] != BOUNDARY or self.colour[v] != BOUNDARY]

    def boundary_index(self, v):
        return self.boundary.index(v) + 1

    # -- faces -----------------------------------------------------------------

    def faces(self):
        """All faces as dart cycles; each dart lies on the face to its left."""
        if self._faces is not None:
            return self._faces
        remaining = {(t, s) for t in self.edges for s in (0, 1)}
        faces = []
        while remaining:
            d0 = min(remaining)
            cycle = []
            d = d0
            while True:
                cycle.append(d)
                remaining.discard(d)
                d = self._cw_next(self.twin(d))
                if d == d0:
                    break
            faces.append(tuple(cycle))
        self._faces = faces
        return faces

    def _face_of(self):
        return {d: i for i, f in enumerate(self.faces()) for d in f}

    def outer_face_index(self):
        """The face outside the boundary cycle: all its darts are cycle darts."""
        for i, f in enumerate(self.faces()):
            if len(f) == self.n and all(self._is_cycle_dart(d) for d in f):
                if all(self.colour[self.origin(d)] == BOUNDARY for d in f):
                    return i
        raise PlabicError("malformed", "no outer face found")

    def inner_face_indices(self):
        outer = self.outer_face_index()
        return [i for i in range(len(self.faces())) if i != outer]

    def euler_check(self):
        V = len(self.rot)
        E = len(self.edges)
        F = len(self.faces())
        return V - E + F == 2

    # -- trips ------------------------------------------------------------------

    def _trip_step(self, d):
        """Next dart of the trip through d, or None when d ends at the boundary."""
        v = self.head(d)
        if self.colour[v] == BOUNDARY:
            return None
        t = self.twin(d)
        if self.colour[v] == WHITE:
            return self._cw_next(t)
        return self._ccw_next(t)

    def trips(self):
        """One-way trips per boundary vertex plus any round trips.

        Returns (one_way, round_trips): one_way[i] is the dart list of the
        trip starting at boundary vertex i+1; round trips are interior dart
        cycles forced by the turning rules.
        """
        if self._trips is not None:
            return self._trips
        used = set()
        one_way = []
        for b in self.boundary:
            d = next(dd for dd in self.rot[b] if not self._is_cycle_dart(dd))
            path = []
            while d is not None:
                path.append(d)
                used.add(d)
                d = self._trip_step(d)
            one_way.append(tuple(path))
        inner_darts = {
            (t, s)
            for t in self.inner_edge_tokens()
            for s in (0, 1)
            if self.colour[self.edges[t][s]] != BOUNDARY
            or self.colour[self.edges[t][1 - s]] != BOUNDARY
        }
        round_trips = []
        leftover = {d for d in inner_darts if d not in used}
        while leftover:
            d0 = min(leftover)
            cyc = []
            d = d0
            while True:
                cyc.append(d)
                leftover.discard(d)
                d = self._trip_step(d)
                if d is None or d == d0:
                    break
            round_trips.append(tuple(cyc))
        self._trips = (one_way, round_trips)
        return self._trips

    def trip_permutation(self):
        """The permutation sending i to the endpoint of the trip from i."""
        one_way, round_trips = self.trips()
        perm = []
        for path in one_way:
            end = self.head(path[-1])
            if self.colour[end] != BOUNDARY:
                raise PlabicError("malformed", "one-way trip did not reach the boundary")
            perm.append(self.boundary_index(end))
        return tuple(perm)

    def is_reduced(self):
        """Check the four reducedness conditions; returns (bool, witness)."""
        one_way, round_trips = self.trips()
        if round_trips:
            return False, {"kind": "round-trip", "trip": round_trips[0]}

        def essential(darts_a, darts_b):
            # bicoloured edges used by a and, in the other direction, by b
            hits = []
            pos_b = {d: i for i, d in enumerate(darts_b)}
            for i, d in enumerate(darts_a):
                u, v = self.edges[d[0]]
                if BOUNDARY in (self.colour[u], self.colour[v]):
                    continue
                if self.colour[u] == self.colour[v]:
                    continue
                j = pos_b.get(self.twin(d))
                if j is not None:
                    hits.append((i, j, d[0]))
            return hits

        for idx, path in enumerate(one_way):
            if essential(path, path):
                return False, {"kind": "essential-self-intersection", "trip": idx + 1}
        for a, b in itertools.combinations(range(self.n), 2):
            hits = essential(one_way[a], one_way[b])
            for (i1, j1, e1), (i2, j2, e2) in itertools.combinations(hits, 2):
                # positions in trip b refer to the twins, order is preserved
                if (i1 - i2) * (j1 - j2) > 0:
                    return False, {
                        "kind": "bad-double-crossing",
                        "trips": (a + 1, b + 1),
                        "edges": (e1, e2),
                    }
        perm = self.trip_permutation()
        for v in self.inner_vertices():
            if self.degree(v) == 1:
                w = self.head(self.rot[v][0])
                if self.colour[w] != BOUNDARY:
                    return False, {"kind": "interior-leaf", "vertex": v}
        for i, img in enumerate(perm, start=1):
            if img == i:
                b = self.boundary[i - 1]
                w = self.head(next(d for d in self.rot[b] if not self._is_cycle_dart(d)))
                if self.degree(w) != 1:
                    return False, {"kind": "fixed-point-without-leaf", "index": i}
        return True, None

    # -- face labels -------------------------------------------------------------

    def face_labels(self):
        """Labels of all inner faces: i belongs to a label iff the face lies
        to the left of the trip starting at boundary vertex i."""
        if self._labels is not None:
            return self._labels
        ok, witness = self.is_reduced()
        if not ok:
            raise PlabicError("not-reduced", f"face labels need a reduced graph: {witness}")
        faces = self.faces()
        face_of = self._face_of()
        outer = self.outer_face_index()
        inner = self.inner_face_indices()

        adjacency = {i: set() for i in inner}
        for t in self.edges:
            fa, fb = face_of[(t, 0)], face_of[(t, 1)]
            if fa == fb or outer in (fa, fb):
                continue
            adjacency[fa].add((t, fb))
            adjacency[fb].add((t, fa))

        one_way, _ = self.trips()
        label_sets = {i: set() for i in inner}
        for b_idx, path in enumerate(one_way, start=1):
            trip_edges = {d[0] for d in path}
            left_seed = {face_of[d] for d in path}
            right_seed = {face_of[self.twin(d)] for d in path}
            seen = set(left_seed)
            stack = list(left_seed)
            while stack:
                f = stack.pop()
                for t, g in adjacency[f]:
                    if t in trip_edges or g in seen:
                        continue
                    seen.add(g)
                    stack.append(g)
            if seen & (right_seed - left_seed):
                raise PlabicError("malformed", "trip does not separate left from right")
            for f in seen:
                label_sets[f].add(b_idx)

        labels = {f: KSubset(self.n, s) for f, s in label_sets.items()}
        self._labels = labels
        return labels

    def label_collection(self):
        return LabelCollection(self.n, self.k, self.face_labels().values())

    def right_labels(self):
        """Complements of the face labels, i.e. labels read to the right of trips."""
        return LabelCollection(
            self.n, self.n - self.k,
            (lab.complement() for lab in self.face_labels().values()),
        )

    def frozen_labels(self):
        return [frozen_label(i, self.k, self.n) for i in range(1, self.n + 1)]

    def label_of_frozen_face(self, i):
        """The face between boundary vertices i and i+1 (left of the cycle dart)."""
        b_next = self.boundary[i % self.n]
        t = next(
            t for t, (u, v) in self.edges.items()
            if {u, v} == {self.boundary[i - 1], b_next}
        )
        s = 0 if self.edges[t][0] == b_next else 1
        face_of = self._face_of()
        return face_of[(t, s)]

    def validate_family_invariants(self):
        """Frozen faces carry the interval labels and the count is k(n-k)+1."""
        labels = self.face_labels()
        if len(labels) != self.k * (self.n - self.k) + 1:
            raise PlabicError("malformed", "wrong number of inner faces")
        for i in range(1, self.n + 1):
            f = self.label_of_frozen_face(i)
            if labels[f] != frozen_label(i, self.k, self.n):
                raise PlabicError("malformed", f"frozen face {i} carries {labels[f]}")
        return True

    def mutable_labels(self):
        """Labels whose face, in the contracted representative, is a quadrilateral."""
        H = self.contract()
        frozen = set(H.frozen_labels())
        out = []
        for f, lab in H.face_labels().items():
            if lab in frozen:
                continue
            if len(H.faces()[f]) == 4:
                out.append(lab)
        return sorted(out)

    # -- serialization ------------------------------------------------------------

    def _canonical_edge_order(self):
        def keyfun(t):
            u, v = self.edges[t]
            return (min(u, v), max(u, v), t)

        return sorted(self.edges, key=keyfun)

    def to_json(self):
        """Canonical JSON, invariant under internal renaming.

        Boundary label i becomes vertex id i; inner vertices are numbered by
        a breadth-first walk rooted at the boundary that respects rotation
        order, and edges are indexed in first-encounter order, so isomorphic
        graphs with equal boundary labelling serialize identically.
        """
        rename = {v: i + 1 for i, v in enumerate(self.boundary)}
        arrival = {}
        queue = []
        for b in self.boundary:
            d = next(dd for dd in self.rot[b] if not self._is_cycle_dart(dd))
            w = self.head(d)
            if self.colour[w] != BOUNDARY and w not in rename:
                rename[w] = len(rename) + 1
                arrival[w] = self.twin(d)
                queue.append(w)
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            r = self.rot[v]
            start = r.index(arrival[v])
            for d in r[start:] + r[:start]:
                w = self.head(d)
                if self.colour[w] != BOUNDARY and w not in rename:
                    rename[w] = len(rename) + 1
                    arrival[w] = self.twin(d)
                    queue.append(w)
        if len(rename) != len(self.rot):
            raise PlabicError("malformed", "graph is not connected to the boundary")

        def canon_rot(v):
            r = self.rot[v]
            if self.colour[v] == BOUNDARY:
                first = next(dd for dd in r if not self._is_cycle_dart(dd))
            else:
                first = arrival[v]
            i = r.index(first)
            return r[i:] + r[:i]

        edge_index = {}
        first_dart = {}
        for v in sorted(self.rot, key=lambda x: rename[x]):
            for d in canon_rot(v):
                if d[0] not in edge_index:
                    edge_index[d[0]] = len(edge_index)
                    first_dart[d[0]] = d

        def dart_id(d):
            t = d[0]
            side = 0 if d == first_dart[t] else 1
            return 2 * edge_index[t] + side

        vertices = []
        for v in sorted(self.rot, key=lambda x: rename[x]):
            vertices.append(
                {
                    "id": rename[v],
                    "colour": self.colour[v],
                    "rotation": [dart_id(d) for d in canon_rot(v)],
                }
            )
        edges = [None] * len(edge_index)
        for t, i in edge_index.items():
            u = self.origin(first_dart[t])
            w = self.head(first_dart[t])
            edges[i] = [rename[u], rename[w]]
        return {
            "n": self.n,
            "k": self.k,
            "vertices": vertices,
            "edges": edges,
        }

    @staticmethod
    def from_json(data):
        n, k = data["n"], data["k"]
        edges = {i: tuple(uv) for i, uv in enumerate(data["edges"])}
        colour, rot = {}, {}
        for item in data["vertices"]:
            v = item["id"]
            colour[v] = item["colour"]
            rot[v] = tuple((d // 2, d % 2) for d in item["rotation"])
        boundary = list(range(1, n + 1))
        return PlabicGraph(n, k, colour, edges, rot, boundary)

    def to_dot(self):
        data = self.to_json()
        lines = ["graph plabic {", "  layout=neato;"]
        for item in data["vertices"]:
            if item["colour"] == BOUNDARY:
                style = 'shape=plaintext, label="%d"' % item["id"]
            else:
                fill = item["colour"]
                fontcolour = "white" if fill == BLACK else "black"
                style = (
                    f'shape=circle, style=filled, fillcolor={fill}, '
                    f'fontcolor={fontcolour}, label=""'
                )
            lines.append(f'  v{item["id"]} [{style}];')
        for u, v in data["edges"]:
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines)

    # -- derived graphs -------------------------------------------------------------

    def _replace(self, colour=None, edges=None, rot=None, boundary=None):
        return PlabicGraph(
            self.n,
            self.k,
            self.colour if colour is None else colour,
            self.edges if edges is None else edges,
            self.rot if rot is None else rot,
            self.boundary if boundary is None else boundary,
        )

    def contract(self):
        """Remove middle vertices and contract unicoloured edges until stable."""
        colour = dict(self.colour)
        edges = dict(self.edges)
        rot = {v: list(r) for v, r in self.rot.items()}
        token = max(edges) + 1 if edges else 0

        def endpoint(t, s):
            return edges[t][s]

        changed = True
        while changed:
            changed = False
            for v in sorted(rot):
                if colour.get(v) in (BOUNDARY, None) or len(rot[v]) != 2:
                    continue
                (t1, s1), (t2, s2) = rot[v]
                w1 = endpoint(t1, 1 - s1)
                w2 = endpoint(t2, 1 - s2)
                if colour[w1] == BOUNDARY and colour[w2] == BOUNDARY:
                    continue
                if w1 == w2:
                    continue
                t_new = token
                token += 1
                edges[t_new] = (w1, w2)
                rot[w1][rot[w1].index((t1, 1 - s1))] = (t_new, 0)
                rot[w2][rot[w2].index((t2, 1 - s2))] = (t_new, 1)
                del edges[t1], edges[t2], rot[v], colour[v]
                changed = True
                break
            if changed:
                continue
            for t in sorted(edges):
                u, v = edges[t]
                cu, cv = colour[u], colour[v]
                if BOUNDARY in (cu, cv) or cu != cv or u == v:
                    continue
                if sum(1 for tt in edges if set(edges[tt]) == {u, v}) > 1:
                    continue
                su = 0 if edges[t][0] == u else 1
                iu = rot[u].index((t, su))
                iv = rot[v].index((t, 1 - su))
                spliced = (
                    rot[u][:iu]
                    + rot[v][iv + 1 :]
                    + rot[v][:iv]
                    + rot[u][iu + 1 :]
                )
                for tt in list(edges):
                    a, b = edges[tt]
                    if a == v:
                        a = u
                    if b == v:
                        b = u
                    edges[tt] = (a, b)
                rot[u] = spliced
                del rot[v], colour[v], edges[t]
                changed = True
                break
        return self._replace(colour=colour, edges=edges, rot=rot)

    def _find_face_by_label(self, label):
        for f, lab in self.face_labels().items():
            if lab == label:
                return f
        return None

    def mutate(self, label):
        """Square move at the face carrying the given label, after normalisation."""
        H = self.contract()
        f = H._find_face_by_label(label)
        if f is None:
            raise PlabicError("absent", f"no face labelled {label}")
        if label in H.frozen_labels():
            raise PlabicError("frozen", f"label {label} is frozen")
        cycle = H.faces()[f]
        if len(cycle) != 4:
            raise PlabicError("not-mutable", f"face {label} is not a quadrilateral")
        corners = [H.origin(d) for d in cycle]
        if len(set(corners)) != 4 or any(H.colour[c] == BOUNDARY for c in corners):
            raise PlabicError("not-mutable", f"face {label} is degenerate")
        cols = [H.colour[c] for c in corners]
        if cols[0] == cols[1] or cols[1] == cols[2]:
            raise PlabicError("not-mutable", f"face {label} is not bipartite")

        colour = dict(H.colour)
        edges = dict(H.edges)
        rot = {v: list(r) for v, r in H.rot.items()}
        token = max(edges) + 1
        fresh = max(v for v in rot) + 1

        for pos in range(4):
            v = corners[pos]
            if len(rot[v]) == 3:
                continue
            a = PlabicGraph.twin(cycle[(pos - 1) % 4])
            b = cycle[pos]
            r = rot[v]
            ia = r.index(a)
            ordered = r[ia:] + r[:ia]
            rest = ordered[2:]
            v2 = fresh
            fresh += 1
            colour[v2] = colour[v]
            edges[token] = (v, v2)
            rot[v] = [a, b, (token, 0)]
            rot[v2] = [(token, 1)] + rest
            for d in rest:
                t, s = d
                u1, u2 = edges[t]
                edges[t] = (v2 if u1 == v and s == 0 else u1, v2 if u2 == v and s == 1 else u2)
            token += 1

        for v in corners:
            colour[v] = _other(colour[v])
        out = PlabicGraph(H.n, H.k, colour, edges, rot, H.boundary).contract()
        return out

    def apply_move(self, move):
        """Apply one of the local moves M1/M2/M3, checking its preconditions."""
        kind = move.kind
        if kind == "M1":
            return self._move_square(move.site)
        if kind == "M2-contract":
            return self._move_contract(move.site)
        if kind == "M2-uncontract":
            return self._move_uncontract(move.site, move.params)
        if kind == "M3-insert":
            return self._move_insert(move.site, move.params)
        if kind == "M3-remove":
            return self._move_remove(move.site)
        raise PlabicError("invalid-move", f"unknown move kind {kind}")

    def _move_square(self, label):
        f = self._find_face_by_label(label)
        if f is None:
            raise PlabicError("absent", f"no face labelled {label}")
        cycle = self.faces()[f]
        if len(cycle) != 4:
            raise PlabicError("precondition", "square move needs a quadrilateral face")
        corners = [self.origin(d) for d in cycle]
        cols = [self.colour[c] for c in corners]
        if any(c == BOUNDARY for c in cols) or cols[0] != cols[2] or cols[1] != cols[3] or cols[0] == cols[1]:
            raise PlabicError("precondition", "square move needs a bipartite face")
        if any(self.degree(c) != 3 for c in corners):
            raise PlabicError("precondition", "square move needs degree-3 corners")
        colour = dict(self.colour)
        for c in corners:
            colour[c] = _other(colour[c])
        return self._replace(colour=colour)

    def _move_contract(self, site):
        u, v = site
        tokens = [t for t, e in self.edges.items() if set(e) == {u, v}]
        if not tokens:
            raise PlabicError("absent", f"no edge {site}")
        if self.colour.get(u) != self.colour.get(v) or self.colour[u] in (BOUNDARY,):
            raise PlabicError("precondition", "contraction needs a unicoloured inner edge")
        if self.degree(u) + self.degree(v) - 2 < 2:
            raise PlabicError("precondition", "contraction would produce a leaf")
        if len(tokens) > 1:
            raise PlabicError("precondition", "contraction of a doubled edge")
        t = tokens[0]
        edges = dict(self.edges)
        rot = {w: list(r) for w, r in self.rot.items()}
        colour = dict(self.colour)
        su = 0 if edges[t][0] == u else 1
        iu = rot[u].index((t, su))
        iv = rot[v].index((t, 1 - su))
        rot[u] = rot[u][:iu] + rot[v][iv + 1 :] + rot[v][:iv] + rot[u][iu + 1 :]
        for tt in list(edges):
            a, b = edges[tt]
            edges[tt] = (u if a == v else a, u if b == v else b)
        del rot[v], colour[v], edges[t]
        return self._replace(colour=colour, edges=edges, rot=rot)

    def _move_uncontract(self, site, params):
        v = site
        if self.colour.get(v) in (BOUNDARY, None):
            raise PlabicError("precondition", "can only uncontract an inner vertex")
        first, count = params
        r = list(self.rot[v])
        if not (1 <= count <= len(r) - 1):
            raise PlabicError("precondition", "uncontraction would produce a leaf")
        i = r.index(tuple(first))
        keep = (r + r)[i : i + count]
        rest = (r + r)[i + count : i + len(r)]
        edges = dict(self.edges)
        rot = {w: list(rr) for w, rr in self.rot.items()}
        colour = dict(self.colour)
        token = max(edges) + 1
        v2 = max(rot) + 1
        colour[v2] = colour[v]
        edges[token] = (v, v2)
        rot[v] = keep + [(token, 0)]
        rot[v2] = [(token, 1)] + rest
        for d in rest:
            t, s = d
            a, b = edges[t]
            edges[t] = (v2 if (s == 0 and a == v) else a, v2 if (s == 1 and b == v) else b)
        return self._replace(colour=colour, edges=edges, rot=rot)

    def _move_insert(self, site, params):
        u, v = site
        new_colour = params
        tokens = [t for t, e in self.edges.items() if set(e) == {u, v}]
        if not tokens:
            raise PlabicError("absent", f"no edge {site}")
        t = tokens[0]
        if self.colour[u] == BOUNDARY and self.colour[v] == BOUNDARY:
            raise PlabicError("precondition", "cannot subdivide a boundary cycle edge")
        edges = dict(self.edges)
        rot = {x: list(r) for x, r in self.rot.items()}
        colour = dict(self.colour)
        w = max(rot) + 1
        t1 = max(edges) + 1
        t2 = t1 + 1
        a, b = edges[t]
        edges[t1] = (a, w)
        edges[t2] = (w, b)
        rot[a][rot[a].index((t, 0))] = (t1, 0)
        rot[b][rot[b].index((t, 1))] = (t2, 1)
        rot[w] = [(t1, 1), (t2, 0)]
        colour[w] = new_colour
        del edges[t]
        return self._replace(colour=colour, edges=edges, rot=rot)

    def _move_remove(self, site):
        v = site
        if self.colour.get(v) in (BOUNDARY, None) or self.degree(v) != 2:
            raise PlabicError("precondition", "removal needs an inner degree-2 vertex")
        (t1, s1), (t2, s2) = self.rot[v]
        w1 = self.edges[t1][1 - s1]
        w2 = self.edges[t2][1 - s2]
        if self.colour[w1] == BOUNDARY and self.colour[w2] == BOUNDARY:
            raise PlabicError("precondition", "both neighbours are boundary vertices")
        if w1 == w2:
            raise PlabicError("precondition", "removal would create a loop")
        edges = dict(self.edges)
        rot = {x: list(r) for x, r in self.rot.items()}
        colour = dict(self.colour)
        t = max(edges) + 1
        edges[t] = (w1, w2)
        rot[w1][rot[w1].index((t1, 1 - s1))] = (t, 0)
        rot[w2][rot[w2].index((t2, 1 - s2))] = (t, 1)
        del edges[t1], edges[t2], rot[v], colour[v]
        return self._replace(colour=colour, edges=edges, rot=rot)

    # -- dihedral action ---------------------------------------------------------

    def dihedral_act(self, g):
        """Relabel (rotations) or mirror-and-relabel (reflections) per the action."""
        if g.n != self.n:
            raise PlabicError("precondition", "dihedral element has wrong n")
        if not g.reflected:
            m = g.shift
            boundary = tuple(
                self.boundary[(j - m) % self.n] for j in range(self.n)
            )
            return self._replace(boundary=boundary)
        lam = sigma(self.n, self.k) * g
        rot = {v: tuple(reversed(r)) for v, r in self.rot.items()}
        boundary = [None] * self.n
        for i, v in enumerate(self.boundary, start=1):
            boundary[lam(i) - 1] = v
        return self._replace(rot=rot, boundary=tuple(boundary))

    def orbit(self):
        """Distinct label collections under the 2n dihedral elements."""
        seen = {}
        for g in dihedral_group(self.n):
            C = self.dihedral_act(g).label_collection()
            seen.setdefault(C, g)
        return sorted(seen, key=lambda C: sorted(C))

    def stabilizer(self):
        base = self.label_collection()
        return [
            g for g in dihedral_group(self.n)
            if self.dihedral_act(g).label_collection() == base
        ]


class Move:
    """A local move: kind, a site (face label / edge / vertex), optional params."""

    __slots__ = ("kind", "site", "params")

    def __init__(self, kind, site, params=None):
        self.kind = kind
        self.site = site
        self.params = params


# -- family builders ----------------------------------------------------------


def _assemble(n, k, grid_colour, grid_pos, grid_edges, attach_order, attach_dir, first_label):
    """Build a PlabicGraph from a drawn grid.

    attach_order lists grid vertices in clockwise order of their boundary
    attachments; the first entry receives boundary label first_label.
    Rotations of inner vertices are computed from positions (clockwise =
    decreasing angle); boundary rotations are (next, inner, previous).
    """
    ids = {}
    next_id = n + 1
    for key in sorted(grid_colour):
        ids[key] = next_id
        next_id += 1

    colour = {ids[key]: c for key, c in grid_colour.items()}
    edges = {}
    token = 0
    incident = {ids[key]: [] for key in grid_colour}
    for a, b in grid_edges:
        edges[token] = (ids[a], ids[b])
        incident[ids[a]].append(((token, 0), grid_pos[b], grid_pos[a]))
        incident[ids[b]].append(((token, 1), grid_pos[a], grid_pos[b]))
        token += 1

    boundary = [None] * n
    battach = {}
    for idx, key in enumerate(attach_order):
        label = (first_label - 1 + idx) % n + 1
        boundary[label - 1] = label
        battach[label] = key
    for label in range(1, n + 1):
        key = battach[label]
        edges[token] = (label, ids[key])
        dx, dy = attach_dir[key]
        px, py = grid_pos[key]
        incident[ids[key]].append(((token, 1), (px + dx, py + dy), (px, py)))
        battach[label] = (token, 0)
        token += 1

    cycle_darts = {}
    for label in range(1, n + 1):
        nxt = label % n + 1
        edges[token] = (label, nxt)
        cycle_darts[(label, nxt)] = (token, 0)
        cycle_darts[(nxt, label)] = (token, 1)
        token += 1

    rot = {}
    for key in grid_colour:
        v = ids[key]
        def angle(entry):
            (_, (qx, qy), (px, py)) = entry
            return -atan2(qy - py, qx - px)
        rot[v] = tuple(d for d, _, _ in sorted(incident[v], key=angle))
    for label in range(1, n + 1):
        colour[label] = BOUNDARY
        nxt = label % n + 1
        prv = (label - 2) % n + 1
        rot[label] = (cycle_darts[(label, nxt)], battach[label], cycle_darts[(label, prv)])

    return PlabicGraph(n, k, colour, edges, rot, list(range(1, n + 1)))


def _check_range(k, n):
    if not 2 <= k <= n - 2:
        raise PlabicError("invalid-family", f"need 2 <= k <= n-2, got k={k}, n={n}")


def build_rectangle(k, n):
    """The rectangle graph on a 2(n-k) x 2k grid."""
    _check_range(k, n)
    rows, cols = 2 * (n - k), 2 * k
    gc, gp = {}, {}
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            if (i + j) % 2 or (i, j) in ((1, 1), (rows, cols)):
                continue
            gc[(i, j)] = WHITE if i % 2 == 0 else BLACK
            gp[(i, j)] = (j, -i)
    ge = []
    for (i, j), c in gc.items():
        if c != BLACK:
            continue
        for di, dj in ((1, -1), (1, 1), (-1, 1)):
            if (i + di, j + dj) in gc:
                ge.append(((i, j), (i + di, j + dj)))
    attach, adir = [(2, 2)], {(2, 2): (-1, 1)}
    for j in range(3, cols, 2):
        attach.append((1, j))
        adir[(1, j)] = (0, 1)
    for i in range(2, rows - 1, 2):
        attach.append((i, cols))
        adir[(i, cols)] = (1, 0)
    attach.append((rows - 1, cols - 1))
    adir[(rows - 1, cols - 1)] = (1, -1)
    return _assemble(n, k, gc, gp, ge, attach, adir, first_label=1)


def build_checkboard(k, n):
    """The checkboard graph on an (n-k) x k grid of squares."""
    _check_range(k, n)
    rows, cols = n - k, k
    gc = {(i, j): WHITE if (i + j) % 2 == 0 else BLACK
          for i in range(1, rows + 1) for j in range(1, cols + 1)}
    gp = {key: (key[1], -key[0]) for key in gc}
    ge = []
    for (i, j) in gc:
        if (i + 1, j) in gc:
            ge.append(((i, j), (i + 1, j)))
        if (i, j + 1) in gc:
            ge.append(((i, j), (i, j + 1)))
    attach, adir = [], {}
    for j in range(1, cols + 1):
        if gc[(1, j)] == BLACK:
            attach.append((1, j))
            adir[(1, j)] = (0, 1)
    for i in range(1, rows + 1):
        if gc[(i, cols)] == WHITE:
            attach.append((i, cols))
            adir[(i, cols)] = (1, 0)
    for j in range(cols, 0, -1):
        if gc[(rows, j)] == BLACK:
            attach.append((rows, j))
            adir[(rows, j)] = (0, -1)
    for i in range(rows, 0, -1):
        if gc[(i, 1)] == WHITE:
            attach.append((i, 1))
            adir[(i, 1)] = (-1, 0)
    if len(attach) != n:
        raise PlabicError("invalid-family", "attachment count mismatch")
    # the top-left white vertex is attached last and receives label n
    return _assemble(n, k, gc, gp, ge, attach, adir, first_label=1)


def build_dual(G, k, n):
    """Colour-inverted, boundary-rotated graph whose labels are complements.

    The input must have trip permutation i -> i+(n-k); the output has trip
    permutation i -> i+k and face labels complementary to the input's.
    """
    if G.n != n or G.k != n - k:
        raise PlabicError("wrong-trip-type", "dual construction needs trip type pi_{n-k,n}")
    colour = {
        v: (_other(c) if c in (BLACK, WHITE) else c) for v, c in G.colour.items()
    }
    boundary = tuple(G.boundary[(j - k) % n] for j in range(n))
    return PlabicGraph(n, k, colour, G.edges, G.rot, boundary)


def build_dual_rectangle(k, n):
    _check_range(k, n)
    return build_dual(build_rectangle(n - k, n), k, n)


def build_dual_checkboard(k, n):
    _check_range(k, n)
    return build_dual(build_checkboard(n - k, n), k, n)


FAMILY_BUILDERS = {
    "rec": build_rectangle,
    "ch": build_checkboard,
    "dual-rec": build_dual_rectangle,
    "dual-ch": build_dual_checkboard,
}


def build_family(family, k, n):
    if family not in FAMILY_BUILDERS:
        raise PlabicError("invalid-family", f"unknown family {family!r}")
    return FAMILY_BUILDERS[family](k, n)


# -- closed label formulas (used as oracles and for grid bookkeeping) -----------


def rectangle_label(i, j, k, n):
    """Label of the rectangle-graph face in row i, column j (0-extended grid)."""
    left = set(range(i + 1, i + j + 1))
    right = set(range(n - k + j + 1, n + 1))
    return KSubset(n, left | right)


def checkboard_label(i, j, k, n):
    """Label of the checkboard-graph face in row i, column j (0-extended grid)."""
    shift = sigma(n, -((i + j + 1) // 2))
    return shift.apply(rectangle_label(i, j, k, n))


def dual_rectangle_label(i, j, k, n):
    left = set(range(1, i + 1))
    right = set(range(i + j + 1, k + j + 1))
    return KSubset(n, {(x - 1) % n + 1 for x in (left | right)})


def dual_checkboard_label(i, j, k, n):
    shift = sigma(n, -((i + j + 1) // 2))
    return shift.apply(dual_rectangle_label(i, j, k, n))


def checkboard_right_label(i, j, k, n):
    return checkboard_label(i, j, k, n).complement()


def j_frozen(i, k, n):
    """The frozen right label, the cyclic interval from i+1 of length n-k."""
    return cyclic_interval(i % n + 1, (i + n - k - 1) % n + 1, n)


def j_plus(i, k, n):
    """The shifted right label entering the superpotential numerator."""
    base = cyclic_interval(i % n + 1, (i + n - k - 2) % n + 1, n)
    extra = (i + n - k) % n + 1
    return KSubset(n, set(base.elements) | {extra})
