"""Exact A-seed mutation over the Plucker field of the mirror Grassmannian.

Seeds attach a rational expression to every right label of a plabic graph,
with the frozen variable indexed by the interval [n-k] normalised to 1.
Mutation follows the quiver exchange relation; mutation sequences reaching
prescribed right labels are found either by the closed-form diagonal
sequences of checkboard graphs or by breadth-first search over label
collections.
"""

from __future__ import annotations

import itertools
import os
import random
from collections import deque
from fractions import Fraction

from .expressions import LaurentPoly, RationalExpr
from .plabic import PlabicError, build_checkboard, checkboard_label, j_frozen, j_plus
from .quiver import mutate_quiver, quiver_from_graph
from .subsets import KSubset, dihedral_group

DEFAULT_BUDGET = 12


def search_budget():
    try:
        return int(os.environ.get("PLABICA_BUDGET", DEFAULT_BUDGET))
    except ValueError:
        return DEFAULT_BUDGET


def _var(label):
    return tuple(label.elements)


# -- exact points on the mirror Grassmannian -----------------------------------


def _det(rows):
    """Fraction-free determinant (Bareiss) of a square integer/Fraction matrix."""
    m = [list(r) for r in rows]
    size = len(m)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(size - 1):
        if m[i][i] == 0:
            for r in range(i + 1, size):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, size):
            for c in range(i + 1, size):
                val = m[r][c] * m[i][i] - m[r][i] * m[i][c]
                if isinstance(val, int):
                    m[r][c] = val // prev if prev != 1 else val
                else:
                    m[r][c] = val / prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * m[-1][-1]


class GrassmannPoint:
    """An (n-k) x n exact matrix representing a point of the mirror chart."""

    def __init__(self, matrix, k, n):
        self.k = k
        self.n = n
        self.matrix = tuple(tuple(row) for row in matrix)
        if len(self.matrix) != n - k or any(len(r) != n for r in self.matrix):
            raise ValueError(f"matrix must be {(n - k)} x {n}")
        self._minors = {}

    def minor(self, J):
        """Maximal minor with column set J (a KSubset of size n-k)."""
        if len(J) != self.n - self.k:
            raise ValueError(f"column set must have size {self.n - self.k}")
        key = tuple(J.elements)
        if key not in self._minors:
            cols = [c - 1 for c in J.elements]
            rows = [[row[c] for c in cols] for row in self.matrix]
            self._minors[key] = _det(rows)
        return self._minors[key]

    def frozen_minors_nonzero(self):
        return all(
            self.minor(j_frozen(i, self.k, self.n)) != 0 for i in range(1, self.n + 1)
        )

    def chart_value(self, J):
        """p_J divided by p_{J_n}: the affine chart with the frozen interval at 1."""
        base = self.minor(j_frozen(self.n, self.k, self.n))
        return Fraction(self.minor(J), base)

    def chart_values(self, labels):
        return {_var(J): self.chart_value(J) for J in labels}

    @staticmethod
    def random(k, n, rng=None, bound=9, require_nonzero=()):
        """Random integer matrix with nonvanishing frozen minors."""
        rng = rng or random.Random()
        while True:
            matrix = [
                [rng.randint(-bound, bound) for _ in range(n)] for _ in range(n - k)
            ]
            pt = GrassmannPoint(matrix, k, n)
            if not pt.frozen_minors_nonzero():
                continue
            if any(pt.minor(J) == 0 for J in require_nonzero):
                continue
            return pt


def plucker(point, J):
    return point.minor(J)


# -- combinatorial mutation of label collections --------------------------------


def mutation_pattern(C, I):
    """The square-move data (a, b, c, d) at label I inside collection C, or None.

    Looks for strictly cyclically ordered a, b, c, d with a, c in I and
    b, d outside such that the four exchanged neighbours all belong to C;
    returns (a, b, c, d, I') with I' the new label.
    """
    inside = set(I.elements)
    members = set(C)
    swaps = {}
    for x in I.elements:
        for y in range(1, I.n + 1):
            if y in inside:
                continue
            cand = KSubset(I.n, (inside - {x}) | {y})
            if cand in members:
                swaps.setdefault((x, y), cand)
    xs = sorted({x for x, _ in swaps})
    ys = sorted({y for _, y in swaps})
    results = []
    for a, c in itertools.combinations(xs, 2):
        for b, d in itertools.combinations(ys, 2):
            if not all(p in swaps for p in ((a, b), (a, d), (c, b), (c, d))):
                continue
            low, high = a, c
            inside_arc = [y for y in (b, d) if low < y < high]
            if len(inside_arc) != 1:
                continue
            bb = inside_arc[0]
            dd = d if bb == b else b
            new = KSubset(I.n, (inside - {a, c}) | {b, d})
            results.append((low, bb, high, dd, new))
    if not results:
        return None
    news = {r[4] for r in results}
    if len(news) != 1:
        raise PlabicError("malformed", f"ambiguous mutation pattern at {I}")
    return results[0]


def collection_mutable_labels(C, frozen):
    out = []
    for I in sorted(C):
        if I in frozen:
            continue
        if mutation_pattern(C, I) is not None:
            out.append(I)
    return out


def mutate_collection(C, I):
    pat = mutation_pattern(C, I)
    if pat is None:
        raise PlabicError("not-mutable", f"label {I} admits no square move")
    new = pat[4]
    return frozenset((set(C) - {I}) | {new}), new


def find_mutation_paths(C0, frozen, targets, budget=None):
    """Breadth-first search for collections containing the target left labels.

    Returns a dict target -> list of left labels to mutate, shortest first,
    deterministic via lexicographic tie-breaking.  Raises on budget
    exhaustion with targets still missing.
    """
    budget = search_budget() if budget is None else budget
    remaining = set(targets)
    paths = {}
    start = frozenset(C0)
    for t in list(remaining):
        if t in start:
            paths[t] = []
            remaining.discard(t)
    if not remaining:
        return paths
    seen = {start}
    queue = deque([(start, [])])
    depth_reached = 0
    while queue and remaining:
        node, path = queue.popleft()
        if len(path) >= budget:
            depth_reached = max(depth_reached, len(path))
            continue
        for I in collection_mutable_labels(node, frozen):
            nxt, new_label = mutate_collection(node, I)
            if nxt in seen:
                continue
            seen.add(nxt)
            npath = path + [I]
            for t in list(remaining):
                if t in nxt:
                    paths[t] = npath
                    remaining.discard(t)
            if not remaining:
                return paths
            queue.append((nxt, npath))
    if remaining:
        raise PlabicError(
            "budget",
            f"mutation search exhausted (budget {budget}) with targets missing: "
            f"{sorted(remaining)}",
        )
    return paths


# -- seeds ----------------------------------------------------------------------


class Seed:
    """A quiver on right labels together with cluster variables."""

    __slots__ = ("n", "k", "quiver", "variables")

    def __init__(self, n, k, quiver, variables):
        self.n = n
        self.k = k
        self.quiver = quiver
        self.variables = dict(variables)

    def left_collection(self):
        return frozenset(J.complement() for J in self.variables)

    def variable(self, J):
        if J not in self.variables:
            raise PlabicError("absent", f"no cluster variable labelled {J}")
        return self.variables[J]

    def copy(self):
        return Seed(self.n, self.k, self.quiver, dict(self.variables))


def seed_from_graph(G):
    """The initial seed of a reduced graph: one symbol per right label, p_{J_n} = 1."""
    rights = G.right_labels()
    jn = j_frozen(G.n, G.k, G.n)
    if jn not in rights.labels:
        raise PlabicError("malformed", "frozen label J_n missing from right labels")
    quiver = quiver_from_graph(G).relabel(
        {lab: lab.complement() for lab in G.label_collection()}
    )
    variables = {}
    for J in rights:
        variables[J] = RationalExpr.const(1) if J == jn else RationalExpr.var(_var(J))
    return Seed(G.n, G.k, quiver, variables)


def exchange_products(seed, w):
    """The two products of the exchange relation at mutable vertex w."""
    into = seed.quiver.arrows_into(w)
    out = seed.quiver.arrows_out_of(w)
    prod_in = RationalExpr.const(1)
    for u, m in sorted(into.items()):
        for _ in range(m):
            prod_in = prod_in * seed.variables[u]
    prod_out = RationalExpr.const(1)
    for v, m in sorted(out.items()):
        for _ in range(m):
            prod_out = prod_out * seed.variables[v]
    return prod_in, prod_out


def mutate_seed(seed, w):
    """A-seed mutation in direction of the right label w."""
    if w not in seed.variables:
        raise PlabicError("absent", f"no seed vertex labelled {w}")
    if seed.quiver.frozen.get(w):
        raise PlabicError("frozen", f"seed vertex {w} is frozen")
    left = w.complement()
    pat = mutation_pattern(seed.left_collection(), left)
    if pat is None:
        raise PlabicError("not-mutable", f"vertex {w} is not mutable")
    new_left = pat[4]
    new_right = new_left.complement()
    prod_in, prod_out = exchange_products(seed, w)
    new_var = (prod_in + prod_out) / seed.variables[w]
    quiver = mutate_quiver(seed.quiver, w).relabel({w: new_right})
    variables = {v: e for v, e in seed.variables.items() if v != w}
    variables[new_right] = new_var
    return Seed(seed.n, seed.k, quiver, variables)


def replay_path(seed, left_labels):
    """Mutate the seed along a path given by left labels."""
    for I in left_labels:
        seed = mutate_seed(seed, I.complement())
    return seed


def express_plucker(G, J, budget=None):
    """A Laurent expression for the Plucker coordinate p_J in the seed of G.

    Depth-0 when J is already a right label of G; otherwise the label
    collection is searched breadth-first for a graph containing J and the
    chain of exchange relations is pulled back.
    """
    if len(J) != G.n - G.k:
        raise PlabicError("precondition", f"target must have size {G.n - G.k}")
    seed = seed_from_graph(G)
    if J in seed.variables:
        return seed.variables[J]
    target_left = J.complement()
    frozen = set(G.frozen_labels())
    paths = find_mutation_paths(G.label_collection().labels, frozen, [target_left], budget)
    final = replay_path(seed, paths[target_left])
    return final.variables[J]


# -- diagonal sequences on checkboard graphs --------------------------------------


def _inner_positions(k, n):
    return [(i, j) for i in range(1, n - k) for j in range(1, k)]


def diagonal_sequence(kind, d, k, n):
    """Mutation order along checkboard grid diagonals (grid positions).

    Downward: all faces with i-j = d+1 top to bottom, then i-j = d top to
    bottom.  Upward: i-j = d-1 first, then i-j = d bottom to top.  Only even
    d in {2-k, ..., n-k-2} is allowed.
    """
    if d % 2 != 0:
        raise PlabicError("precondition", f"diagonal index {d} must be even")
    if not (2 - k <= d <= n - k - 2):
        raise PlabicError("precondition", f"diagonal index {d} out of range")
    cells = _inner_positions(k, n)

    def diag(dd, reverse=False):
        row = sorted([c for c in cells if c[0] - c[1] == dd])
        return list(reversed(row)) if reverse else row

    if kind == "down":
        return diag(d + 1) + diag(d)
    if kind == "up":
        return diag(d - 1) + diag(d, reverse=True)
    raise PlabicError("precondition", f"unknown sequence kind {kind!r}")


def checkboard_target_plans(k, n):
    """How to surface each numerator label J_i^+ starting from the checkboard.

    Returns a dict i -> list of grid positions to mutate (empty when the
    label is already present).
    """
    plans = {}
    plans[(k // 2) % n or n] = []
    plans[((n + k) // 2) % n or n] = []
    if k % 2:
        plans[-(-k // 2) % n or n] = [(1, k - 1)]
    if (n - k) % 2:
        plans[(-(-(n + k) // 2)) % n or n] = [(n - k - 1, 1)]
    for d in range(2 - k, n - k - 1):
        if d % 2:
            continue
        plans[(k + d // 2 - 1) % n + 1] = diagonal_sequence("down", d, k, n)
        plans[(n - d // 2 - 1) % n + 1] = diagonal_sequence("up", d, k, n)
    if sorted(plans) != list(range(1, n + 1)):
        raise PlabicError("malformed", f"diagonal plans do not cover [n]: {sorted(plans)}")
    return plans


def _recognize_checkboard_rotation(G):
    """The dihedral rotation g with labels(G) = g(labels of the checkboard), if any."""
    base = build_checkboard(G.k, G.n).label_collection()
    mine = G.label_collection()
    for g in dihedral_group(G.n):
        if g.reflected:
            continue
        if g.apply_collection(base) == mine:
            return g
    return None


def superpotential_terms(G, budget=None):
    """The map i -> W_i = p_{J_i^+} / p_{J_i} expressed in the seed of G.

    Checkboard rotations use the closed diagonal sequences; any other
    reduced graph falls back to breadth-first search over the mutation
    graph.
    """
    n, k = G.n, G.k
    seed0 = seed_from_graph(G)
    numerators = {}
    rotation = _recognize_checkboard_rotation(G)
    if rotation is not None:
        plans = checkboard_target_plans(k, n)
        for i, positions in plans.items():
            target = j_plus((i + rotation.shift - 1) % n + 1, k, n)
            path = [
                rotation.apply(checkboard_label(p[0], p[1], k, n)) for p in positions
            ]
            final = replay_path(seed0.copy(), path) if path else seed0
            numerators[(i + rotation.shift - 1) % n + 1] = final.variable(target)
    else:
        targets = {i: j_plus(i, k, n) for i in range(1, n + 1)}
        frozen = set(G.frozen_labels())
        paths = find_mutation_paths(
            G.label_collection().labels,
            frozen,
            [t.complement() for t in targets.values()],
            budget,
        )
        for i, target in targets.items():
            final = replay_path(seed0.copy(), paths[target.complement()])
            numerators[i] = final.variable(target)
    terms = {}
    for i in range(1, n + 1):
        denom = seed0.variable(j_frozen(i, k, n))
        terms[i] = numerators[i] / denom
    return terms


def superpotential(G, budget=None):
    """W = sum of W_i q^{delta(i,k)} as a single rational expression."""
    terms = superpotential_terms(G, budget)
    q = RationalExpr.var("q")
    total = RationalExpr.const(0)
    for i in range(1, G.n + 1):
        total = total + (terms[i] * q if i == G.k else terms[i])
    return total


def evaluate_on_point(expr, point):
    """Exact evaluation of a seed expression at a Grassmann point (chart values)."""
    variables = expr.num.variables() | expr.den.variables()
    values = {}
    for v in variables:
        if v == "q":
            raise ValueError("expression still contains the quantum variable")
        values[v] = point.chart_value(KSubset(point.n, v))
    return expr.eval(values)


# -- closed superpotential formulas for the five checkboard families ---------------


CLOSED_FORM_FAMILIES = ("ch-base", "ch-rot", "ch-refl", "dual-ch-rot", "dual-ch-refl")


def base_reflection(n):
    """The reflection x -> n+1-x used in the closed formulas."""
    from .subsets import DihedralElement

    return DihedralElement(n, n - 1, True)


def family_member(family, m, k, n):
    """The graph whose superpotential the closed formula describes."""
    from .plabic import build_dual_checkboard
    from .subsets import sigma

    s = sigma(n, m)
    rho = base_reflection(n)
    if family == "ch-base":
        return build_checkboard(k, n)
    if family == "ch-rot":
        return build_checkboard(k, n).dihedral_act(s)
    if family == "ch-refl":
        return build_checkboard(k, n).dihedral_act(s * rho)
    if family == "dual-ch-rot":
        return build_dual_checkboard(k, n).dihedral_act(s)
    if family == "dual-ch-refl":
        return build_dual_checkboard(k, n).dihedral_act(s * rho)
    raise PlabicError("invalid-family", f"unknown closed-form family {family!r}")


def closed_form_grid(family, m, k, n):
    """Plucker labels on the extended face grid of the family member.

    Rotations inherit the member's own grid; reflections transpose it, so
    the diagonals of the summation run along a+b instead of a-b.
    Returns (labels, imax, jmax).
    """
    from .plabic import dual_checkboard_label
    from .subsets import sigma

    s = sigma(n, m)
    rho = base_reflection(n)
    if family in ("ch-base", "ch-rot"):
        g, imax, jmax = s, n - k, k
        lab = lambda i, j: checkboard_label(i, j, k, n).complement()
    elif family == "ch-refl":
        g, imax, jmax = s * rho, k, n - k
        lab = lambda i, j: checkboard_label(j, i, k, n).complement()
    elif family == "dual-ch-rot":
        g, imax, jmax = s, k, n - k
        lab = lambda i, j: dual_checkboard_label(i, j, k, n).complement()
    elif family == "dual-ch-refl":
        g, imax, jmax = s * rho, n - k, k
        lab = lambda i, j: dual_checkboard_label(j, i, k, n).complement()
    else:
        raise PlabicError("invalid-family", f"unknown closed-form family {family!r}")
    labels = {
        (i, j): g.apply(lab(i, j))
        for i in range(imax + 1)
        for j in range(jmax + 1)
    }
    return labels, imax, jmax


def _delta(m, value, n):
    return 1 if (m - value) % n == 0 else 0


def _epsilon(family, m, d, n, k):
    """Exponent of q on the diagonal-d summand, arguments taken modulo n."""
    if family in ("ch-base",):
        return 1 if d == 0 else 0
    if family == "ch-rot":
        even = _delta(m, -d // 2, n) if d % 2 == 0 else 0
        odd = _delta(m, (d + 1) // 2 + k, n) if d % 2 else 0
        return even + odd
    if family == "ch-refl":
        even = _delta(m, d // 2, n) if d % 2 == 0 else 0
        odd = _delta(m, -((d + 1) // 2), n) if d % 2 else 0
        return even + odd
    if family == "dual-ch-rot":
        even = _delta(m, -d // 2, n) if d % 2 == 0 else 0
        odd = _delta(m, (d + 1) // 2, n) if d % 2 else 0
        return even + odd
    if family == "dual-ch-refl":
        even = _delta(m, d // 2 + k, n) if d % 2 == 0 else 0
        odd = _delta(m, -((d + 1) // 2), n) if d % 2 else 0
        return even + odd
    raise PlabicError("invalid-family", family)


def closed_form_W(family, m, k, n):
    """The displayed closed superpotential formula, assembled symbolically.

    The two standalone terms sit at grid corners: at y(1,k-1)/y(0,k) and
    y(n-k-1,1)/y(n-k,0) for the families summing along i-j diagonals, and at
    y(1,1)/y(0,0) and y(k-1,n-k-1)/y(k,n-k) for those summing along i+j.
    """
    if family not in CLOSED_FORM_FAMILIES:
        raise PlabicError("invalid-family", f"unknown closed-form family {family!r}")
    if not 2 <= k <= n - 2:
        raise PlabicError("invalid-family", f"need 2 <= k <= n-2, got k={k}, n={n}")
    if family == "ch-base":
        m = 0
    labels, imax, jmax = closed_form_grid(family, m, k, n)
    jn = j_frozen(n, k, n)

    def y(i, j):
        if not (0 <= i <= imax and 0 <= j <= jmax):
            return None
        L = labels[(i, j)]
        if L == jn:
            return RationalExpr.const(1)
        return RationalExpr.var(_var(L))

    q = RationalExpr.var("q")

    def with_q(expr, e):
        return expr * q if e == 1 else (expr * q * q if e == 2 else expr)

    type_a = family in ("ch-base", "ch-rot", "dual-ch-refl")
    total = RationalExpr.const(0)

    if type_a:
        corner1 = y(1, k - 1) / y(0, k)
        corner2 = y(n - k - 1, 1) / y(n - k, 0)
        if family == "ch-base":
            d1 = d2 = 0
        elif family == "ch-rot":
            d1 = _delta(m, -(-k // 2), n)
            d2 = _delta(m, -(-(n + k) // 2), n)
        else:
            d1 = _delta(m, k // 2, n)
            d2 = _delta(m, (n + k) // 2, n)
        drange = range(1 - k, n - k - 1)
    else:
        corner1 = y(1, 1) / y(0, 0)
        corner2 = y(k - 1, n - k - 1) / y(k, n - k)
        d1 = _delta(m, 0, n)
        d2 = _delta(m, n // 2, n) if family == "ch-refl" else _delta(m, -(-n // 2), n)
        drange = range(1, n - 1)

    total = total + with_q(corner1, d1) + with_q(corner2, d2)

    for d in drange:
        summand = RationalExpr.const(0)
        hit = False
        for a in range(imax + 1):
            b = a - d if type_a else d - a
            for quad, shape in (
                (((a, b + 1), (a + 1, b - 1), (a, b), (a + 1, b)), "A"),
                (((a - 1, b), (a + 1, b - 1), (a, b - 1), (a, b)), "A"),
            ) if type_a else (
                (((a, b - 1), (a + 1, b + 1), (a, b), (a + 1, b)), "B"),
                (((a - 1, b), (a + 1, b + 1), (a, b), (a, b + 1)), "B"),
            ):
                vs = [y(p[0], p[1]) for p in quad]
                if any(v is None for v in vs):
                    continue
                summand = summand + vs[0] * vs[1] / (vs[2] * vs[3])
                hit = True
        if hit:
            total = total + with_q(summand, _epsilon(family, m, d, n, k))
    return total
