"""Exact sparse arithmetic in Plucker variables.

A :class:`LaurentPoly` is a dict from monomials to integer coefficients,
where a monomial is a sorted tuple of (variable, exponent) pairs with
nonzero integer exponents.  Variables are hashable tokens: a Plucker
variable is the sorted tuple of its index set, and the auxiliary quantum
variable is the string "q".

Division is multivariate long division over the rationals and is only
offered where the quotient is again a Laurent polynomial; that is exactly
the situation of cluster exchange relations, whose quotients are Laurent
with positive integer coefficients, so no polynomial gcd machinery is
needed anywhere.
"""

from __future__ import annotations

from fractions import Fraction

Q_VAR = "q"


def _var_key(v):
    # total order across label tuples and the quantum variable
    if v == Q_VAR:
        return (1, ())
    return (0, tuple(v))


def _mono(pairs):
    return tuple(sorted(((v, e) for v, e in pairs if e != 0), key=lambda p: _var_key(p[0])))


def _mono_mul(m1, m2):
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return _mono(d.items())


def _mono_div(m1, m2):
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) - e
    return _mono(d.items())


def _mono_key(m):
    # graded-lex style key for long division; any multiplicative total order works
    return (sum(e for _, e in m), tuple((_var_key(v), e) for v, e in m))


class LaurentPoly:
    """Sparse Laurent polynomial with exact integer (or Fraction) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for m, c in (terms.items() if isinstance(terms, dict) else terms):
                if c:
                    t[m] = t.get(m, 0) + c
                    if not t[m]:
                        del t[m]
        object.__setattr__(self, "terms", t)

    def __setattr__(self, *args):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(c):
        return LaurentPoly({(): c} if c else {})

    @staticmethod
    def var(v, exp=1):
        return LaurentPoly({_mono([(v, exp)]): 1})

    @staticmethod
    def monomial(pairs, coeff=1):
        return LaurentPoly({_mono(pairs): coeff})

    # -- structure ------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=_mono_key):
            c = self.terms[m]
            mono = "*".join(
                f"{'q' if v == Q_VAR else 'p' + ''.join(map(str, v))}^{e}" if e != 1
                else ("q" if v == Q_VAR else "p" + "".join(map(str, v)))
                for v, e in m
            )
            bits.append(f"{c}" if not mono else (f"{c}*{mono}" if c != 1 else mono))
        return " + ".join(bits)

    def variables(self):
        vs = set()
        for m in self.terms:
            vs.update(v for v, _ in m)
        return vs

    def is_monomial(self):
        return len(self.terms) == 1

    def has_positive_coeffs(self):
        return all(c > 0 for c in self.terms.values())

    def coefficients_are_integers(self):
        return all(
            isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1)
            for c in self.terms.values()
        )

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
            if not t[m]:
                del t[m]
        return LaurentPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({m: c * other for m, c in self.terms.items()})
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
                if not t[m]:
                    del t[m]
        return LaurentPoly(t)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers: use exact_div against a monomial")
        out = LaurentPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def exact_div(self, other):
        """Exact quotient self / other, raising if it is not Laurent.

        Both operands are shifted into honest polynomials over the union of
        their variables and divided by leading terms under graded lex, which
        is multiplicative, so for an exact quotient the remainder is always a
        multiple of the divisor and the loop terminates at zero.
        """
        if not other:
            raise ZeroDivisionError("division by the zero expression")
        if not self:
            return LaurentPoly()
        if len(other.terms) == 1:
            ((m2, c2),) = other.terms.items()
            t = {}
            for m, c in self.terms.items():
                q = Fraction(c, c2) if c % c2 else c // c2
                t[_mono_div(m, m2)] = q
            out = LaurentPoly(t)
            if not out.coefficients_are_integers():
                raise ArithmeticError("quotient is not integral")
            return LaurentPoly({m: int(c) for m, c in out.terms.items()})

        variables = sorted(self.variables() | other.variables(), key=_var_key)
        vidx = {v: i for i, v in enumerate(variables)}
        nv = len(variables)

        def dense(poly):
            out = {}
            for m, c in poly.terms.items():
                row = [0] * nv
                for v, e in m:
                    row[vidx[v]] = e
                out[tuple(row)] = c
            return out

        da, db = dense(self), dense(other)
        # shift so that divisor, dividend and (for exact division) the
        # quotient are all honest polynomials: min_v(Q) = min_v(A) - min_v(B)
        min_a = [min(m[i] for m in da) for i in range(nv)]
        min_b = [min(m[i] for m in db) for i in range(nv)]
        shift_b = tuple(max(0, -mb) for mb in min_b)
        shift_a = tuple(
            max(0, mb + sb - ma) for ma, mb, sb in zip(min_a, min_b, shift_b)
        )
        da = {tuple(x + s for x, s in zip(m, shift_a)): c for m, c in da.items()}
        db = {tuple(x + s for x, s in zip(m, shift_b)): c for m, c in db.items()}

        def key(m):
            return (sum(m), m)

        lead_b = max(db, key=key)
        cb = db[lead_b]
        rem = {m: Fraction(c) for m, c in da.items()}
        quot = {}
        while rem:
            lead_r = max(rem, key=key)
            t_mono = tuple(a - b for a, b in zip(lead_r, lead_b))
            if any(x < 0 for x in t_mono):
                raise ArithmeticError("not an exact quotient")
            t_coeff = rem[lead_r] / cb
            quot[t_mono] = quot.get(t_mono, 0) + t_coeff
            for m, c in db.items():
                mm = tuple(a + b for a, b in zip(m, t_mono))
                rem[mm] = rem.get(mm, 0) - t_coeff * c
                if not rem[mm]:
                    del rem[mm]
        unshift = tuple(b - a for a, b in zip(shift_a, shift_b))
        result = {}
        for m, c in quot.items():
            if c.denominator != 1:
                raise ArithmeticError("quotient has non-integer coefficients")
            pairs = [(variables[i], m[i] + unshift[i]) for i in range(nv)]
            result[_mono(pairs)] = int(c)
        return LaurentPoly(result)

    # -- evaluation and inspection ----------------------------------------

    def eval(self, values):
        """Exact evaluation; values maps variables to Fractions or ints."""
        total = Fraction(0)
        for m, c in self.terms.items():
            term = Fraction(c)
            for v, e in m:
                term *= Fraction(values[v]) ** e
            total += term
        return total

    def exponent_vectors(self, variable_order):
        """Integer exponent rows of each monomial in a fixed variable order."""
        idx = {v: i for i, v in enumerate(variable_order)}
        rows = []
        for m in sorted(self.terms, key=_mono_key):
            row = [0] * len(variable_order)
            for v, e in m:
                if v not in idx:
                    raise KeyError(f"monomial mentions unknown variable {v}")
                row[idx[v]] = e
            rows.append(tuple(row))
        return rows

    def to_json(self):
        out = []
        for m in sorted(self.terms, key=_mono_key):
            exps = {}
            for v, e in m:
                key = "q" if v == Q_VAR else ",".join(map(str, v))
                exps[key] = e
            out.append({"coeff": str(self.terms[m]), "exps": exps})
        return out

    @staticmethod
    def from_json(data):
        terms = {}
        for item in data:
            pairs = []
            for key, e in item["exps"].items():
                v = Q_VAR if key == "q" else tuple(int(x) for x in key.split(","))
                pairs.append((v, e))
            terms[_mono(pairs)] = int(item["coeff"])
        return LaurentPoly(terms)


class RationalExpr:
    """A reduced fraction of Laurent polynomials.

    Reduction prefers the Laurent normal form: whenever the denominator
    divides the numerator exactly the fraction collapses to denominator 1,
    and monomial denominators are folded into the numerator's exponents.
    Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, int):
            num = LaurentPoly.const(num)
        if den is None:
            den = LaurentPoly.const(1)
        if isinstance(den, int):
            den = LaurentPoly.const(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        num, den = self._reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @staticmethod
    def _reduce(num, den):
        if not num:
            return num, LaurentPoly.const(1)
        try:
            return num.exact_div(den), LaurentPoly.const(1)
        except ArithmeticError:
            pass
        if len(den.terms) == 1:
            # fold the monomial part into the numerator, keep integer content
            ((m, c),) = den.terms.items()
            shifted = LaurentPoly({_mono_div(mm, m): cc for mm, cc in num.terms.items()})
            from math import gcd

            g = 0
            for cc in shifted.terms.values():
                g = gcd(g, cc)
            g = gcd(g, c)
            sign = -1 if c < 0 else 1
            num2 = LaurentPoly({mm: sign * cc // g for mm, cc in shifted.terms.items()})
            return num2, LaurentPoly.const(sign * c // g)
        return num, den

    def __setattr__(self, *args):
        raise AttributeError("RationalExpr is immutable")

    @staticmethod
    def var(v):
        return RationalExpr(LaurentPoly.var(v))

    @staticmethod
    def const(c):
        return RationalExpr(LaurentPoly.const(c))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, int):
            other = RationalExpr.const(other)
        if not isinstance(other, RationalExpr):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RationalExpr is not hashable; compare with ==")

    def __repr__(self):
        if self.den == LaurentPoly.const(1):
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"

    def __add__(self, other):
        if isinstance(other, int):
            other = RationalExpr.const(other)
        return RationalExpr(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalExpr(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, int):
            other = RationalExpr.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = RationalExpr.const(other)
        return RationalExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = RationalExpr.const(other)
        if not other.num:
            raise ZeroDivisionError("division by zero expression")
        return RationalExpr(self.num * other.den, self.den * other.num)

    def is_laurent(self):
        return len(self.den.terms) == 1

    def laurent(self):
        """The expression as a LaurentPoly; raises if the denominator is not monomial."""
        if not self.is_laurent():
            raise ArithmeticError("expression is not in Laurent form")
        if self.den == LaurentPoly.const(1):
            return self.num
        return self.num.exact_div(self.den)

    def eval(self, values):
        den = self.den.eval(values)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.eval(values) / den

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(data):
        return RationalExpr(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))
