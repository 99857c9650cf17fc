"""Sparse multivariate polynomials over cyclotomic coefficients.

Terms map exponent tuples to nonzero Cyclotomic coefficients; the zero
polynomial has an empty term map.  Includes determinants and maximal minors
of small polynomial matrices.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyclotomic, cyc


def _coerce(value) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    return Cyclotomic.from_rational(Fraction(value))


class MultiPoly:
    __slots__ = ("nvars", "terms", "_lead")

    def __init__(self, nvars: int, terms=None):
        clean = {}
        if terms:
            for exps, coef in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError("exponent vector %r has wrong arity" % (exps,))
                coef = _coerce(coef)
                if not coef.is_zero():
                    if exps in clean:
                        coef = clean[exps] + coef
                        if coef.is_zero():
                            del clean[exps]
                            continue
                    clean[exps] = coef
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_lead", None)

    def __setattr__(self, name, value):
        if name == "_lead":
            object.__setattr__(self, name, value)
            return
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, value, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: _coerce(value)})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "MultiPoly":
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, coef, exps) -> "MultiPoly":
        exps = tuple(exps)
        return cls(len(exps), {exps: _coerce(coef)})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def coefficient(self, exps) -> Cyclotomic:
        return self.terms.get(tuple(exps), Cyclotomic.from_rational(0))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError("arity mismatch: %d vs %d" % (self.nvars, other.nvars))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = MultiPoly.constant(other, self.nvars)
        self._check(other)
        terms = dict(self.terms)
        for exps, coef in other.terms.items():
            if exps in terms:
                s = terms[exps] + coef
                if s.is_zero():
                    del terms[exps]
                else:
                    terms[exps] = s
            else:
                terms[exps] = coef
        out = MultiPoly(self.nvars, {})
        object.__setattr__(out, "terms", terms)
        return out

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = MultiPoly.constant(other, self.nvars)
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            scalar = _coerce(other)
            if scalar.is_zero():
                return MultiPoly.zero(self.nvars)
            return MultiPoly(self.nvars, {e: c * scalar for e, c in self.terms.items()})
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                if exps in terms:
                    s = terms[exps] + prod
                    if s.is_zero():
                        del terms[exps]
                    else:
                        terms[exps] = s
                elif not prod.is_zero():
                    terms[exps] = prod
        out = MultiPoly(self.nvars, {})
        object.__setattr__(out, "terms", terms)
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(1, self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.nvars != other.nvars or len(self.terms) != len(other.terms):
            return False
        for exps, coef in self.terms.items():
            oc = other.terms.get(exps)
            if oc is None or not (oc - coef).is_zero():
                return False
        return True

    __hash__ = None

    # -- evaluation & substitution ------------------------------------------

    def evaluate(self, point) -> Cyclotomic:
        point = [_coerce(v) for v in point]
        if len(point) != self.nvars:
            raise ValueError("point has wrong arity")
        total = Cyclotomic.from_rational(0)
        for exps, coef in self.terms.items():
            value = coef
            for v, e in zip(point, exps):
                if e:
                    value = value * v**e
            total = total + value
        return total

    def substitute(self, images: dict) -> "MultiPoly":
        """Ring substitution; images maps variable index -> MultiPoly."""
        for img in images.values():
            if img.nvars != self.nvars:
                raise ValueError("substitution image has wrong arity")
        total = MultiPoly.zero(self.nvars)
        for exps, coef in self.terms.items():
            part = MultiPoly.constant(coef, self.nvars)
            rest = [0] * self.nvars
            for i, e in enumerate(exps):
                if not e:
                    continue
                if i in images:
                    part = part * images[i] ** e
                else:
                    rest[i] = e
            if any(rest):
                part = part * MultiPoly.monomial(1, rest)
            total = total + part
        return total

    def scale_vars(self, scalars) -> "MultiPoly":
        """Substitute x_i -> scalars[i] * x_i (fast path for diagonal actions)."""
        scalars = [_coerce(s) for s in scalars]
        terms = {}
        for exps, coef in self.terms.items():
            factor = coef
            for s, e in zip(scalars, exps):
                if e:
                    factor = factor * s**e
            if not factor.is_zero():
                terms[exps] = factor
        out = MultiPoly(self.nvars, {})
        object.__setattr__(out, "terms", terms)
        return out

    def derivative(self, index: int) -> "MultiPoly":
        terms = {}
        for exps, coef in self.terms.items():
            e = exps[index]
            if e:
                new = list(exps)
                new[index] = e - 1
                terms[tuple(new)] = coef * e
        return MultiPoly(self.nvars, terms)

    def dehomogenize(self, chart) -> "MultiPoly":
        """Substitute 1 for every variable index in `chart`."""
        chart = set(chart)
        if any(i < 0 or i >= self.nvars for i in chart):
            raise ValueError("chart index out of range")
        terms: dict = {}
        for exps, coef in self.terms.items():
            new = tuple(0 if i in chart else e for i, e in enumerate(exps))
            if new in terms:
                s = terms[new] + coef
                if s.is_zero():
                    del terms[new]
                else:
                    terms[new] = s
            else:
                terms[new] = coef
        out = MultiPoly(self.nvars, {})
        object.__setattr__(out, "terms", terms)
        return out

    # -- display -------------------------------------------------------------

    def __str__(self):
        return self.pretty()

    def __repr__(self):
        return "MultiPoly(%d, %s)" % (self.nvars, self.pretty())

    def pretty(self, names=None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = default_names(self.nvars)
        parts = []
        for exps in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            coef = self.terms[exps]
            mono = "*".join(
                names[i] if e == 1 else "%s^%d" % (names[i], e)
                for i, e in enumerate(exps)
                if e
            )
            cs = str(coef)
            need_parens = (" + " in cs) or (" - " in cs)
            if not mono:
                body = "(%s)" % cs if need_parens else cs
            elif cs == "1":
                body = mono
            elif cs == "-1":
                body = "-" + mono
            elif need_parens:
                body = "(%s)*%s" % (cs, mono)
            else:
                body = "%s*%s" % (cs, mono)
            if not parts:
                parts.append(body)
            elif body.startswith("-"):
                parts.append(" - " + body[1:])
            else:
                parts.append(" + " + body)
        return "".join(parts)


def default_names(nvars: int):
    if nvars <= 3:
        return ["x", "y", "z"][:nvars]
    if nvars == 4:
        return ["x0", "x1", "x2", "x3"]
    if nvars == 8:
        return ["x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3"]
    return ["v%d" % i for i in range(nvars)]


# -- polynomial matrices -------------------------------------------------------


def poly_det(rows) -> MultiPoly:
    """Determinant of a square matrix of MultiPoly, by cofactor expansion."""
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise ValueError("matrix is not square")
    nvars = rows[0][0].nvars

    def minor_det(row_ids, col_ids):
        if len(row_ids) == 1:
            return rows[row_ids[0]][col_ids[0]]
        r = row_ids[0]
        total = MultiPoly.zero(nvars)
        for pos, c in enumerate(col_ids):
            entry = rows[r][c]
            if entry.is_zero():
                continue
            sub = minor_det(row_ids[1:], col_ids[:pos] + col_ids[pos + 1 :])
            term = entry * sub
            total = total + (term if pos % 2 == 0 else -term)
        return total

    return minor_det(tuple(range(size)), tuple(range(size)))


def maximal_minors(rows) -> tuple:
    """The four 3x3 minors (f0, f1, f2, f3) of a 3x4 polynomial matrix,
    f_i obtained by deleting column i."""
    if len(rows) != 3 or any(len(r) != 4 for r in rows):
        raise ValueError("expected a 3x4 matrix")
    minors = []
    for drop in range(4):
        cols = [c for c in range(4) if c != drop]
        minors.append(poly_det([[rows[r][c] for c in cols] for r in range(3)]))
    return tuple(minors)


def scalar_matrix_to_polys(matrix, nvars: int):
    """View a scalar matrix as constant polynomials (helper for poly_det)."""
    return [[MultiPoly.constant(v, nvars) for v in row] for row in matrix]


def cyclotomic_polynomial(n: int) -> MultiPoly:
    """The n-th cyclotomic polynomial as a univariate polynomial with
    rational coefficients, monic of degree phi(n)."""
    from .cyclotomic import cyclotomic_coeffs

    return MultiPoly(1, {(k,): c for k, c in enumerate(cyclotomic_coeffs(n))})
