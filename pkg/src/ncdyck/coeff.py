"""Exchange-polynomial specifications and the coefficient semiring.

Coefficients of everything noncommutative live in Z[p_{1,1..d1-1}, p_{2,1..d2-1}],
the polynomial ring on the internal exchange coefficients.  Boundary coefficients
p_{k,0} = p_{k,d_k} = 1 are the literal integer 1 and never appear as variables.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

# A variable is identified by (family, index): family 1 or 2, 1 <= index <= d-1.
Var = tuple[int, int]
# A monomial is a sorted tuple of (variable, positive exponent) pairs.
Monomial = tuple[tuple[Var, int], ...]

_ONE_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out: dict[Var, int] = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_key(m: Monomial):
    # graded lexicographic: total degree first, then the exponent vector
    return (_mono_degree(m), m)


class CoeffPoly:
    """Multivariate integer polynomial in the p_{i,j} variables.

    Instances are immutable; arithmetic is exact big-integer arithmetic.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        t = {m: c for m, c in (terms or {}).items() if c != 0}
        object.__setattr__(self, "terms", t)

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict[Monomial, int]) -> "CoeffPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "terms", terms)
        return p

    @classmethod
    def zero(cls) -> "CoeffPoly":
        return cls._raw({})

    @classmethod
    def const(cls, n: int) -> "CoeffPoly":
        return cls._raw({_ONE_MONO: n} if n else {})

    @classmethod
    def one(cls) -> "CoeffPoly":
        return cls.const(1)

    @classmethod
    def var(cls, family: int, index: int) -> "CoeffPoly":
        if family not in (1, 2) or index < 1:
            raise ValueError(f"invalid coefficient variable p[{family},{index}]")
        return cls._raw({(((family, index), 1),): 1})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {_ONE_MONO: 1}

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ONE_MONO in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get(_ONE_MONO, 0)

    def is_pseudo_positive(self) -> bool:
        """Membership in the semiring A+: all integer coefficients nonnegative."""
        return all(c >= 0 for c in self.terms.values())

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> set[Var]:
        out: set[Var] = set()
        for m in self.terms:
            out.update(v for v, _ in m)
        return out

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "CoeffPoly | int") -> "CoeffPoly":
        if isinstance(other, int):
            other = CoeffPoly.const(other)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return CoeffPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "CoeffPoly":
        return CoeffPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "CoeffPoly | int") -> "CoeffPoly":
        if isinstance(other, int):
            other = CoeffPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "CoeffPoly":
        return CoeffPoly.const(other) + (-self)

    def __mul__(self, other: "CoeffPoly | int") -> "CoeffPoly":
        if isinstance(other, int):
            if other == 0:
                return CoeffPoly.zero()
            if other == 1:
                return self
            return CoeffPoly._raw({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) == 1 and _ONE_MONO in a:
            return other * a[_ONE_MONO]
        if len(b) == 1 and _ONE_MONO in b:
            return self * b[_ONE_MONO]
        out: dict[Monomial, int] = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return CoeffPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CoeffPoly":
        if n < 0:
            raise ValueError("negative powers are not defined in the semiring")
        out = CoeffPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.terms == CoeffPoly.const(other).terms
        if isinstance(other, CoeffPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- exact division ----------------------------------------------------

    def leading_term(self) -> tuple[Monomial, int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=_mono_key)
        return m, self.terms[m]

    def divide_exact(self, divisor: "CoeffPoly") -> "CoeffPoly":
        """Exact division; raises ValueError if the quotient is not polynomial."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if divisor.is_one():
            return self
        if divisor.is_constant():
            d = divisor.constant_value()
            out = {}
            for m, c in self.terms.items():
                q, r = divmod(c, d)
                if r:
                    raise ValueError("inexact constant division")
                out[m] = q
            return CoeffPoly._raw(out)
        # graded-lex leading terms: unlike the display order this is a
        # genuine monomial order, so division of an exact multiple cannot
        # get stuck on an indivisible leading monomial
        allvars = sorted({v for m in self.terms for v, _ in m} |
                         {v for m in divisor.terms for v, _ in m})

        def glex(m: Monomial):
            d = dict(m)
            return (_mono_degree(m), tuple(d.get(v, 0) for v in allvars))

        def leading(p: "CoeffPoly") -> tuple[Monomial, int]:
            m = max(p.terms, key=glex)
            return m, p.terms[m]

        rem = self
        quot = CoeffPoly.zero()
        dm, dc = leading(divisor)
        dvars = dict(dm)
        while not rem.is_zero():
            rm, rc = leading(rem)
            q, r = divmod(rc, dc)
            if r:
                raise ValueError("inexact coefficient division")
            rvars = dict(rm)
            qm: dict[Var, int] = {}
            for v, e in dvars.items():
                if rvars.get(v, 0) < e:
                    raise ValueError("inexact polynomial division")
                if rvars[v] > e:
                    qm[v] = rvars[v] - e
            for v, e in rvars.items():
                if v not in dvars:
                    qm[v] = e
            qterm = CoeffPoly._raw({tuple(sorted(qm.items())): q})
            quot = quot + qterm
            rem = rem - qterm * divisor
        return quot

    # -- evaluation and formatting -----------------------------------------

    def evaluate(self, assignment: Mapping[Var, int]) -> "CoeffPoly":
        """Substitute integers for (some) variables; separate from canonical form."""
        out = CoeffPoly.zero()
        for m, c in self.terms.items():
            piece: dict[Var, int] = {}
            val = c
            for v, e in m:
                if v in assignment:
                    val *= assignment[v] ** e
                else:
                    piece[v] = e
            if val:
                out = out + CoeffPoly._raw({tuple(sorted(piece.items())): val})
        return out

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda kv: _mono_key(kv[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [f"p[{f},{i}]" + (f"^{e}" if e > 1 else "") for (f, i), e in m]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    __repr__ = __str__


@dataclass(frozen=True)
class ExchangePolySpec:
    """A monic exchange polynomial P(z) with constant term 1.

    ``coeffs[j]`` is the coefficient of z^j as a CoeffPoly; boundary entries are
    always the literal 1.
    """

    family: int
    degree: int
    coeffs: tuple[CoeffPoly, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")
        if not self.coeffs[0].is_one() or not self.coeffs[-1].is_one():
            raise ValueError("boundary coefficients must be the literal 1")

    def reversed(self) -> "ExchangePolySpec":
        """The reversed polynomial: coefficient j becomes coefficient degree-j."""
        return ExchangePolySpec(self.family, self.degree, tuple(reversed(self.coeffs)))

    def coefficient(self, j: int) -> CoeffPoly:
        if not 0 <= j <= self.degree:
            raise IndexError(f"coefficient index {j} out of range")
        return self.coeffs[j]

    def is_symbolic(self) -> bool:
        return any(not c.is_constant() for c in self.coeffs)

    def __str__(self) -> str:
        return spec_text(self)


def make_spec(degree: int, internal: Iterable[object] = (), family: int = 1) -> ExchangePolySpec:
    """Build a spec from its internal coefficients (low to high degree).

    Each internal entry is either the string ``"s"`` (keep symbolic: the
    variable p_{family,j}) or an integer constant.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    internal = list(internal)
    expected = max(degree - 1, 0)
    if len(internal) != expected:
        raise ValueError(f"expected {expected} internal coefficients, got {len(internal)}")
    coeffs: list[CoeffPoly] = [CoeffPoly.one()]
    for j, entry in enumerate(internal, start=1):
        if entry == "s":
            coeffs.append(CoeffPoly.var(family, j))
        elif isinstance(entry, int):
            coeffs.append(CoeffPoly.const(entry))
        elif isinstance(entry, CoeffPoly):
            coeffs.append(entry)
        else:
            raise ValueError(f"bad internal coefficient {entry!r}")
    if degree >= 1:
        coeffs.append(CoeffPoly.one())
    return ExchangePolySpec(family, degree, tuple(coeffs))


def symbolic_spec(degree: int, family: int) -> ExchangePolySpec:
    """Fully symbolic spec: 1 + p_{family,1}z + ... + z^degree."""
    return make_spec(degree, ["s"] * max(degree - 1, 0), family=family)


def parse_spec_text(text: str, family: int) -> ExchangePolySpec:
    """Parse the CLI coefficient syntax, e.g. ``1,s,1`` (low to high degree)."""
    entries = [e.strip() for e in text.split(",")]
    if len(entries) == 0:
        raise ValueError("empty spec")
    degree = len(entries) - 1
    if entries[0] != "1" or entries[-1] != "1":
        raise ValueError("boundary coefficients must be 1")
    internal: list[object] = []
    for e in entries[1:-1] if degree >= 1 else []:
        if e == "s":
            internal.append("s")
        else:
            internal.append(int(e))
    return make_spec(degree, internal, family=family)


def spec_text(spec: ExchangePolySpec) -> str:
    """Inverse of parse_spec_text (bit-exact round trip for parsed specs)."""
    entries = []
    for c in spec.coeffs:
        entries.append(str(c.constant_value()) if c.is_constant() else "s")
    return ",".join(entries)


def p_k(spec1: ExchangePolySpec, spec2: ExchangePolySpec, k: int) -> ExchangePolySpec:
    """The period-4 polynomial sequence: P1, P2, reversed P1, reversed P2."""
    r = k % 4
    if r == 1:
        return spec1
    if r == 2:
        return spec2
    if r == 3:
        return spec1.reversed()
    return spec2.reversed()


@dataclass(frozen=True)
class Model:
    """The pair (P1, P2) plus all conventions derived from it.

    ``primed()`` returns the swapped-convention model: the primed quantities of
    the source are the plain quantities of the primed model, so no dual code
    paths exist anywhere downstream.
    """

    P1: ExchangePolySpec
    P2: ExchangePolySpec

    @property
    def d1(self) -> int:
        return self.P1.degree

    @property
    def d2(self) -> int:
        return self.P2.degree

    def primed(self) -> "Model":
        # (d1', d2') = (d0, d1) = (d2, d1); P1' = P0 = reversed P2; P2' = P1.
        return Model(self.P2.reversed(), self.P1)

    def p_k(self, k: int) -> ExchangePolySpec:
        return p_k(self.P1, self.P2, k)

    def d_k(self, k: int) -> int:
        return self.d1 if k % 2 == 1 else self.d2

    def h_coeff(self, j: int) -> CoeffPoly:
        """Coefficient attached to a horizontal edge of grade j."""
        return self.P1.coefficient(j)

    def v_coeff(self, j: int) -> CoeffPoly:
        """Coefficient attached to a vertical edge of grade j (p_{2,d2-j})."""
        return self.P2.coefficient(self.d2 - j)


def symbolic_model(d1: int, d2: int) -> Model:
    return Model(symbolic_spec(d1, 1), symbolic_spec(d2, 2))


def numeric_model(d1: int, d2: int, p1: Iterable[int] = (), p2: Iterable[int] = ()) -> Model:
    """Model with all internal coefficients given numerically (default 0)."""
    p1 = list(p1) or [0] * max(d1 - 1, 0)
    p2 = list(p2) or [0] * max(d2 - 1, 0)
    return Model(make_spec(d1, p1, family=1), make_spec(d2, p2, family=2))


class VLaurent:
    """Laurent polynomial in the quantum parameter v over CoeffPoly."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, CoeffPoly] | None = None):
        t = {e: c for e, c in (terms or {}).items() if not c.is_zero()}
        object.__setattr__(self, "terms", t)

    @classmethod
    def _raw(cls, terms: dict[int, CoeffPoly]) -> "VLaurent":
        x = object.__new__(cls)
        object.__setattr__(x, "terms", terms)
        return x

    @classmethod
    def zero(cls) -> "VLaurent":
        return cls._raw({})

    @classmethod
    def one(cls) -> "VLaurent":
        return cls._raw({0: CoeffPoly.one()})

    @classmethod
    def v_power(cls, e: int, coeff: CoeffPoly | int = 1) -> "VLaurent":
        c = CoeffPoly.const(coeff) if isinstance(coeff, int) else coeff
        return cls({e: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "VLaurent") -> "VLaurent":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, CoeffPoly.zero()) + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return VLaurent._raw(out)

    def __neg__(self) -> "VLaurent":
        return VLaurent._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "VLaurent") -> "VLaurent":
        return self + (-other)

    def __mul__(self, other: "VLaurent | CoeffPoly | int") -> "VLaurent":
        if isinstance(other, int):
            other = CoeffPoly.const(other)
        if isinstance(other, CoeffPoly):
            return VLaurent({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, VLaurent):
            return NotImplemented
        out: dict[int, CoeffPoly] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, CoeffPoly.zero()) + c1 * c2
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return VLaurent._raw(out)

    __rmul__ = __mul__

    def shift(self, e: int) -> "VLaurent":
        return VLaurent._raw({k + e: c for k, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VLaurent):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == VLaurent.v_power(0, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset((e, hash(c)) for e, c in self.terms.items()))

    def items(self) -> Iterator[tuple[int, CoeffPoly]]:
        return iter(sorted(self.terms.items()))

    def bar(self) -> "VLaurent":
        """The substitution v -> v^{-1}."""
        return VLaurent._raw({-e: c for e, c in self.terms.items()})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            cs = str(c)
            if e == 0:
                parts.append(cs)
            else:
                ve = "v" if e == 1 else f"v^{e}"
                parts.append(ve if cs == "1" else f"({cs})*{ve}")
        return " + ".join(parts)

    __repr__ = __str__
