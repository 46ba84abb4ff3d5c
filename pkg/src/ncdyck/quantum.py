"""Quantum torus arithmetic and quasi-commutative cluster variables.

The two-generator quantum torus has Z1 Z2 = v^2 Z2 Z1; we work in the
normalized basis Z^(a1,a2) = v^{-a1*a2} Z1^{a1} Z2^{a2}, in which

    Z^a * Z^b = v^{a1*b2 - a2*b1} Z^{a+b}.

The specialization pi_v sends the free-group variables X, Y to v*Z1 and
v^{-1}*Z2.  Every variable Z_m is produced by the closed combinatorial sum
over compatible gradings (positive index: gradings of D_{m-2}; index <= 0:
gradings of the swapped-convention path D'_{-m+1}); the exchange recursion
Z_{k-1} Z_{k+1} = P_{3+k}(v Z_k) is used only to verify, never to divide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

from .coeff import CoeffPoly, Model, VLaurent
from .dyck import ChebyshevTable, DyckPath, standard_path
from .grading import Half, enumerate_compatible
from .ncalg import Budget, NCLaurent, forward_chain_for

Vec = tuple[int, int]


class QTorusElem:
    """Element of the quantum torus in the normalized monomial basis.

    ``terms`` maps exponent vectors (a1, a2) to v-Laurent coefficients; zero
    coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Vec, VLaurent] | None = None):
        t = {a: c for a, c in (terms or {}).items() if not c.is_zero()}
        object.__setattr__(self, "terms", t)

    @classmethod
    def _raw(cls, terms: dict[Vec, VLaurent]) -> "QTorusElem":
        x = object.__new__(cls)
        object.__setattr__(x, "terms", terms)
        return x

    @classmethod
    def zero(cls) -> "QTorusElem":
        return cls._raw({})

    @classmethod
    def one(cls) -> "QTorusElem":
        return cls.monomial((0, 0))

    @classmethod
    def monomial(cls, a: Vec, coeff: "VLaurent | CoeffPoly | int" = 1) -> "QTorusElem":
        if isinstance(coeff, int):
            coeff = VLaurent.v_power(0, coeff)
        elif isinstance(coeff, CoeffPoly):
            coeff = VLaurent.v_power(0, coeff)
        if coeff.is_zero():
            return cls.zero()
        return cls._raw({(a[0], a[1]): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def num_terms(self) -> int:
        return len(self.terms)

    def __add__(self, other: "QTorusElem") -> "QTorusElem":
        out = dict(self.terms)
        for a, c in other.terms.items():
            s = out.get(a, VLaurent.zero()) + c
            if s.is_zero():
                out.pop(a, None)
            else:
                out[a] = s
        return QTorusElem._raw(out)

    def __neg__(self) -> "QTorusElem":
        return QTorusElem._raw({a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "QTorusElem") -> "QTorusElem":
        return self + (-other)

    def __mul__(self, other: "QTorusElem | VLaurent | CoeffPoly | int") -> "QTorusElem":
        if not isinstance(other, QTorusElem):
            if isinstance(other, int):
                other = VLaurent.v_power(0, other)
            elif isinstance(other, CoeffPoly):
                other = VLaurent.v_power(0, other)
            return QTorusElem({a: c * other for a, c in self.terms.items()})
        out: dict[Vec, VLaurent] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = (a[0] + b[0], a[1] + b[1])
                twist = a[0] * b[1] - a[1] * b[0]
                s = out.get(key, VLaurent.zero()) + (ca * cb).shift(twist)
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return QTorusElem._raw(out)

    def __rmul__(self, other: "VLaurent | CoeffPoly | int") -> "QTorusElem":
        # scalars are central, so left and right actions agree
        return self * other

    def __pow__(self, n: int) -> "QTorusElem":
        if n < 0:
            raise ValueError("negative powers are not defined on torus elements")
        out = QTorusElem.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QTorusElem):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == QTorusElem.monomial((0, 0), other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset((a, c) for a, c in self.terms.items()))

    def items(self) -> Iterator[tuple[Vec, VLaurent]]:
        return iter(sorted(self.terms.items()))

    def first_difference(self, other: "QTorusElem") -> Optional[Vec]:
        """Smallest exponent vector on which the two elements disagree."""
        keys = set(self.terms) | set(other.terms)
        for a in sorted(keys):
            if self.terms.get(a, VLaurent.zero()) != other.terms.get(a, VLaurent.zero()):
                return a
        return None

    def to_json(self) -> list[dict]:
        return [{"a": list(a), "coeff": str(c)} for a, c in self.items()]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a, c in self.items():
            cs = str(c)
            body = f"Z^({a[0]},{a[1]})"
            if a == (0, 0):
                parts.append(cs)
            elif cs == "1":
                parts.append(body)
            else:
                parts.append(f"({cs})*{body}")
        return " + ".join(parts)

    __repr__ = __str__


def pi_v(f: NCLaurent) -> QTorusElem:
    """Quantum specialization X -> v Z1, Y -> v^{-1} Z2, word by word."""
    out = QTorusElem.zero()
    for word, coeff in f.terms.items():
        a1 = a2 = 0
        vexp = 0
        for letter, e in word:
            if letter == "X":
                b1, b2 = e, 0
                vexp += e
            else:
                b1, b2 = 0, e
                vexp -= e
            vexp += a1 * b2 - a2 * b1
            a1, a2 = a1 + b1, a2 + b2
        out = out + QTorusElem.monomial((a1, a2), VLaurent.v_power(vexp, coeff))
    return out


@dataclass(frozen=True)
class QuantumExponents:
    """Pairwise v-exponent statistics and coefficient of one grading."""

    gamma: int
    beta: int
    p: CoeffPoly


def gamma_beta(path: DyckPath, omega_h: Half, omega_v: Half,
               primed: bool = False) -> tuple[int, int]:
    """The commutation statistics (gamma, beta) summed over edge pairs e < e'.

    In the swapped convention (``primed``) the horizontal/vertical roles in
    the gamma case analysis are interchanged; beta is symmetric in the roles.
    """
    hi = vi = 0
    edges: list[tuple[bool, int]] = []  # (plays the horizontal role, value)
    for s in path.steps:
        if s == "H":
            edges.append((not primed, omega_h[hi]))
            hi += 1
        else:
            edges.append((primed, omega_v[vi]))
            vi += 1
    gamma = beta = 0
    n = len(edges)
    for i in range(n):
        hrole, w = edges[i]
        for j in range(i + 1, n):
            hrole2, w2 = edges[j]
            # beta does not care which edge plays which role
            if hrole == hrole2:
                beta -= w + w2
            else:
                beta += w * w2 + 1
            if (hrole and w == 0) or (not hrole2 and w2 == 0):
                continue
            if hrole and not hrole2:
                gamma -= 2 * w * w2
            elif hrole and hrole2:
                gamma += 2 * w
            elif not hrole and not hrole2:
                gamma += 2 * w2
            else:
                gamma -= 2
    return gamma, beta


def quantum_exponents(model: Model, path: DyckPath, omega_h: Half, omega_v: Half,
                      primed: bool = False) -> QuantumExponents:
    g, b = gamma_beta(path, omega_h, omega_v, primed=primed)
    p = CoeffPoly.one()
    if primed:
        for w in omega_h:
            p = p * model.v_coeff(w)
        for w in omega_v:
            p = p * model.h_coeff(w)
    else:
        for w in omega_h:
            p = p * model.h_coeff(w)
        for w in omega_v:
            p = p * model.v_coeff(w)
    return QuantumExponents(g, b, p)


def z_combinatorial(model: Model, m: int, budget: Budget | None = None) -> QTorusElem:
    """The quantum cluster variable Z_m as a closed sum over compatible gradings."""
    if model.d1 * model.d2 < 4:
        raise ValueError("the combinatorial construction needs d1*d2 >= 4")
    if m == 1:
        return QTorusElem.monomial((1, 0))
    if m == 2:
        return QTorusElem.monomial((0, 1))
    budget = budget or Budget()
    table = ChebyshevTable(model.d1, model.d2)
    if m >= 3:
        n = m - 2
        path = standard_path(table, n)
        A, B = table.u(n, 1), table.u(n - 1, 2)
        bound_h, bound_v = model.d1, model.d2
        primed = False
    else:
        n = -m + 1
        path = standard_path(table, n, primed=True)
        A, B = table.u(n, 2), table.u(n - 1, 1)
        bound_h, bound_v = model.d2, model.d1
        primed = True
    out = QTorusElem.zero()
    for oh, ov in enumerate_compatible(path, bound_h, bound_v):
        budget.charge_work(path.num_edges ** 2)
        qe = quantum_exponents(model, path, oh, ov, primed=primed)
        if qe.p.is_zero():
            continue
        if not primed:
            vexp = 1 - A - B + qe.gamma + qe.beta
            vec = (-A + sum(ov), -B + sum(oh))
        else:
            vexp = -1 + A + B + qe.gamma + qe.beta
            vec = (-B + sum(oh), -A + sum(ov))
        out = out + QTorusElem.monomial(vec, VLaurent.v_power(vexp, qe.p))
    return out


def poly_at(spec, arg: QTorusElem, vshift: int = 1) -> QTorusElem:
    """Evaluate an exchange polynomial at v^{vshift} * arg (default: at v*arg)."""
    out = QTorusElem.zero()
    power = QTorusElem.one()
    for j in range(spec.degree + 1):
        c = spec.coefficient(j)
        if not c.is_zero():
            out = out + power * VLaurent.v_power(vshift * j, c)
        if j < spec.degree:
            power = power * arg
    return out


@dataclass
class QuantumReport:
    """Outcome of the exchange / specialization cross-checks at one index."""

    m: int
    exchange_ok: Optional[bool]  # None when a neighbor was not computed
    specialization_ok: Optional[bool]
    mismatch: Optional[Vec] = None
    num_terms: int = 0


def verify_quantum(model: Model, m_lo: int, m_hi: int,
                   budget: Budget | None = None) -> list[QuantumReport]:
    """Compute Z_m for m in [m_lo, m_hi] combinatorially and cross-check.

    For every interior index k the exchange relation
    Z_{k-1} Z_{k+1} = P_{3+k}(v Z_k) is tested by multiplication only, and for
    m >= 3 the chain identity Z_m = v pi_v(Y_{m-2}) ties the quantum side to
    the non-commutative one.
    """
    budget = budget or Budget()
    zs = {m: z_combinatorial(model, m, budget=budget) for m in range(m_lo, m_hi + 1)}
    chain = None
    if m_hi >= 3:
        chain = forward_chain_for(model, m_hi - 2, budget=budget)
    reports: list[QuantumReport] = []
    for m in range(m_lo, m_hi + 1):
        exchange_ok = None
        mismatch: Optional[Vec] = None
        if m - 1 in zs and m + 1 in zs:
            lhs = zs[m - 1] * zs[m + 1]
            rhs = poly_at(model.p_k(3 + m), zs[m])
            exchange_ok = lhs == rhs
            if not exchange_ok:
                mismatch = lhs.first_difference(rhs)
        spec_ok = None
        if m >= 3 and chain is not None and chain.depth >= m - 2:
            spec_ok = pi_v(chain.ys[m - 2]) * VLaurent.v_power(1) == zs[m]
            if not spec_ok and mismatch is None:
                mismatch = (pi_v(chain.ys[m - 2]) * VLaurent.v_power(1)).first_difference(zs[m])
        reports.append(QuantumReport(m, exchange_ok, spec_ok, mismatch,
                                     zs[m].num_terms()))
    return reports
