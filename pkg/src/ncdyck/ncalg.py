"""Noncommutative Laurent polynomials on reduced free-group words in X, Y,
and the Kontsevich-type automorphisms F_P, F_P^{-1}.

Chain values (Y_m = F_{P_1}...F_{P_m}(Y) and the X_m companions) are computed by
the composition identities

    Y_k = P_k(Y_{k-1}) * X_{k-1}^{-1},      X_k = X_{k-1} * Y_{k-1} * X_{k-1}^{-1},

where the right division is carried out exactly inside the Laurent algebra by a
self-certifying elimination (the remainder reaches zero iff the quotient is
exact).  This realizes the automorphism chain without modelling the ambient
skew field.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .coeff import CoeffPoly, ExchangePolySpec, Model

# A word is a freely reduced tuple of (letter, nonzero exponent) pairs.
Word = tuple[tuple[str, int], ...]

IDENTITY_WORD: Word = ()
X_WORD: Word = (("X", 1),)
Y_WORD: Word = (("Y", 1),)
# Q = Y X Y^-1 X^-1, the element fixed by every F_P.
Q_WORD: Word = (("Y", 1), ("X", 1), ("Y", -1), ("X", -1))


class TermBudgetExceeded(Exception):
    """Raised when a computation would exceed the configured term/work caps."""


class NonMonomialInverse(Exception):
    """Substitution would require inverting a multi-term element."""


class NonLaurentQuotient(Exception):
    """Exact division inside the Laurent algebra failed."""


class Budget:
    """Caps on result sizes (words) and multiplication work (word products)."""

    def __init__(self, max_terms: int = 500_000, max_work: int = 50_000_000):
        self.max_terms = max_terms
        self.max_work = max_work
        self.work_used = 0

    def charge_work(self, n: int) -> None:
        self.work_used += n
        if self.work_used > self.max_work:
            raise TermBudgetExceeded(
                f"work budget exceeded ({self.work_used} > {self.max_work} word products)"
            )

    def check_terms(self, n: int) -> None:
        if n > self.max_terms:
            raise TermBudgetExceeded(f"term budget exceeded ({n} > {self.max_terms} words)")


def word_mul(a: Word, b: Word) -> Word:
    """Reduced concatenation of two reduced words."""
    if not a:
        return b
    if not b:
        return a
    left = list(a)
    j = 0
    nb = len(b)
    while left and j < nb:
        la, ea = left[-1]
        lb, eb = b[j]
        if la != lb:
            break
        e = ea + eb
        left.pop()
        if e:
            left.append((la, e))
            j += 1
            break
        j += 1
    left.extend(b[j:])
    return tuple(left)


def word_inv(w: Word) -> Word:
    return tuple((l, -e) for l, e in reversed(w))


def word_pow(w: Word, n: int) -> Word:
    if n < 0:
        return word_pow(word_inv(w), -n)
    out: Word = IDENTITY_WORD
    for _ in range(n):
        out = word_mul(out, w)
    return out


def word_length(w: Word) -> int:
    return sum(abs(e) for _, e in w)


def word_bidegree(w: Word) -> tuple[int, int]:
    """(total Y-exponent, total X-exponent); additive under word_mul."""
    y = sum(e for l, e in w if l == "Y")
    x = sum(e for l, e in w if l == "X")
    return (y, x)


def word_key(w: Word):
    """Deterministic order: by total length, then lexicographic on the pairs."""
    return (word_length(w), w)


def word_swap_letters(w: Word) -> Word:
    """The letter swap X <-> Y (an anti-symmetry used for inverse chains)."""
    return tuple(("Y" if l == "X" else "X", e) for l, e in w)


def word_text(w: Word) -> str:
    if not w:
        return "1"
    return " ".join(l if e == 1 else f"{l}^{e}" for l, e in w)


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return IDENTITY_WORD
    out: Word = IDENTITY_WORD
    for tok in text.split():
        if "^" in tok:
            letter, exp = tok.split("^")
            e = int(exp)
        else:
            letter, e = tok, 1
        if letter not in ("X", "Y") or e == 0:
            raise ValueError(f"bad word token {tok!r}")
        out = word_mul(out, ((letter, e),))
    return out


class NCLaurent:
    """Finite mapping from reduced words to CoeffPoly, with exact arithmetic."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, CoeffPoly] | None = None):
        t = {w: c for w, c in (terms or {}).items() if not c.is_zero()}
        object.__setattr__(self, "terms", t)

    @classmethod
    def _raw(cls, terms: dict[Word, CoeffPoly]) -> "NCLaurent":
        f = object.__new__(cls)
        object.__setattr__(f, "terms", t := terms)
        return f

    @classmethod
    def zero(cls) -> "NCLaurent":
        return cls._raw({})

    @classmethod
    def one(cls) -> "NCLaurent":
        return cls._raw({IDENTITY_WORD: CoeffPoly.one()})

    @classmethod
    def from_word(cls, w: Word, coeff: CoeffPoly | int = 1) -> "NCLaurent":
        c = CoeffPoly.const(coeff) if isinstance(coeff, int) else coeff
        return cls({w: c})

    @classmethod
    def generator(cls, letter: str, exp: int = 1) -> "NCLaurent":
        return cls.from_word(((letter, exp),)) if exp else cls.one()

    def num_terms(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def monomial(self) -> tuple[Word, CoeffPoly]:
        if len(self.terms) != 1:
            raise ValueError("not a monomial")
        return next(iter(self.terms.items()))

    def is_pseudo_positive(self) -> bool:
        return all(c.is_pseudo_positive() for c in self.terms.values())

    def __add__(self, other: "NCLaurent") -> "NCLaurent":
        if not isinstance(other, NCLaurent):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return NCLaurent._raw(out)

    def __neg__(self) -> "NCLaurent":
        return NCLaurent._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCLaurent") -> "NCLaurent":
        return self + (-other)

    def scale(self, coeff: CoeffPoly | int) -> "NCLaurent":
        if isinstance(coeff, int):
            coeff = CoeffPoly.const(coeff)
        if coeff.is_zero():
            return NCLaurent.zero()
        if coeff.is_one():
            return self
        return NCLaurent({w: c * coeff for w, c in self.terms.items()})

    def mul(self, other: "NCLaurent", budget: Budget | None = None) -> "NCLaurent":
        a, b = self.terms, other.terms
        if budget is not None:
            budget.charge_work(len(a) * len(b))
        out: dict[Word, CoeffPoly] = {}
        for w1, c1 in a.items():
            for w2, c2 in b.items():
                w = word_mul(w1, w2)
                s = out.get(w)
                s = c1 * c2 if s is None else s + c1 * c2
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        if budget is not None:
            budget.check_terms(len(out))
        return NCLaurent._raw(out)

    def __mul__(self, other: "NCLaurent | CoeffPoly | int") -> "NCLaurent":
        if isinstance(other, (CoeffPoly, int)):
            return self.scale(other)
        if isinstance(other, NCLaurent):
            return self.mul(other)
        return NotImplemented

    def __rmul__(self, other: "CoeffPoly | int") -> "NCLaurent":
        if isinstance(other, (CoeffPoly, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "NCLaurent":
        if n < 0:
            if self.is_monomial():
                w, c = self.monomial()
                if c.is_one():
                    return NCLaurent.from_word(word_inv(w)) ** (-n)
            raise NonMonomialInverse("negative power of a non-monomial")
        out = NCLaurent.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NCLaurent):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == (NCLaurent.one().terms if other == 1 else
                                  NCLaurent.from_word(IDENTITY_WORD, other).terms)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset((w, hash(c)) for w, c in self.terms.items()))

    def swap_letters(self) -> "NCLaurent":
        return NCLaurent._raw({word_swap_letters(w): c for w, c in self.terms.items()})

    def sorted_words(self) -> list[Word]:
        return sorted(self.terms, key=word_key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in self.sorted_words():
            c = self.terms[w]
            cs = str(c)
            ws = word_text(w)
            if ws == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(ws)
            elif c.is_monomial() or c.is_constant():
                parts.append(f"{cs} {ws}")
            else:
                parts.append(f"({cs}) {ws}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self) -> list[dict]:
        return [{"word": word_text(w), "coeff": str(self.terms[w])}
                for w in self.sorted_words()]

    def first_difference(self, other: "NCLaurent") -> Word | None:
        """Smallest word (canonical order) whose coefficients differ, if any."""
        diff = (self - other).terms
        if not diff:
            return None
        return min(diff, key=word_key)


def poly_of(spec: ExchangePolySpec, arg: NCLaurent, budget: Budget | None = None) -> NCLaurent:
    """Evaluate P(arg) = sum_j coeffs[j] * arg^j by iterated multiplication."""
    out = NCLaurent.one().scale(spec.coefficient(0))
    power = NCLaurent.one()
    for j in range(1, spec.degree + 1):
        power = power.mul(arg, budget=budget)
        out = out + power.scale(spec.coefficient(j))
    return out


def rdiv(f: NCLaurent, g: NCLaurent, budget: Budget | None = None,
         max_levels: int = 10_000) -> NCLaurent:
    """Exact right division: the unique h with h*g = f, if it exists.

    Elimination over the (Y-degree, X-degree) bidegree: both components are
    additive under word multiplication, so the lex-minimal bidegree part of a
    product is the product of the lex-minimal parts.  The divisor must have a
    single word in its lex-minimal part; elimination succeeds iff the remainder
    reaches zero, which certifies exactness.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero")
    if f.is_zero():
        return NCLaurent.zero()
    gmin = min(word_bidegree(w) for w in g.terms)
    gwords = [w for w in g.terms if word_bidegree(w) == gmin]
    if len(gwords) != 1:
        raise NonLaurentQuotient("divisor has a non-monomial extremal part")
    g0 = gwords[0]
    c0 = g.terms[g0]
    g0inv = word_inv(g0)
    rem = f
    quot: dict[Word, CoeffPoly] = {}
    for _ in range(max_levels):
        if rem.is_zero():
            return NCLaurent._raw(quot)
        rmin = min(word_bidegree(w) for w in rem.terms)
        piece: dict[Word, CoeffPoly] = {}
        for w, c in rem.terms.items():
            if word_bidegree(w) == rmin:
                try:
                    piece[word_mul(w, g0inv)] = c.divide_exact(c0)
                except ValueError as exc:
                    raise NonLaurentQuotient(f"coefficient division failed: {exc}") from exc
        hpiece = NCLaurent._raw(piece)
        rem = rem - hpiece.mul(g, budget=budget)
        if budget is not None:
            # a divergent elimination grows the remainder (or its
            # coefficients) without bound; charge both so it cannot spin
            budget.check_terms(rem.num_terms())
            budget.charge_work(sum(len(c.terms) for c in rem.terms.values()))
        for w, c in piece.items():
            quot[w] = c
        new_min = min((word_bidegree(w) for w in rem.terms), default=None)
        if new_min is not None and new_min <= rmin:
            raise NonLaurentQuotient("extremal level failed to cancel")
    raise NonLaurentQuotient("elimination did not terminate")


@dataclass(frozen=True)
class Automorphism:
    """Images of the generators under F_P (fwd) or F_P^{-1} (inv)."""

    image_of_X: NCLaurent
    image_of_Y: NCLaurent
    tag: str
    spec: ExchangePolySpec

    def image(self, letter: str) -> NCLaurent:
        return self.image_of_X if letter == "X" else self.image_of_Y


def kontsevich(P: ExchangePolySpec, direction: str = "fwd") -> Automorphism:
    """F_P: X -> XYX^-1, Y -> P(Y)X^-1; inverse: X -> P(X)Y^-1, Y -> YXY^-1."""
    if direction == "fwd":
        img_x = NCLaurent.from_word((("X", 1), ("Y", 1), ("X", -1)))
        img_y = poly_of(P, NCLaurent.generator("Y")).mul(NCLaurent.generator("X", -1))
        return Automorphism(img_x, img_y, "forward", P)
    if direction == "inv":
        img_y = NCLaurent.from_word((("Y", 1), ("X", 1), ("Y", -1)))
        img_x = poly_of(P, NCLaurent.generator("X")).mul(NCLaurent.generator("Y", -1))
        return Automorphism(img_x, img_y, "inverse", P)
    raise ValueError(f"unknown direction {direction!r}")


def _word_steps(w: Word) -> tuple[tuple[str, int], ...]:
    steps: list[tuple[str, int]] = []
    for letter, exp in w:
        sgn = 1 if exp > 0 else -1
        steps.extend((letter, sgn) for _ in range(abs(exp)))
    return tuple(steps)


def _apply_grouped(auto: Automorphism, items: list[tuple[tuple[tuple[str, int], ...], CoeffPoly]],
                   budget: Budget | None) -> NCLaurent:
    total = NCLaurent.zero()
    groups: dict[tuple[str, int], list[tuple[tuple[tuple[str, int], ...], CoeffPoly]]] = {}
    for steps, coeff in items:
        if steps:
            groups.setdefault(steps[-1], []).append((steps[:-1], coeff))
        else:
            total = total + NCLaurent.one().scale(coeff)
    for step in sorted(groups):
        sub = _apply_grouped(auto, groups[step], budget)
        letter, sgn = step
        img = auto.image(letter)
        if sgn > 0:
            total = total + sub.mul(img, budget=budget)
        elif img.is_monomial() and img.monomial()[1].is_one():
            inv = NCLaurent.from_word(word_inv(img.monomial()[0]))
            total = total + sub.mul(inv, budget=budget)
        else:
            try:
                total = total + rdiv(sub, img, budget=budget)
            except NonLaurentQuotient as exc:
                raise NonMonomialInverse(
                    f"cannot invert the image of {letter}: {exc}"
                ) from exc
    return total


def apply(auto: Automorphism, f: NCLaurent, budget: Budget | None = None) -> NCLaurent:
    """Substitution homomorphism.

    Words are processed through a shared-suffix tree so that words agreeing on
    a right factor are substituted together.  Negative powers of a letter whose
    image is a single unit monomial invert the image word directly.  Negative
    powers of a multi-term image are attempted by exact right division of the
    accumulated group sum; if that quotient is not Laurent the substitution is
    rejected.
    """
    items = [(_word_steps(w), coeff) for w, coeff in f.terms.items()]
    return _apply_grouped(auto, items, budget)


@dataclass
class ChainResult:
    """Values of a chain F_{S_1}...F_{S_k} applied to the generators.

    ``ys[k]`` is the chain of length k applied to Y (ys[0] = Y), and ``xs[k]``
    the same for X.  ``truncated_at`` records the first k whose computation
    blew the budget, if any.
    """

    specs: Sequence[ExchangePolySpec]
    direction: str
    xs: list[NCLaurent] = field(default_factory=list)
    ys: list[NCLaurent] = field(default_factory=list)
    truncated_at: int | None = None

    @property
    def depth(self) -> int:
        return len(self.ys) - 1

    def value(self, target: str, k: int | None = None) -> NCLaurent:
        seq = self.ys if target == "Y" else self.xs
        return seq[k if k is not None else len(seq) - 1]


def _forward_chain(specs: Sequence[ExchangePolySpec], budget: Budget) -> ChainResult:
    res = ChainResult(specs=specs, direction="fwd",
                      xs=[NCLaurent.generator("X")], ys=[NCLaurent.generator("Y")])
    for k, spec in enumerate(specs, start=1):
        try:
            if k == 1:
                y = poly_of(spec, res.ys[0], budget=budget).mul(
                    NCLaurent.generator("X", -1), budget=budget)
                x = NCLaurent.from_word((("X", 1), ("Y", 1), ("X", -1)))
            else:
                xprev, yprev = res.xs[-1], res.ys[-1]
                num = poly_of(spec, yprev, budget=budget)
                y = rdiv(num, xprev, budget=budget)
                x = rdiv(xprev.mul(yprev, budget=budget), xprev, budget=budget)
            budget.check_terms(y.num_terms())
            budget.check_terms(x.num_terms())
        except TermBudgetExceeded:
            res.truncated_at = k
            break
        res.ys.append(y)
        res.xs.append(x)
    return res


def iterate_chain(specs: Sequence[ExchangePolySpec], target: str = "Y",
                  direction: str = "fwd", budget: Budget | None = None) -> ChainResult:
    """Chain application F_{S_1} F_{S_2} ... F_{S_k} (rightmost acts first).

    Forward chains use the composition identities quoted in the module
    docstring.  Inverse chains use the symmetry F_P^{-1} = sigma F_P sigma
    with sigma the letter swap X <-> Y, so a single engine serves both.
    """
    if target not in ("X", "Y"):
        raise ValueError("target must be X or Y")
    budget = budget or Budget()
    if direction == "fwd":
        return _forward_chain(specs, budget)
    if direction != "inv":
        raise ValueError(f"unknown direction {direction!r}")
    fwd = _forward_chain(list(specs), budget)
    return ChainResult(
        specs=specs, direction="inv",
        xs=[f.swap_letters() for f in fwd.ys],
        ys=[f.swap_letters() for f in fwd.xs],
        truncated_at=fwd.truncated_at,
    )


def forward_chain_for(model: Model, m: int, budget: Budget | None = None) -> ChainResult:
    """The chain (P_1, ..., P_m) of the model's period-4 polynomial sequence."""
    return iterate_chain([model.p_k(k) for k in range(1, m + 1)], budget=budget)


Q_ELEMENT = NCLaurent.from_word(Q_WORD)
