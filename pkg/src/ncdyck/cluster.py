"""Non-commutative weights of graded Dyck paths and the cluster-variable sums.

The sum of the weights of all compatible bounded gradings of D_m reproduces
the value of the automorphism chain on the generator Y; this module builds
those sums, their per-omega_H summands, the piecewise-compatible and
non-compatible variants, and the collapse checks used to certify them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional

from .coeff import CoeffPoly, Model
from .dyck import ChebyshevTable, DyckPath, decompose_recursive, standard_path
from .grading import (Half, enumerate_compatible, enumerate_half,
                      enumerate_vertical, hgc_first_zeros, is_compatible,
                      restrictions, shadow_stat, vgc_last_zeros)
from .ncalg import Budget, NCLaurent, Word, iterate_chain, word_mul, Q_ELEMENT


class HypothesisNotMet(RuntimeError):
    """A collapse statement was invoked outside its hypotheses."""


def edge_weight(model: Model, kind: str, value: int) -> NCLaurent:
    """The weight monomial of a single edge.

    Horizontal: p_{1,w} Y^w X^-1.  Vertical: p_{2,d2-w} X^{w+1} Y^-1 X^-1.
    Use ``model.primed()`` for primed-side weights.
    """
    if kind == "H":
        coeff = model.h_coeff(value)
        word: Word = ((("Y", value),) if value else ()) + (("X", -1),)
    else:
        coeff = model.v_coeff(value)
        word = (("X", value + 1), ("Y", -1), ("X", -1))
    out = NCLaurent.zero()
    out.terms[word] = coeff
    return out


def _weight_word(path: DyckPath, omega_h: Half, omega_v: Half) -> tuple[Word, list[tuple[str, int]]]:
    """The reduced word of the ordered edge-weight product, plus the list of
    (kind, value) pairs for coefficient bookkeeping."""
    word: Word = ()
    kinds: list[tuple[str, int]] = []
    hi = vi = 0
    for s in path.steps:
        if s == "H":
            w = omega_h[hi]
            piece: Word = ((("Y", w),) if w else ()) + (("X", -1),)
            kinds.append(("H", w))
            hi += 1
        else:
            w = omega_v[vi]
            piece = (("X", w + 1), ("Y", -1), ("X", -1))
            kinds.append(("V", w))
            vi += 1
        word = word_mul(word, piece)
    return word, kinds


def y_of_grading(model: Model, path: DyckPath, omega_h: Half, omega_v: Half) -> NCLaurent:
    """The weight monomial of a single grading: the ordered product of the
    edge weights along the path."""
    word, kinds = _weight_word(path, omega_h, omega_v)
    coeff = CoeffPoly.one()
    for kind, w in kinds:
        c = model.h_coeff(w) if kind == "H" else model.v_coeff(w)
        coeff = coeff * c
    out = NCLaurent.zero()
    out.terms[word] = coeff
    return out


def _accumulate(model: Model, path: DyckPath,
                pairs: Iterator[tuple[Half, Half]],
                budget: Optional[Budget]) -> tuple[NCLaurent, int]:
    total = NCLaurent.zero()
    count = 0
    for oh, ov in pairs:
        total = total + y_of_grading(model, path, oh, ov)
        count += 1
        if budget is not None:
            budget.charge_work(path.num_edges)
            budget.check_terms(total.num_terms())
    return total, count


@dataclass
class ClusterExpansion:
    """A weighted sum over a family of gradings of one path."""

    path: DyckPath
    mode: str
    value: NCLaurent
    count: int
    summands: dict[Half, NCLaurent] = field(default_factory=dict)


def y_total(model: Model, path: DyckPath, budget: Optional[Budget] = None,
            keep_summands: bool = False) -> ClusterExpansion:
    """Y_D: the sum over all compatible bounded gradings."""
    total = NCLaurent.zero()
    count = 0
    summands: dict[Half, NCLaurent] = {}
    for oh in enumerate_half(path.rect.a1, model.d1):
        part, n = _accumulate(model, path,
                              enumerate_compatible(path, model.d1, model.d2, fixed_h=oh),
                              budget)
        total = total + part
        count += n
        if keep_summands:
            summands[oh] = part
        if budget is not None:
            budget.check_terms(total.num_terms())
    return ClusterExpansion(path, "all", total, count, summands)


def y_of_omega_h(model: Model, path: DyckPath, omega_h: Half,
                 budget: Optional[Budget] = None) -> ClusterExpansion:
    """Y_D(omega_H): the sum over compatible gradings extending omega_H."""
    value, count = _accumulate(
        model, path, enumerate_compatible(path, model.d1, model.d2, fixed_h=omega_h),
        budget)
    return ClusterExpansion(path, "fixed_h", value, count)


def y_of_omega_v(model: Model, path: DyckPath, omega_v: Half,
                 budget: Optional[Budget] = None) -> ClusterExpansion:
    """The dual summand with the vertical half fixed; on a primed path pass
    the primed model."""
    value, count = _accumulate(
        model, path, enumerate_compatible(path, model.d1, model.d2, fixed_v=omega_v),
        budget)
    return ClusterExpansion(path, "fixed_v", value, count)


def enumerate_pc(table: ChebyshevTable, m: int,
                 fixed_h: Optional[Half] = None,
                 fixed_v: Optional[Half] = None,
                 primed: bool = False) -> Iterator[tuple[Half, Half]]:
    """Piecewise compatible gradings of D_m (or D'_m), optionally with one
    half fixed, generated copy by copy.

    With ``fixed_h`` the free data are the vertical values (the usual
    restriction rule); with ``fixed_v`` on a primed path the free data are
    the horizontal values (the alternate rule).  Per-copy independence of the
    restrictions makes the product construction exact.
    """
    t = table.swapped() if primed else table
    dec = decompose_recursive(t, m)
    path = dec.path
    prev = dec.previous
    # bounds: horizontal values of D'_m are d2-bounded, vertical d1-bounded
    db1, db2 = (table.d2, table.d1) if primed else (table.d1, table.d2)

    removed = prev.steps[:dec.removed_len]
    rem_h = removed.count("H")
    rem_v = removed.count("V")

    if fixed_h is not None and not primed:
        parts = restrictions(table, m, fixed_h, (0,) * path.rect.a2, primed=False)
        choices: list[list[Half]] = []
        for oh_r, _ in parts[:-1]:
            choices.append(list(enumerate_vertical(prev, db2, oh_r)))
        ext_h = parts[-1][0]
        last: list[Half] = []
        for ov in enumerate_vertical(prev, db2, ext_h):
            if all(x == 0 for x in ov[:rem_v]):
                last.append(ov[rem_v:])
        choices.append(last)
        for combo in product(*choices):
            yield fixed_h, tuple(x for ov in combo for x in ov)
        return

    if fixed_v is not None and primed:
        parts = restrictions(table, m, (0,) * path.rect.a1, fixed_v, primed=True)
        choices = []
        for _, ov_r in parts[:-1]:
            choices.append([oh for oh, _ in
                            enumerate_compatible(prev, db1, db2, fixed_v=ov_r)])
        ext_v = parts[-1][1]
        last = []
        for oh, _ in enumerate_compatible(prev, db1, db2, fixed_v=ext_v):
            if all(x == 0 for x in oh[:rem_h]):
                last.append(oh[rem_h:])
        choices.append(last)
        for combo in product(*choices):
            yield tuple(x for oh in combo for x in oh), fixed_v
        return

    # general scan: brute force over the free halves
    from .grading import is_piecewise_compatible
    halves_h = [fixed_h] if fixed_h is not None else list(enumerate_half(path.rect.a1, db1))
    for oh in halves_h:
        for ov in ([fixed_v] if fixed_v is not None
                   else enumerate_half(path.rect.a2, db2)):
            if is_piecewise_compatible(table, m, oh, ov, primed=primed):
                yield oh, ov


def y_pc(model: Model, table: ChebyshevTable, m: int, fixed_h: Optional[Half] = None,
         fixed_v: Optional[Half] = None, primed: bool = False,
         budget: Optional[Budget] = None) -> ClusterExpansion:
    """Sum over piecewise compatible gradings with one half fixed."""
    t = table.swapped() if primed else table
    path = standard_path(t, m)
    mdl = model.primed() if primed else model
    value, count = _accumulate(
        mdl, path, enumerate_pc(table, m, fixed_h=fixed_h, fixed_v=fixed_v, primed=primed),
        budget)
    return ClusterExpansion(path, "pc", value, count)


def y_nc(model: Model, table: ChebyshevTable, m: int, fixed_h: Optional[Half] = None,
         fixed_v: Optional[Half] = None, primed: bool = False,
         budget: Optional[Budget] = None) -> ClusterExpansion:
    """Sum over piecewise compatible gradings that are not compatible."""
    t = table.swapped() if primed else table
    path = standard_path(t, m)
    mdl = model.primed() if primed else model
    pairs = ((oh, ov) for oh, ov in
             enumerate_pc(table, m, fixed_h=fixed_h, fixed_v=fixed_v, primed=primed)
             if not is_compatible(path, oh, ov))
    value, count = _accumulate(mdl, path, pairs, budget)
    return ClusterExpansion(path, "nc", value, count)


def collapse_check(model: Model, path: DyckPath, omega_h: Half, omega_v: Half) -> NCLaurent:
    """Certify the single-monomial collapse of a compatible grading whose
    first horizontal edge shadows the whole path.

    Hypotheses (verified, not assumed): the grading is compatible; the local
    shadow path of h_1 is the whole path with statistic zero; and omega_V is
    greedily maximal among compatible vertical gradings.  Returns the weight,
    asserting it equals p X^-1.
    """
    a1, a2 = path.rect
    if a1 < 1:
        raise HypothesisNotMet("the path needs a horizontal edge")
    if not is_compatible(path, omega_h, omega_v):
        raise HypothesisNotMet("grading is not compatible")
    if path.steps[0] != "H":
        raise HypothesisNotMet("the path must start with h_1")
    firsts = hgc_first_zeros(path, omega_h)
    end = len(path.steps) - 1
    if firsts[0] != end:
        raise HypothesisNotMet("local shadow of h_1 is not the whole path with statistic zero")
    # maximality is against *all* compatible completions, not just the
    # d2-bounded ones; given the shadow hypothesis a compatible value never
    # exceeds the number of preceding horizontal edges, so a1 + d2 is safe
    for chi in enumerate_vertical(path, a1 + model.d2, omega_h):
        if chi == omega_v:
            continue
        for s in range(a2):
            if chi[s] != omega_v[s]:
                if chi[s] > omega_v[s]:
                    raise HypothesisNotMet(
                        f"vertical grading is not greedily maximal at v_{s + 1}")
                break
    value = y_of_grading(model, path, omega_h, omega_v)
    word, coeff = value.monomial()
    if word != (("X", -1),):
        raise AssertionError(f"collapse failed: got word {word}")
    return value


def blocking_collapse(model: Model, table: ChebyshevTable, m: int,
                      omega_h: Half, omega_v: Half) -> NCLaurent:
    """For a piecewise compatible, non-compatible grading with blocking edge
    h_i: the weight of the terminal path h_i .. v_last equals
    p_{1,w_H(h_{i-1+d})} p_{2,d2-w_V(v_{last-t+1})} YXY^-1X^-1."""
    from .grading import find_blocking, is_piecewise_compatible
    path = standard_path(table, m)
    if not is_piecewise_compatible(table, m, omega_h, omega_v):
        raise HypothesisNotMet("grading is not piecewise compatible")
    if is_compatible(path, omega_h, omega_v):
        raise HypothesisNotMet("grading is compatible")
    cert = find_blocking(table, m, omega_h, omega_v)
    if cert.index is None:
        raise HypothesisNotMet("no blocking edge")
    i = cert.index
    p = path.h_positions[i - 1]
    a1, a2 = path.rect
    if shadow_stat(path, omega_h, "H", p, path.num_edges - 1) != 0:
        raise HypothesisNotMet(
            "horizontal shadow statistic of the terminal path is nonzero")
    tail_h = omega_h[i - 1:]
    start_v = path.steps[:p].count("V")
    tail_v = omega_v[start_v:]
    word: Word = ()
    coeff = CoeffPoly.one()
    hi, vi = 0, 0
    for s in path.steps[p:]:
        if s == "H":
            w = tail_h[hi]
            hi += 1
            word = word_mul(word, ((("Y", w),) if w else ()) + (("X", -1),))
            coeff = coeff * model.h_coeff(w)
        else:
            w = tail_v[vi]
            vi += 1
            word = word_mul(word, (("X", w + 1), ("Y", -1), ("X", -1)))
            coeff = coeff * model.v_coeff(w)
    d = cert.support_h_count
    t = cert.support_v_count
    expected = model.h_coeff(omega_h[i - 1 + d - 1]) * model.v_coeff(omega_v[a2 - t])
    if word != (("Y", 1), ("X", 1), ("Y", -1), ("X", -1)):
        raise AssertionError(f"blocking collapse failed: word {word}")
    if coeff != expected:
        raise AssertionError(f"blocking collapse coefficient {coeff} != {expected}")
    out = NCLaurent.zero()
    out.terms[word] = coeff
    return out


@dataclass
class MainReport:
    """Per-depth outcome of checking the combinatorial sum against the
    automorphism chain."""

    m: int
    equal: bool
    pseudo_positive: bool
    q_shift: bool
    first_difference: Optional[str] = None
    grading_count: int = 0
    truncated: bool = False


def verify_main(model: Model, m_max: int, budget: Optional[Budget] = None) -> list[MainReport]:
    """For each m <= m_max within budget: Y_{D_m} == chain value, termwise
    pseudo-positivity, and Q X_{m+1} == Y_m."""
    if model.d1 * model.d2 < 4:
        raise ValueError("the combinatorial construction needs d1*d2 >= 4")
    budget = budget or Budget()
    table = ChebyshevTable(model.d1, model.d2)
    chain = iterate_chain([model.p_k(k) for k in range(1, m_max + 1)], "Y",
                          direction="fwd", budget=budget)
    reports: list[MainReport] = []
    depth = chain.depth
    for m in range(1, m_max + 1):
        if m > depth:
            reports.append(MainReport(m, False, False, False, "chain truncated",
                                      truncated=True))
            continue
        path = standard_path(table, m)
        exp = y_total(model, path, budget=budget)
        ym = chain.ys[m]
        equal = exp.value == ym
        diff = None if equal else exp.value.first_difference(ym)
        pos = ym.is_pseudo_positive() and chain.xs[m].is_pseudo_positive()
        qx = Q_ELEMENT.mul(chain.xs[m], budget) == chain.ys[m - 1] if m >= 1 else True
        reports.append(MainReport(m, equal, pos, qx, diff, exp.count))
    return reports
