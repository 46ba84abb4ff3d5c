"""Shared property-suite drivers used by both the unit tests and the
acceptance gate.

Everything here asserts on failure (with a witness tuple) and returns a
small statistic so callers can check non-vacuity.
"""
from itertools import product

from ncdyck.coeff import CoeffPoly, symbolic_model
from ncdyck.dyck import ChebyshevTable, standard_path, decompose_recursive
from ncdyck.grading import (enumerate_half, enumerate_compatible,
                            is_compatible, is_piecewise_compatible,
                            shadow_stat, shadow_report, transfer_maps,
                            hgc_first_zeros, vgc_last_zeros, find_blocking,
                            restrictions)
from ncdyck.ncalg import Budget, NCLaurent, TermBudgetExceeded
from ncdyck.cluster import (HypothesisNotMet, blocking_collapse,
                            collapse_check, enumerate_pc, y_nc,
                            y_of_grading, y_of_omega_h, y_of_omega_v, y_pc)


class StepCapBudget(Budget):
    """A budget that additionally caps each *single* multiplication.

    ``charge_work`` receives the number of unreduced word products of one
    multiplication, so the per-call cap bounds the words any one chain step
    may touch; a recursion step whose product would exceed it truncates
    before allocating anything.
    """

    def __init__(self, max_terms: int = 500_000, max_work: int = 10 ** 12,
                 max_step: int = 500_000):
        super().__init__(max_terms, max_work)
        self.max_step = max_step

    def charge_work(self, n: int) -> None:
        if n > self.max_step:
            raise TermBudgetExceeded(
                f"single product of {n} words exceeds the step cap {self.max_step}")
        super().charge_work(n)


# ---------------------------------------------------------------------------
# grading-pair predicates


def hgc_holds(firsts, i, q):
    f = firsts[i - 1]
    return f is not None and f < q


def vgc_holds(lasts, t, p):
    e = lasts[t - 1]
    return e is not None and e > p


def check_compatibility_inequality(path, d1, d2):
    """A negative shadow statistic on h..v forces the corresponding grading
    condition to hold for that pair (both orientations)."""
    hp, vp = path.h_positions, path.v_positions
    for oh in enumerate_half(path.rect.a1, d1):
        firsts = hgc_first_zeros(path, oh)
        for i, p in enumerate(hp, start=1):
            for t, q in enumerate(vp, start=1):
                if q < p:
                    continue
                if shadow_stat(path, oh, "H", p, q) < 0:
                    assert hgc_holds(firsts, i, q), (path.steps, oh, i, t)
    for ov in enumerate_half(path.rect.a2, d2):
        lasts = vgc_last_zeros(path, ov)
        for i, p in enumerate(hp, start=1):
            for t, q in enumerate(vp, start=1):
                if q < p:
                    continue
                if shadow_stat(path, ov, "V", p, q) < 0:
                    assert vgc_holds(lasts, t, p), (path.steps, ov, i, t)


def rsh_supported(path, remote, d2):
    """All vertical gradings bounded by d2 and supported on the remote
    shadow of a fixed horizontal grading."""
    a2 = path.rect.a2
    slots = sorted(set(remote))
    for vals in product(range(d2 + 1), repeat=len(slots)):
        ov = [0] * a2
        for s, v in zip(slots, vals):
            ov[s - 1] = v
        yield tuple(ov)


def check_transfer_properties(table, m):
    """Compatibility transfers across the index-raising maps: the pair
    (omega_H, omega_V) with omega_V supported on the remote shadow is
    compatible iff the transferred pair is; the shadow statistics of
    corresponding spans agree; and piecewise compatibility transfers to the
    primed path one index up."""
    d1, d2 = table.d1, table.d2
    src = standard_path(table, m)
    for oh in enumerate_half(src.rect.a1, d1):
        tm = transfer_maps(table, m, oh)
        tgt = tm.target
        rep = shadow_report(src, oh, "H")
        for ov in rsh_supported(src, rep.remote, d2):
            chi = tm.omega(ov)
            lhs = is_compatible(src, oh, ov)
            rhs = is_compatible(tgt, chi, tm.phi)
            assert lhs == rhs, ("equiv", d1, d2, m, oh, ov)
            for (j, d), vs in rep.blocks.items():
                for v in vs:
                    if ov[v - 1] == 0:
                        continue
                    hprime = tm.theta[v]
                    lhs_f = shadow_stat(tgt, chi, "H",
                                        tgt.h_positions[hprime - 1],
                                        tgt.v_positions[d - 1])
                    rhs_f = shadow_stat(src, ov, "V",
                                        src.h_positions[j - 1],
                                        src.v_positions[v - 1])
                    assert lhs_f == rhs_f, ("stat", m, oh, ov, v, hprime,
                                            (j, d), lhs_f, rhs_f)
            if m >= 3:
                a = is_piecewise_compatible(table, m, oh, ov)
                b = is_piecewise_compatible(table, m + 1, chi, tm.phi,
                                            primed=True)
                assert a == b, ("piecewise", d1, d2, m, oh, ov)


# ---------------------------------------------------------------------------
# piecewise-compatible enumeration and the blocking-edge suite


def enumerate_pw(table, m, primed=False):
    """All piecewise compatible gradings of the index-m path, built as a
    product of per-copy compatible gradings with forced values on the
    removed prefix of the last copy."""
    t = table.swapped() if primed else table
    d1, d2 = (table.d2, table.d1) if primed else (table.d1, table.d2)
    dec = decompose_recursive(t, m)
    prev = dec.previous
    comp = list(enumerate_compatible(prev, d1, d2))
    removed = prev.steps[:dec.removed_len]
    forced = []
    for pos, s in enumerate(removed):
        if not primed:
            if s == "H":
                run = 0
                while pos + 1 + run < len(removed) and removed[pos + 1 + run] == "V":
                    run += 1
                forced.append(run)
            else:
                forced.append(0)
        else:
            if s == "V":
                run = 0
                while pos - 1 - run >= 0 and removed[pos - 1 - run] == "H":
                    run += 1
                forced.append(run)
            else:
                forced.append(0)

    def values(oh, ov):
        out = []
        hi = vi = 0
        for s in prev.steps:
            if s == "H":
                out.append(oh[hi])
                hi += 1
            else:
                out.append(ov[vi])
                vi += 1
        return out

    full = [values(oh, ov) for oh, ov in comp]
    last = [v[dec.removed_len:] for v in full if v[:dec.removed_len] == forced]
    n_full = len(dec.copies)
    path = dec.path
    for combo in product(*([full] * n_full + [last])):
        vals = [x for part in combo for x in part]
        oh = tuple(v for s, v in zip(path.steps, vals) if s == "H")
        ov = tuple(v for s, v in zip(path.steps, vals) if s == "V")
        yield oh, ov


def check_pw_enumeration(table, m):
    path = standard_path(table, m)
    got = set(enumerate_pw(table, m))
    want = {(oh, ov)
            for oh in enumerate_half(path.rect.a1, table.d1)
            for ov in enumerate_half(path.rect.a2, table.d2)
            if is_piecewise_compatible(table, m, oh, ov)}
    assert got == want, (table.d1, table.d2, m, len(got), len(want))


def check_blocking_suite(table, m, extras=True):
    """Blocking-edge conditions over every piecewise compatible grading.

    Covers: no blocking edge implies compatible; automatic compatibility
    when the recursion degree is 1; the structure of the terminal path and
    the justification properties of incompatible gradings; the strong
    justification implication; the support/remote-shadow identity; and the
    maximality of the incompatible grading on the tail.  Returns the number
    of incompatible gradings encountered (for non-vacuity checks).
    """
    d1, d2 = table.d1, table.d2
    path = standard_path(table, m)
    a1, a2 = path.rect
    end = len(path.steps) - 1
    delta1 = table.delta(1)
    d_m = table.degree(m)
    n_incomp = 0
    max_v = {}
    max_h = {}
    if extras:
        # elementwise maxima of compatible partners, for the maximality check
        for coh, cov in enumerate_compatible(path, d1, d2):
            cur = max_v.get(coh)
            max_v[coh] = cov if cur is None else tuple(map(max, cur, cov))
            cur = max_h.get(cov)
            max_h[cov] = coh if cur is None else tuple(map(max, cur, coh))
    for oh, ov in enumerate_pw(table, m):
        comp = is_compatible(path, oh, ov)
        cert = find_blocking(table, m, oh, ov)
        if cert.index is None:
            assert comp, ("no-blocking-edge", oh, ov)
            continue
        if d_m == 1:
            assert comp, ("automatic", oh, ov)
        i = cert.index
        p = path.h_positions[i - 1]
        lasts = vgc_last_zeros(path, ov)
        if cert.strongly_right_justified:
            assert cert.left_justified, ("strong-implication-left", oh, ov)
            rsh_v = {j for j in shadow_report(path, ov, "V").remote
                     if path.h_positions[j - 1] >= p}
            supp_h_tail = {j for j in range(i, a1 + 1)
                           if oh[j - 1] > 0 and path.h_positions[j - 1] >= p}
            assert supp_h_tail == rsh_v, ("strong-implication-support",
                                          oh, ov, supp_h_tail, rsh_v)
        if comp:
            continue
        n_incomp += 1
        assert lasts[a2 - 1] == p, ("terminal-span", oh, ov, lasts[a2 - 1], p)
        assert shadow_stat(path, ov, "V", p, end) == 0, ("terminal-stat", oh, ov)
        assert cert.left_justified, ("left-justified", oh, ov)
        assert cert.strongly_right_justified, ("strongly-right", oh, ov)
        if m >= 4:
            assert shadow_stat(path, oh, "H", p, end) == 0, ("h-stat", oh, ov)
            assert cert.strongly_left_justified, ("strongly-left", oh, ov)
            if cert.support_h_count > 1:
                assert path.height(i + 1) == path.height(i) + delta1, \
                    ("height-step", oh, ov)
        supp_v = {t for t in range(1, a2 + 1)
                  if ov[t - 1] > 0 and path.v_positions[t - 1] > p}
        rsh_h = {t for t in shadow_report(path, oh, "H").remote
                 if path.v_positions[t - 1] > p}
        assert supp_v == rsh_h, ("support-remote-shadow", oh, ov, supp_v, rsh_h)
        if extras:
            mv = max_v.get(oh)
            if mv is not None:
                for t in range(1, a2 + 1):
                    if path.v_positions[t - 1] > p:
                        assert mv[t - 1] <= ov[t - 1], ("max-vertical", oh, ov, mv)
            mh = max_h.get(ov)
            if mh is not None:
                for j in range(1, a1 + 1):
                    if path.h_positions[j - 1] >= p:
                        assert mh[j - 1] <= oh[j - 1], ("max-horizontal", oh, ov, mh)
    return n_incomp


# ---------------------------------------------------------------------------
# collapse statements


def run_collapse_suite(d1, d2, m):
    """Exercise both collapse statements over every piecewise compatible
    grading of the index-m path.

    Returns (n_single, n_blocking, n_outside): counts of gradings certified
    to collapse to p X^-1, of incompatible gradings whose terminal path
    collapses to p YXY^-1X^-1, and of incompatible gradings outside the
    zero-statistic hypothesis of the latter statement.
    """
    model = symbolic_model(d1, d2)
    table = ChebyshevTable(d1, d2)
    path = standard_path(table, m)
    n_single = n_blocking = n_outside = 0
    for oh, ov in enumerate_pw(table, m):
        if is_compatible(path, oh, ov):
            try:
                collapse_check(model, path, oh, ov)
                n_single += 1
            except HypothesisNotMet:
                pass
        else:
            try:
                blocking_collapse(model, table, m, oh, ov)
                n_blocking += 1
            except HypothesisNotMet:
                n_outside += 1
    return n_single, n_blocking, n_outside


# ---------------------------------------------------------------------------
# factorization identities


def mono(word, coeff=None):
    out = NCLaurent.zero()
    out.terms[word] = coeff if coeff is not None else CoeffPoly.one()
    return out


def scaled_eq(lhs, rhs, factors):
    """lhs * prod(p^e) == rhs, with negative exponents moved across."""
    l, r = lhs, rhs
    for p, e in factors:
        if e >= 0:
            r = r.scale(p ** e)
        else:
            l = l.scale(p ** (-e))
    return l == r


def middle_coeff_factors(model, n_v, n_h):
    """The scalar of the copy-product factorizations as (poly, exp) pairs:
    p11^{-n_v} when d2 > 1, else p11^{n_v - 2 n_h} p12^{n_h - n_v}."""
    p11 = model.P1.coefficient(1)
    if model.d2 > 1:
        return [(p11, -n_v)]
    p12 = model.P1.coefficient(2)
    return [(p11, n_v - 2 * n_h), (p12, n_h - n_v)]


def check_factorization_h(d1, d2, m, limit=None):
    """Horizontal copy-product factorization of the piecewise-compatible sum
    with a fixed horizontal half."""
    model = symbolic_model(d1, d2)
    t = ChebyshevTable(d1, d2)
    delta = t.delta(m)
    prev = standard_path(t, m - 1)
    path = standard_path(t, m)
    small = standard_path(t, m - 2 - delta)
    n_h, n_v = small.rect.a1, small.rect.a2
    bud = Budget()
    oh_space = list(enumerate_half(path.rect.a1, d1))
    if limit:
        oh_space = oh_space[:limit]
    for oh in oh_space:
        parts = restrictions(t, m, oh, (0,) * path.rect.a2)
        lhs = y_pc(model, t, m, fixed_h=oh, budget=bud).value
        rhs = NCLaurent.one()
        for oh_r, _ in parts[:-1]:
            rhs = rhs.mul(y_of_omega_h(model, prev, oh_r).value, bud)
        rhs = rhs.mul(mono((("X", n_h),)), bud)
        rhs = rhs.mul(y_of_omega_h(model, prev, parts[-1][0]).value, bud)
        if d2 > 1 or m == 3:
            factors = [(model.P1.coefficient(1), -n_v)]
        else:
            factors = middle_coeff_factors(model, n_v, n_h)
        assert scaled_eq(lhs, rhs, factors), ("factorization-h", d1, d2, m, oh)
    return len(oh_space)


def check_factorization_v(d1, d2, m, exponent_variant="corrected", limit=None):
    """Vertical (primed-path) copy-product factorization, one index up.

    ``exponent_variant`` selects the d2=1 middle coefficient: "corrected"
    uses the exponent consistent with the horizontal factorization
    (p11^{|V|-2|H|} p12^{|H|-|V|}); "printed" uses p11^{-|H|} p12^{|H|-|V|}.
    Returns True when every grading satisfies the identity, else the first
    witness.
    """
    model = symbolic_model(d1, d2)
    mp = model.primed()
    t = ChebyshevTable(d1, d2)
    ts = t.swapped()
    big = m + 1
    delta = t.delta(m)
    prevp = standard_path(ts, big - 1)
    pathp = standard_path(ts, big)
    smallp = standard_path(ts, m - 1 - delta)
    small = standard_path(t, m - 2 - delta)
    n_h, n_v = small.rect.a1, small.rect.a2
    n_vp = smallp.rect.a2
    bud = Budget()
    ov_space = list(enumerate_half(pathp.rect.a2, d1))
    if limit:
        ov_space = ov_space[:limit]
    for ovp in ov_space:
        parts = restrictions(t, big, (0,) * pathp.rect.a1, ovp, primed=True)
        lhs = y_pc(model, t, big, fixed_v=ovp, primed=True, budget=bud).value
        rhs = NCLaurent.one()
        for _, ov_r in parts[:-1]:
            rhs = rhs.mul(y_of_omega_v(mp, prevp, ov_r).value, bud)
        rhs = rhs.mul(mono((("X", 1), ("Y", n_vp), ("X", -1))), bud)
        rhs = rhs.mul(y_of_omega_v(mp, prevp, parts[-1][1]).value, bud)
        if d2 > 1:
            factors = [(model.P1.coefficient(1), -n_v)]
        elif exponent_variant == "printed":
            factors = [(model.P1.coefficient(1), -n_h),
                       (model.P1.coefficient(2), n_h - n_v)]
        else:
            factors = middle_coeff_factors(model, n_v, n_h)
        if not scaled_eq(lhs, rhs, factors):
            return ("factorization-v", d1, d2, m, ovp)
    return True


def check_factorization_v_degree4(d1, limit=None):
    """d2 = 1 factorization of the primed index-4 piecewise-compatible sum:
    product of d1-1 copies with a single X inserted before the last, whose
    horizontal completions are restricted to vanish on the removed-prefix
    horizontals."""
    model = symbolic_model(d1, 1)
    mp = model.primed()
    t = ChebyshevTable(d1, 1)
    ts = t.swapped()
    decp = decompose_recursive(ts, 4)
    prevp = decp.previous
    pathp = decp.path
    rem_h = prevp.steps[:decp.removed_len].count("H")
    bud = Budget()
    ov_space = list(enumerate_half(pathp.rect.a2, d1))
    if limit:
        ov_space = ov_space[:limit]
    for ovp in ov_space:
        parts = restrictions(t, 4, (0,) * pathp.rect.a1, ovp, primed=True)
        assert len(parts) == d1 - 1
        lhs = y_pc(model, t, 4, fixed_v=ovp, primed=True, budget=bud).value
        rhs = NCLaurent.one()
        for _, ov_r in parts[:-1]:
            rhs = rhs.mul(y_of_omega_v(mp, prevp, ov_r).value, bud)
        rhs = rhs.mul(mono((("X", 1),)), bud)
        last = NCLaurent.zero()
        for ohp, ov_r in enumerate_compatible(prevp, 1, d1,
                                              fixed_v=parts[-1][1]):
            if all(ohp[k] == 0 for k in range(rem_h)):
                last = last + y_of_grading(mp, prevp, ohp, ov_r)
        rhs = rhs.mul(last, bud)
        assert lhs == rhs, ("factorization-v4", d1, ovp)
    return len(ov_space)


def _incompatible_horizontals(table, m):
    """Distinct horizontal halves admitting a piecewise compatible,
    non-compatible completion, each with one witness vertical half."""
    path = standard_path(table, m)
    seen = {}
    for oh in enumerate_half(path.rect.a1, table.d1):
        for _, ov in enumerate_pc(table, m, fixed_h=oh):
            if not is_compatible(path, oh, ov):
                seen.setdefault(oh, ov)
                break
    return seen


def check_incompatible_factorization_h(d1, d2, m, limit=None):
    """Factorization of the incompatible part of the piecewise-compatible
    sum with a fixed horizontal half.  The middle word carries Y^{1+f} with
    f the horizontal shadow statistic of the terminal path (zero for
    m >= 4)."""
    model = symbolic_model(d1, d2)
    t = ChebyshevTable(d1, d2)
    dec = decompose_recursive(t, m)
    path = dec.path
    prev = dec.previous
    a1_prev = prev.rect.a1
    bud = Budget()
    items = list(_incompatible_horizontals(t, m).items())
    if limit:
        items = items[:limit]
    for oh, ov_star in items:
        cert = find_blocking(t, m, oh, ov_star)
        i = cert.index
        d = cert.support_h_count
        tt = cert.support_v_count
        s = -(-i // a1_prev)  # copy index of the blocking edge
        iloc = i - (s - 1) * a1_prev
        parts = restrictions(t, m, oh, (0,) * path.rect.a2)
        chi = list(parts[s - 1][0])
        for j in range(iloc, a1_prev + 1):
            chi[j - 1] = prev.verticals_following(j)
        ploc = prev.h_positions[iloc - 1]
        n_h = prev.steps[ploc:].count("H")
        n_v = prev.steps[ploc:].count("V")
        p2 = (model.h_coeff(oh[i - 1 + d - 1]) *
              model.v_coeff(ov_star[path.rect.a2 - tt]))
        f = shadow_stat(path, oh, "H", path.h_positions[i - 1],
                        path.num_edges - 1)
        lhs = y_nc(model, t, m, fixed_h=oh, budget=bud).value
        rhs = NCLaurent.one()
        for r in range(s - 1):
            rhs = rhs.mul(y_of_omega_h(model, prev, parts[r][0]).value, bud)
        rhs = rhs.mul(y_of_omega_h(model, prev, tuple(chi)).value, bud)
        rhs = rhs.mul(mono((("X", n_h),)), bud)
        rhs = rhs.mul(mono((("Y", 1 + f), ("X", 1), ("Y", -1), ("X", -1)),
                           p2), bud)
        ok = scaled_eq(lhs, rhs, middle_coeff_factors(model, n_v, n_h))
        assert ok, ("incompatible-h", d1, d2, m, oh, i, s)
    return len(items)


def _incompatible_verticals(table, big):
    """Distinct primed vertical halves admitting a piecewise compatible,
    non-compatible completion on the primed index-``big`` path."""
    ts = table.swapped()
    pathp = standard_path(ts, big)
    seen = {}
    for ovp in enumerate_half(pathp.rect.a2, table.d1):
        for ohp, _ in enumerate_pc(table, big, fixed_v=ovp, primed=True):
            if not is_compatible(pathp, ohp, ovp):
                seen.setdefault(ovp, ohp)
                break
    return seen


def check_incompatible_factorization_v(d1, d2, m, limit=None):
    """Primed analog of the incompatible factorization, one index up.

    The forced vertical values count the immediately preceding horizontals
    within the forced segment (which starts mid-copy at the blocking edge),
    and the middle coefficient is the product of the forced verticals'
    primed edge coefficients.
    """
    model = symbolic_model(d1, d2)
    mp = model.primed()
    t = ChebyshevTable(d1, d2)
    ts = t.swapped()
    big = m + 1
    decp = decompose_recursive(ts, big)
    pathp = decp.path
    prevp = decp.previous
    prev = decompose_recursive(t, m).previous
    a1_prev = prev.rect.a1
    a2p = prevp.rect.a2
    bud = Budget()
    items = list(_incompatible_verticals(t, big).items())
    if limit:
        items = items[:limit]
    for ovp, oh_star in items:
        cert = find_blocking(t, big, oh_star, ovp, primed=True)
        j = cert.index
        d_cnt = cert.support_v_count
        t_cnt = cert.support_h_count
        pj = pathp.h_positions[j - 1]
        i = pathp.steps[:pj].count("V") + 1  # height of the blocking edge + 1
        s = -(-i // a1_prev)
        s_pos = next(r + 1 for r, (a, b) in
                     enumerate(list(decp.copies) + [decp.last_copy])
                     if a <= pj < b)
        assert s == s_pos, (s, s_pos, j, i)
        parts = restrictions(t, big, (0,) * pathp.rect.a1, ovp, primed=True)
        jloc_pos = pj - (s - 1) * prevp.num_edges
        chi = list(parts[s - 1][1])
        p1q = CoeffPoly.one()
        for tt in range(1, a2p + 1):
            vpos = prevp.v_positions[tt - 1]
            if vpos > jloc_pos:
                run = 0
                pos = vpos - 1
                while pos >= jloc_pos and prevp.steps[pos] == "H":
                    run += 1
                    pos -= 1
                chi[tt - 1] = run
                p1q = p1q * mp.v_coeff(run)
        n_vp = prevp.steps[jloc_pos:].count("V")
        c1 = model.h_coeff(d1 - ovp[pathp.rect.a2 - d_cnt])
        c2 = model.v_coeff(oh_star[j - 1 + t_cnt - 1])
        f = shadow_stat(pathp, oh_star, "H", pj, pathp.num_edges - 1)
        lhs = y_nc(model, t, big, fixed_v=ovp, primed=True, budget=bud).value
        rhs = NCLaurent.one()
        for r in range(s - 1):
            rhs = rhs.mul(y_of_omega_v(mp, prevp, parts[r][1]).value, bud)
        rhs = rhs.mul(y_of_omega_v(mp, prevp, tuple(chi)).value, bud)
        rhs = rhs.mul(mono((("X", 1), ("Y", n_vp), ("X", -1))), bud)
        rhs = rhs.mul(mono((("Y", 1 + f), ("X", 1), ("Y", -1), ("X", -1)),
                           c1 * c2), bud)
        assert lhs.scale(p1q) == rhs, ("incompatible-v", d1, d2, m, ovp, j, s)
    return len(items)
