"""Bounded edge gradings on maximal Dyck paths.

Implements the compatibility predicate (both the literal definition and a
first-zero optimized check), shadow statistics and (remote) shadows, the
transfer maps between gradings of D_m and D'_{m+1}, piecewise compatibility
with respect to the recursive path structure, blocking edges, and
enumeration of compatible gradings.

Edge conventions: horizontal edges h_1..h_{a1} and vertical edges v_1..v_{a2}
are 1-based labels; step positions into ``path.steps`` are 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from .dyck import ChebyshevTable, DyckPath, decompose_recursive, standard_path

Half = tuple[int, ...]


@dataclass(frozen=True)
class Grading:
    """A pair of bounded half-gradings on a path."""

    path: DyckPath
    omega_h: Half
    omega_v: Half

    def __post_init__(self):
        if len(self.omega_h) != self.path.rect.a1 or len(self.omega_v) != self.path.rect.a2:
            raise ValueError("grading length does not match the path")
        if any(x < 0 for x in self.omega_h + self.omega_v):
            raise ValueError("grading values must be nonnegative")

    def text(self) -> str:
        h = ",".join(str(x) for x in self.omega_h)
        v = ",".join(str(x) for x in self.omega_v)
        return f"H:[{h}] V:[{v}]"

    @staticmethod
    def parse(path: DyckPath, text: str) -> "Grading":
        parts = text.split()
        vals = {}
        for part in parts:
            key, _, body = part.partition(":")
            body = body.strip("[]")
            vals[key] = tuple(int(x) for x in body.split(",")) if body else ()
        return Grading(path, vals["H"], vals["V"])


def shadow_stat(path: DyckPath, half: Half, kind: str, start: int, stop: int) -> int:
    """f over the step span [start, stop] (0-based, inclusive); 0 if empty.

    kind 'H': -(number of verticals) + sum of omega_H over horizontals.
    kind 'V': -(number of horizontals) + sum of omega_V over verticals.
    """
    if start > stop:
        return 0
    total = 0
    hi = path.steps[:start].count("H")
    vi = start - hi
    for pos in range(start, stop + 1):
        if path.steps[pos] == "H":
            total += half[hi] if kind == "H" else -1
            hi += 1
        else:
            total += -1 if kind == "H" else half[vi]
            vi += 1
    return total


def _running_h(path: DyckPath, omega_h: Half) -> list[int]:
    """c[pos] = f_{omega_H} over steps[0..pos]."""
    out = []
    total = 0
    hi = 0
    for s in path.steps:
        if s == "H":
            total += omega_h[hi]
            hi += 1
        else:
            total -= 1
        out.append(total)
    return out


def _running_v(path: DyckPath, omega_v: Half) -> list[int]:
    """c[pos] = f_{omega_V} over steps[0..pos]."""
    out = []
    total = 0
    vi = 0
    for s in path.steps:
        if s == "V":
            total += omega_v[vi]
            vi += 1
        else:
            total -= 1
        out.append(total)
    return out


def hgc_first_zeros(path: DyckPath, omega_h: Half) -> list[Optional[int]]:
    """For each h_i (1-based), the first step position e >= pos(h_i) with
    f_{omega_H}(h_i..e) = 0, or None."""
    c = _running_h(path, omega_h)
    res: list[Optional[int]] = []
    for p in path.h_positions:
        base = c[p - 1] if p > 0 else 0
        found = None
        for e in range(p, len(path.steps)):
            if c[e] == base:
                found = e
                break
        res.append(found)
    return res


def vgc_last_zeros(path: DyckPath, omega_v: Half) -> list[Optional[int]]:
    """For each v_t (1-based), the last step position e <= pos(v_t) with
    f_{omega_V}(e..v_t) = 0, or None."""
    c = _running_v(path, omega_v)
    res: list[Optional[int]] = []
    for q in path.v_positions:
        found = None
        for e in range(q, -1, -1):
            prev = c[e - 1] if e > 0 else 0
            if c[q] - prev == 0:
                found = e
                break
        res.append(found)
    return res


def is_compatible_definitional(path: DyckPath, omega_h: Half, omega_v: Half) -> bool:
    """Literal check: every h before v admits an edge e on hv satisfying
    the horizontal or the vertical grading condition."""
    steps = path.steps
    n = len(steps)
    h_index = {}
    v_index = {}
    hi = vi = 0
    for pos, s in enumerate(steps):
        if s == "H":
            h_index[pos] = hi
            hi += 1
        else:
            v_index[pos] = vi
            vi += 1
    for p in path.h_positions:
        for q in path.v_positions:
            if q < p:
                continue
            ok = False
            # HGC at some e in [p, q-1]
            verts = 0
            sums = 0
            for e in range(p, q):
                if steps[e] == "H":
                    sums += omega_h[h_index[e]]
                else:
                    verts += 1
                if verts == sums:
                    ok = True
                    break
            if not ok:
                # VGC at some e in [p+1, q]
                horiz = 0
                sums = 0
                for e in range(q, p, -1):
                    if steps[e] == "V":
                        sums += omega_v[v_index[e]]
                    else:
                        horiz += 1
                    if horiz == sums:
                        ok = True
                        break
            if not ok:
                return False
    return True


def is_compatible(path: DyckPath, omega_h: Half, omega_v: Half) -> bool:
    """First-zero optimized compatibility check; agrees with the
    definitional version (tested)."""
    firsts = hgc_first_zeros(path, omega_h)
    lasts = vgc_last_zeros(path, omega_v)
    hp = path.h_positions
    vp = path.v_positions
    for i, p in enumerate(hp):
        f = firsts[i]
        for t, q in enumerate(vp):
            if q < p:
                continue
            if f is not None and f < q:
                continue
            e = lasts[t]
            if e is not None and e > p:
                continue
            return False
    return True


def pair_bit(path: DyckPath, i: int, t: int) -> int:
    """Bit index for the ordered pair (h_i, v_t), 1-based labels."""
    return (i - 1) * path.rect.a2 + (t - 1)


def full_pair_mask(path: DyckPath) -> int:
    mask = 0
    for i, p in enumerate(path.h_positions, start=1):
        for t, q in enumerate(path.v_positions, start=1):
            if p < q:
                mask |= 1 << pair_bit(path, i, t)
    return mask


def hgc_pair_mask(path: DyckPath, omega_h: Half) -> int:
    mask = 0
    firsts = hgc_first_zeros(path, omega_h)
    for i, p in enumerate(path.h_positions, start=1):
        f = firsts[i - 1]
        if f is None:
            continue
        for t, q in enumerate(path.v_positions, start=1):
            if p < q and f < q:
                mask |= 1 << pair_bit(path, i, t)
    return mask


def vgc_pair_mask(path: DyckPath, omega_v: Half) -> int:
    mask = 0
    lasts = vgc_last_zeros(path, omega_v)
    for t, q in enumerate(path.v_positions, start=1):
        e = lasts[t - 1]
        if e is None:
            continue
        for i, p in enumerate(path.h_positions, start=1):
            if p < q and e > p:
                mask |= 1 << pair_bit(path, i, t)
    return mask


@dataclass(frozen=True)
class ShadowReport:
    """Local shadow paths and (remote) shadows of one half-grading.

    For kind 'H' the shadow consists of vertical edges and blocks are keyed
    (j; d) = (first covering horizontal, depth); for kind 'V' the shadow
    consists of horizontal edges with keys (t; l) = (first covering vertical,
    height).
    """

    kind: str
    spans: dict[int, tuple[int, int]]
    local_same: dict[int, tuple[int, ...]]
    local_other: dict[int, tuple[int, ...]]
    shadow: tuple[int, ...]
    remote: tuple[int, ...]
    blocks: dict[tuple[int, int], tuple[int, ...]]
    local_remote: dict[int, tuple[int, ...]]


def shadow_report(path: DyckPath, half: Half, kind: str) -> ShadowReport:
    hp = path.h_positions
    vp = path.v_positions
    spans: dict[int, tuple[int, int]] = {}
    local_same: dict[int, tuple[int, ...]] = {}
    local_other: dict[int, tuple[int, ...]] = {}

    def labels_in(span: tuple[int, int], positions: tuple[int, ...]) -> tuple[int, ...]:
        a, b = span
        return tuple(k + 1 for k, pos in enumerate(positions) if a <= pos <= b)

    if kind == "H":
        firsts = hgc_first_zeros(path, half)
        for i, p in enumerate(hp, start=1):
            e = firsts[i - 1]
            spans[i] = (p, e if e is not None else len(path.steps) - 1)
            local_same[i] = labels_in(spans[i], hp)
            local_other[i] = labels_in(spans[i], vp)
        shadow = sorted({t for lv in local_other.values() for t in lv})
        excluded: set[int] = set()
        for d, p in enumerate(hp, start=1):
            run = path.verticals_following(d)
            take = min(half[d - 1], run)
            first_v = path.steps[:p].count("V") + 1
            excluded.update(range(first_v, first_v + take))
        remote = tuple(t for t in shadow if t not in excluded)
        blocks: dict[tuple[int, int], list[int]] = {}
        for t in remote:
            # the first horizontal edge before v whose shadow covers it,
            # i.e. the nearest one scanning backward
            j = max(i for i in local_other if t in local_other[i])
            d = path.depth(t)
            blocks.setdefault((j, d), []).append(t)
    else:
        lasts = vgc_last_zeros(path, half)
        for t, q in enumerate(vp, start=1):
            e = lasts[t - 1]
            spans[t] = (e if e is not None else 0, q)
            local_same[t] = labels_in(spans[t], vp)
            local_other[t] = labels_in(spans[t], hp)
        shadow = sorted({i for lv in local_other.values() for i in lv})
        excluded = set()
        for t, q in enumerate(vp, start=1):
            run = path.horizontals_preceding(t)
            take = min(half[t - 1], run)
            last_h = path.steps[:q].count("H")
            excluded.update(range(last_h - take + 1, last_h + 1))
        remote = tuple(i for i in shadow if i not in excluded)
        blocks = {}
        for i in remote:
            t = min(tt for tt in local_other if i in local_other[tt])
            ell = path.height(i)
            blocks.setdefault((t, ell), []).append(i)

    block_map = {k: tuple(sorted(v)) for k, v in blocks.items()}
    local_remote: dict[int, tuple[int, ...]] = {}
    for (a, _b), edges in block_map.items():
        local_remote[a] = tuple(sorted(local_remote.get(a, ()) + edges))
    return ShadowReport(kind, spans, local_same, local_other,
                        tuple(shadow), tuple(remote), block_map, local_remote)


def phi_star(omega_h: Half, d1: int) -> Half:
    """The vertical grading of D'_{m+1} induced by a horizontal grading of
    D_m under the order-preserving edge bijection: v'_i -> d1 - omega_H(h_i)."""
    if any(x > d1 for x in omega_h):
        raise ValueError("horizontal grading exceeds its bound")
    return tuple(d1 - x for x in omega_h)


class TransferError(RuntimeError):
    """Block cardinalities disagree; this would contradict the remote-shadow
    counting identity and indicates an internal inconsistency."""


@dataclass(frozen=True)
class TransferMaps:
    """phi*, theta and the grading transport between D_m and D'_{m+1}.

    ``theta`` maps vertical labels of remote-shadow edges on the source path
    to horizontal labels on the target path; the (j; d) block read bottom to
    top corresponds to the (d; j-1) block read right to left.
    """

    table: ChebyshevTable
    m: int
    primed: bool
    source: DyckPath
    target: DyckPath
    omega_h: Half
    phi: Half
    theta: dict[int, int]
    theta_inv: dict[int, int]
    source_blocks: dict[tuple[int, int], tuple[int, ...]]
    target_blocks: dict[tuple[int, int], tuple[int, ...]]

    def omega(self, omega_v: Half) -> Half:
        """Transport a vertical grading to a horizontal grading on the
        target path; reads omega_v only on remote-shadow edges."""
        out = [0] * self.target.rect.a1
        for v_label, h_label in self.theta.items():
            out[h_label - 1] = omega_v[v_label - 1]
        return tuple(out)

    def omega_inv(self, chi_h: Half) -> Half:
        out = [0] * self.source.rect.a2
        for h_label, v_label in self.theta_inv.items():
            out[v_label - 1] = chi_h[h_label - 1]
        return tuple(out)


def transfer_maps(table: ChebyshevTable, m: int, omega_h: Half,
                  primed: bool = False) -> TransferMaps:
    """Maps from gradings of D_m to gradings of D'_{m+1} (or from D'_m to
    D_{m+1} when ``primed``, with the degree roles interchanged)."""
    t = table.swapped() if primed else table
    source = standard_path(t, m)
    target = standard_path(t.swapped(), m + 1)
    d = t.d1
    if len(omega_h) != source.rect.a1:
        raise ValueError("grading length does not match D_m")
    phi = phi_star(omega_h, d)
    rep_src = shadow_report(source, omega_h, "H")
    rep_dst = shadow_report(target, phi, "V")
    theta: dict[int, int] = {}
    for (j, dd), vs in rep_src.blocks.items():
        hs = rep_dst.blocks.get((dd, j - 1), ())
        if len(hs) != len(vs):
            raise TransferError(
                f"block ({j};{dd}) has {len(vs)} edges but its partner has {len(hs)}")
        for v_label, h_label in zip(vs, reversed(hs)):
            theta[v_label] = h_label
    extra = set(rep_dst.blocks) - {(dd, j - 1) for (j, dd) in rep_src.blocks}
    if extra:
        raise TransferError(f"unmatched target blocks: {sorted(extra)}")
    theta_inv = {h: v for v, h in theta.items()}
    return TransferMaps(table, m, primed, source, target, omega_h, phi,
                        theta, theta_inv, rep_src.blocks, rep_dst.blocks)


def enumerate_half(n: int, bound: int) -> Iterator[Half]:
    yield from product(range(bound + 1), repeat=n)


def enumerate_vertical(path: DyckPath, d2: int, omega_h: Half) -> Iterator[Half]:
    """All vertical gradings bounded by d2 compatible with omega_h, in
    lexicographic order, found by a pruned left-to-right assignment."""
    firsts = hgc_first_zeros(path, omega_h)
    hp = path.h_positions
    vp = path.v_positions
    n = len(path.steps)
    a2 = len(vp)
    # barrier[t]: largest h position whose HGC fails for v_t, or None.
    barrier: list[Optional[int]] = []
    for q in vp:
        worst = None
        for i, p in enumerate(hp):
            if p < q and not (firsts[i] is not None and firsts[i] < q):
                worst = p
        barrier.append(worst)

    run: list[int] = [0] * a2
    # c[pos]: running f_{omega_V} over steps[0..pos] for the partial assignment
    c = [0] * n

    def extend(t: int, pos: int, total: int):
        # fill H steps up to the next vertical (or the end)
        while pos < n and path.steps[pos] == "H":
            total -= 1
            c[pos] = total
            pos += 1
        if t == a2:
            yield tuple(run)
            return
        q = vp[t]
        for val in range(d2 + 1):
            cv = total + val
            c[q] = cv
            b = barrier[t]
            if b is not None:
                ok = False
                for r in range(b, q):
                    prev = c[r - 1] if r > 0 else 0
                    # f over [r..q] uses c[q] - c[r-1]; the existence of a
                    # zero with start in (b, q] is the VGC requirement
                    if c[r] == cv:
                        ok = True
                        break
                # start exactly at b+1 corresponds to c[b] == cv
                if not ok:
                    continue
            run[t] = val
            yield from extend(t + 1, q + 1, cv)
        run[t] = 0

    yield from extend(0, 0, 0)


def enumerate_compatible(path: DyckPath, d1: int, d2: int,
                         fixed_h: Optional[Half] = None,
                         fixed_v: Optional[Half] = None) -> Iterator[tuple[Half, Half]]:
    """Compatible bounded grading pairs in lexicographic order; optionally
    with one half fixed."""
    if fixed_h is not None and fixed_v is not None:
        if is_compatible(path, fixed_h, fixed_v):
            yield (fixed_h, fixed_v)
        return
    if fixed_h is not None:
        for ov in enumerate_vertical(path, d2, fixed_h):
            yield (fixed_h, ov)
        return
    if fixed_v is not None:
        vmask = vgc_pair_mask(path, fixed_v)
        full = full_pair_mask(path)
        for oh in enumerate_half(path.rect.a1, d1):
            if (hgc_pair_mask(path, oh) | vmask) & full == full:
                yield (oh, fixed_v)
        return
    for oh in enumerate_half(path.rect.a1, d1):
        for ov in enumerate_vertical(path, d2, oh):
            yield (oh, ov)


def _split_halves(steps: str, values: list[int]) -> tuple[Half, Half]:
    oh = tuple(v for s, v in zip(steps, values) if s == "H")
    ov = tuple(v for s, v in zip(steps, values) if s == "V")
    return oh, ov


def restrictions(table: ChebyshevTable, m: int, omega_h: Half, omega_v: Half,
                 primed: bool = False) -> list[tuple[Half, Half]]:
    """The d_m - delta_m restricted gradings of D_{m-1} induced by a grading
    of D_m; the last restriction extends over the removed initial
    D_{m-2-delta_m} with zero vertical values and horizontal value equal to
    the number of vertical edges immediately following inside the removed
    piece (on D'_m the roles are swapped: zero horizontal values, vertical
    value the number of horizontals immediately preceding)."""
    t = table.swapped() if primed else table
    dec = decompose_recursive(t, m)
    path = dec.path
    if len(omega_h) != path.rect.a1 or len(omega_v) != path.rect.a2:
        raise ValueError("grading does not match the path")
    values = []
    hi = vi = 0
    for s in path.steps:
        if s == "H":
            values.append(omega_h[hi])
            hi += 1
        else:
            values.append(omega_v[vi])
            vi += 1

    out: list[tuple[Half, Half]] = []
    for (a, b) in dec.copies:
        out.append(_split_halves(dec.previous.steps, values[a:b]))

    removed = dec.previous.steps[:dec.removed_len]
    ext: list[int] = []
    for pos, s in enumerate(removed):
        if not primed:
            if s == "H":
                run = 0
                while pos + 1 + run < len(removed) and removed[pos + 1 + run] == "V":
                    run += 1
                ext.append(run)
            else:
                ext.append(0)
        else:
            if s == "V":
                run = 0
                while pos - 1 - run >= 0 and removed[pos - 1 - run] == "H":
                    run += 1
                ext.append(run)
            else:
                ext.append(0)
    last = ext + values[dec.last_copy[0]:]
    out.append(_split_halves(dec.previous.steps, last))
    return out


def is_piecewise_compatible(table: ChebyshevTable, m: int, omega_h: Half,
                            omega_v: Half, primed: bool = False) -> bool:
    if m < 3:
        raise ValueError("piecewise compatibility needs m >= 3")
    t = table.swapped() if primed else table
    prev = standard_path(t, m - 1)
    return all(is_compatible(prev, oh, ov)
               for oh, ov in restrictions(table, m, omega_h, omega_v, primed=primed))


@dataclass(frozen=True)
class BlockingCertificate:
    """Location of the blocking edge of a horizontal grading, if any, plus
    the justification flags of the supplied gradings at that edge."""

    index: Optional[int]
    candidates: tuple[int, ...]
    left_justified: Optional[bool] = None
    strongly_left_justified: Optional[bool] = None
    right_justified: Optional[bool] = None
    strongly_right_justified: Optional[bool] = None
    support_h_count: Optional[int] = None
    support_v_count: Optional[int] = None


def find_blocking(table: ChebyshevTable, m: int, omega_h: Half,
                  omega_v: Optional[Half] = None,
                  primed: bool = False) -> BlockingCertificate:
    """The maximal horizontal edge outside the last D_{m-1} copy whose local
    shadow path runs to the final vertical edge."""
    if m < 3:
        raise ValueError("blocking edges need m >= 3")
    t = table.swapped() if primed else table
    dec = decompose_recursive(t, m)
    path = dec.path
    d1 = t.d1
    d2 = t.d2
    last_start = dec.last_copy[0]
    end = len(path.steps) - 1
    firsts = hgc_first_zeros(path, omega_h)
    candidates = []
    for i, p in enumerate(path.h_positions, start=1):
        if p >= last_start:
            continue
        e = firsts[i - 1]
        if e is None or e == end:
            candidates.append(i)
    if not candidates:
        return BlockingCertificate(None, ())
    i = max(candidates)
    p = path.h_positions[i - 1]
    a1, a2 = path.rect

    supp = [j for j in range(i, a1 + 1) if omega_h[j - 1] > 0]
    left = False
    k = None
    if omega_h[i - 1] > 0:
        k = i
        while k + 1 <= a1 and omega_h[k] > 0:
            k += 1
        left = all(omega_h[j - 1] == 0 for j in range(k + 1, a1 + 1))
    strong_left = None
    if left and k is not None:
        strong_left = (all(omega_h[j - 1] == d1 for j in range(i, k)) and
                       shadow_stat(path, omega_h, "H", p, end) == 0)
    elif not left:
        strong_left = False

    right = strong_right = None
    t_count = None
    if omega_v is not None:
        tail_v = [tt for tt, q in enumerate(path.v_positions, start=1) if q > p]
        t_count = sum(1 for tt in tail_v if omega_v[tt - 1] > 0)
        right = False
        s = None
        for tt in tail_v:
            if omega_v[tt - 1] > 0:
                s = tt
                break
        if s is not None and all(omega_v[tt - 1] > 0 for tt in tail_v if tt >= s):
            right = True
        strong_right = False
        if right and s is not None:
            lasts = vgc_last_zeros(path, omega_v)
            e_last = lasts[a2 - 1]
            strong_right = (all(omega_v[tt - 1] == d2 for tt in tail_v if tt > s) and
                            e_last == p and
                            shadow_stat(path, omega_v, "V", p, end) == 0)

    return BlockingCertificate(i, tuple(candidates), left, strong_left,
                               right, strong_right,
                               len(supp) if supp is not None else None, t_count)
