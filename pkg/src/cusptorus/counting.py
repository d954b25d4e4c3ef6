"""Counting simple closed geodesics by length.

Primitive classes of simple closed geodesics correspond to +/- pairs of
primitive integer vectors, so counting up to length L walks both quadrant
trees with the trace bound 2 cosh(L/2) and doubles the result.  Totals add
imprimitive powers by re-counting primitives at L/k.  The expected growth is
Area(B) L^2 / zeta(2) with a remainder of order L log L.
"""

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from math import gcd

from mpmath import mp, mpf, workprec

from .ball import area_interval, boundary_refine
from .errors import CapTooSmall
from .farey import (christoffel_word, node_children, node_pruned,
                    quadrant_roots, word_matrix, _subtree)
from .moduli import systole
from .traces import Mat2, lift_to_matrices

CountReport = namedtuple("CountReport", "L primitive total")

AsymptoticRow = namedtuple(
    "AsymptoticRow",
    "L primitive total predicted residual residual_per_LlogL residual_per_L")

AsymptoticReport = namedtuple("AsymptoticReport", "rows area_lower area_upper")


def _subtree_count(node, trace_bound, depth_cap):
    return sum(1 for _ in _subtree(node, trace_bound, depth_cap))


def _split_frontier(roots, trace_bound, depth_cap, width):
    """Expand live subtrees breadth-first into independent count tasks.

    Returns (direct, tasks) where direct counts mediants consumed during the
    expansion and tasks are live nodes whose subtree counts remain to be
    taken.  Splitting follows the same prune rule as the serial walk, so the
    union of the pieces is exactly the serial enumeration.
    """
    direct = 0
    frontier = [n for n in roots if not node_pruned(n, trace_bound)]
    while frontier and len(frontier) < width:
        frontier.sort(key=lambda n: n.depth)
        node = frontier.pop(0)
        if node.depth > depth_cap:
            frontier.append(node)
            break
        if node.triple[2] <= trace_bound:
            direct += 1
        for child in node_children(node):
            if not node_pruned(child, trace_bound):
                frontier.append(child)
    return direct, frontier


def count_primitive(m, L, threads=1):
    """Number of primitive classes with length norm at most L.

    Classes whose length equals L exactly are included.  The depth cap for
    the tree walk comes from the reduced systole, which bounds how fast
    lengths grow along any branch.
    """
    if not L > 0:
        raise ValueError("length bound must be positive")
    sys_len = systole(m).systole_length
    with workprec(m.precision_bits):
        bound = 2 * mp.cosh(mpf(L) / 2)
        depth_cap = int(mp.ceil(mpf(L) / sys_len)) + 16
        x, y, _ = m.triple
        half = 0
        if x <= bound:
            half += 1
        if y <= bound:
            half += 1
        roots = list(quadrant_roots(m))
        if threads and threads > 1:
            direct, tasks = _split_frontier(roots, bound, depth_cap,
                                            4 * threads)
            half += direct
            with ThreadPoolExecutor(max_workers=threads) as pool:
                half += sum(pool.map(
                    lambda n: _subtree_count(n, bound, depth_cap), tasks))
        else:
            for root in roots:
                half += _subtree_count(root, bound, depth_cap)
        return 2 * half


def count_total(m, L, threads=1):
    """Number of classes with length at most L, imprimitive ones included.

    A k-fold power of a primitive class has length k times the primitive
    length, so the total is the sum of primitive counts at L/k.
    """
    if not L > 0:
        raise ValueError("length bound must be positive")
    sys_len = systole(m).systole_length
    kmax = int(mpf(L) / sys_len)
    total = 0
    for k in range(1, kmax + 1):
        total += count_primitive(m, mpf(L) / k, threads=threads)
    return total


def count_report(m, L, threads=1):
    return CountReport(L, count_primitive(m, L, threads=threads),
                       count_total(m, L, threads=threads))


def brute_force_count(m, L, cap):
    """Primitive count by direct scan over vectors with max(|p|,|q|) <= cap.

    Traces come from letter-by-letter matrix products over the Christoffel
    word of each vector, with no use of the tree recursion, so agreement with
    count_primitive checks the enumeration end to end.  The cap must dominate
    L times the horizontal extent of the unit ball, otherwise classes below
    the length bound could fall outside the scan window.
    """
    cap = int(cap)
    if cap < 1:
        raise ValueError("cap must be a positive integer")
    ball = boundary_refine(m, mpf("0.5"))
    with workprec(m.precision_bits):
        extent = ball.extent_upper
        if mpf(cap) < mpf(L) * extent:
            raise CapTooSmall(
                "cap %d cannot cover length bound %s; need at least %s"
                % (cap, mp.nstr(mpf(L), 8),
                   mp.nstr(mpf(L) * extent, 8)))
        bound = 2 * mp.cosh(mpf(L) / 2)
        if m.is_integral() and tuple(m.triple) == (3, 3, 3):
            gen_a, gen_b = Mat2(1, 1, 1, 2), Mat2(1, -1, -1, 2)
        else:
            gen_a, gen_b = lift_to_matrices(m)
        half = 0
        _, y, _ = m.triple
        if y <= bound:
            half += 1
        for p in range(1, cap + 1):
            for q in range(-cap, cap + 1):
                if gcd(p, abs(q)) != 1:
                    continue
                word = christoffel_word((p, q))
                t = word_matrix(word, gen_a, gen_b).trace()
                if t <= bound:
                    half += 1
        return 2 * half


def asymptotic_report(m, Ls, area_eps=mpf("0.005"), threads=1):
    """Counts against the quadratic prediction at each length in Ls.

    The prediction uses the midpoint of a certified area interval for the
    unit ball; the interval itself is carried in the report so the residuals
    can be judged against the area uncertainty.
    """
    Ls = list(Ls)
    if not Ls:
        raise ValueError("need at least one length bound")
    for prev, cur in zip(Ls, Ls[1:]):
        if not cur > prev:
            raise ValueError("length bounds must be strictly increasing")
    if not Ls[0] > 0:
        raise ValueError("length bounds must be positive")
    lo, hi = area_interval(m, area_eps)
    rows = []
    with workprec(m.precision_bits):
        mid_area = (mpf(lo) + mpf(hi)) / 2
        z2 = mp.zeta(2)
    for L in Ls:
        prim = count_primitive(m, L, threads=threads)
        tot = count_total(m, L, threads=threads)
        with workprec(m.precision_bits):
            Lm = mpf(L)
            predicted = mid_area * Lm ** 2 / z2
            residual = prim - predicted
            denom = Lm * mp.log(Lm)
            per_llog = residual / denom if denom > 0 else mp.inf
            per_l = residual / Lm
        rows.append(AsymptoticRow(L, prim, tot, predicted, residual,
                                  per_llog, per_l))
    return AsymptoticReport(rows, lo, hi)
