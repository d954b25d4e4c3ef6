"""Stern-Brocot enumeration of primitive homology classes and their traces.

A primitive class (p, q) names a simple closed geodesic.  Its trace is
computed by descending the tree with the mediant recursion
t(u+v) = t(u)*t(v) - t(u-v); Christoffel words give matching
fundamental-group representatives so matrix products can serve as an
independent check.

Conventions fixed here: (1,0) -> A, (0,1) -> B, (1,1) -> AB, lower
Christoffel order via the floor rule; inverse letters are written 'a' and
'b' and stand in for negative coordinates.  Enumeration covers one
representative per antipodal pair {h, -h}: the closed first quadrant plus
the open second quadrant (p < 0 < q).
"""

import math
from collections import namedtuple

from .errors import NotInTree, DepthExceeded, ZeroClass

FareyNode = namedtuple("FareyNode", "left right mediant triple depth")


def _check_primitive(c):
    p, q = c
    if p == 0 and q == 0:
        raise ZeroClass("class (0,0) has no geodesic")
    if math.gcd(abs(p), abs(q)) != 1:
        raise ValueError("class %s is not primitive" % (c,))
    return p, q


def farey_parents(c):
    """Farey pair (u, v) with u + v = c and |det(u, v)| = 1.

    Ordered (shallower ancestor, immediate parent).  Only interior
    first-quadrant classes have parents; the axes and the root (1,1) are
    seeds of the tree and raise NotInTree.
    """
    p, q = _check_primitive(c)
    if p < 1 or q < 1 or (p, q) == (1, 1):
        raise NotInTree("%s is a seed or lies outside the open quadrant" % (c,))
    left, right = (1, 0), (0, 1)
    med = (1, 1)
    other, newest = left, right
    while med != (p, q):
        # is the target left of the mediant (smaller slope)?
        if p * med[1] - q * med[0] > 0:
            right = med
            other, newest = left, right
        else:
            left = med
            other, newest = right, left
        med = (left[0] + right[0], left[1] + right[1])
    return other, newest


def _walk_trace(p, q, t_a, t_b, t_ab):
    """Trace of primitive (p, q), p, q >= 0, given the three seed traces."""
    if q == 0:
        return t_a
    if p == 0:
        return t_b
    left, t_left = (1, 0), t_a
    right, t_right = (0, 1), t_b
    med, t_med = (1, 1), t_ab
    for _ in range(p + q):
        if med == (p, q):
            return t_med
        if p * med[1] - q * med[0] > 0:
            # descend left: new mediant = left + med, difference = right
            t_new = t_left * t_med - t_right
            right, t_right = med, t_med
        else:
            t_new = t_med * t_right - t_left
            left, t_left = med, t_med
        med = (left[0] + right[0], left[1] + right[1])
        t_med = t_new
    return t_med


def class_trace(m, c):
    """Trace of the group element covering class c, via the tree recursion.

    Integer seed triples stay in exact integer arithmetic.  Antipodes agree:
    t(-p,-q) = t(p,q).  Mixed-sign classes descend the second-quadrant tree,
    whose seeds are (t(-1,0), t(0,1), t(-1,1)) = (x, y, x*y - z).
    """
    p, q = _check_primitive(c)
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    x, y, z = m.triple
    if q >= 0:
        return _walk_trace(p, q, x, y, z)
    # (p, -|q|) is antipodal to (-p, |q|) in the second quadrant
    return _walk_trace(p, -q, x, y, x * y - z)


def christoffel_word(c):
    """Lower Christoffel word of slope q/p over A, B; inverses a, b for
    negative coordinates."""
    p, q = _check_primitive(c)
    la = "A" if p >= 0 else "a"
    lb = "B" if q >= 0 else "b"
    np_, nq = abs(p), abs(q)
    n = np_ + nq
    word = []
    prev = 0
    for i in range(1, n + 1):
        cur = (i * nq) // n
        if cur > prev:
            word.append(lb)
        else:
            word.append(la)
        prev = cur
    return "".join(word)


def word_matrix(word, A, B):
    """Product of the word's letters; A, B are Mat2, inverses computed once."""
    gens = {"A": A, "B": B}
    out = None
    for letter in word:
        if letter not in gens:
            low = letter.lower()
            gens[letter] = gens[low.upper()].inv()
        g = gens[letter]
        out = g if out is None else out * g
    if out is None:
        raise ValueError("empty word")
    return out


def node_children(node):
    """The two child FareyNodes refining this node's interval at its mediant."""
    left, right, med, (t_l, t_r, t_m), depth = node
    lmed = (left[0] + med[0], left[1] + med[1])
    rmed = (med[0] + right[0], med[1] + right[1])
    return (FareyNode(left, med, lmed, (t_l, t_m, t_l * t_m - t_r), depth + 1),
            FareyNode(med, right, rmed, (t_m, t_r, t_m * t_r - t_l), depth + 1))


def node_pruned(node, trace_bound):
    """True when no class at or below this node can have trace <= bound.

    Prunes only when the mediant trace exceeds the bound AND dominates both
    endpoint traces; from that point on every deeper trace is larger still.
    A dominated mediant above the bound can hide smaller traces below it, so
    the walk continues through it without yielding.
    """
    t_l, t_r, t_m = node.triple
    return t_m > trace_bound and t_m >= t_l and t_m >= t_r


def _subtree(node, trace_bound, depth_cap):
    """In-order stream of (class, trace) inside the open interval of node."""
    if node_pruned(node, trace_bound):
        return
    if node.depth > depth_cap:
        raise DepthExceeded(
            "live tree node at depth %d exceeds cap %d"
            % (node.depth, depth_cap))
    lchild, rchild = node_children(node)
    yield from _subtree(lchild, trace_bound, depth_cap)
    t_m = node.triple[2]
    if t_m <= trace_bound:
        yield node.mediant, t_m
    yield from _subtree(rchild, trace_bound, depth_cap)


def quadrant_roots(m):
    """The two depth-0 tree nodes: first quadrant and second quadrant."""
    x, y, z = m.triple
    q1 = FareyNode((1, 0), (0, 1), (1, 1), (x, y, z), 0)
    q2 = FareyNode((0, 1), (-1, 0), (-1, 1), (y, x, x * y - z), 0)
    return q1, q2


def enumerate_classes(m, trace_bound, depth_cap=64):
    """Stream every primitive class with trace <= trace_bound, once per
    antipodal pair, in counterclockwise slope order from (1,0) to (-1,0).

    Integer moduli run in exact arithmetic.  Real moduli evaluate traces at
    the ambient precision of the consumer; callers needing more wrap the
    consumption in an mp.workprec block.
    """
    q1, q2 = quadrant_roots(m)
    x, y, _ = m.triple
    if x <= trace_bound:
        yield (1, 0), x
    yield from _subtree(q1, trace_bound, depth_cap)
    if y <= trace_bound:
        yield (0, 1), y
    yield from _subtree(q2, trace_bound, depth_cap)
