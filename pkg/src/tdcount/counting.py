"""Counting dynamic programs over nice decompositions.

Five counters share one bag-local state machine: a table per decomposition
node maps subsets of the bag (as bitmasks over the sorted bag) to counts.

State semantics per counter, for node b with bag X and subset M:

* perfect matchings -- matchings of ``G_b \\ M`` covering every vertex below b
  except M, every matching edge having an endpoint outside X. Vertices in M
  are left for the part of the graph above b.
* matchings -- same edge discipline, but only the vertices of ``X \\ M`` are
  required to be covered; M marks bag vertices currently unmatched.
* independent sets -- independent sets I of the graph below b with
  ``I ∩ X = M``.

The size-resolved variants track how much of the structure is already
committed below the bag: matchings count their edges, independent sets count
their forgotten members (bag members in M are added to the size when they are
forgotten, which keeps join nodes a plain convolution). At the empty root bag
both conventions equal the natural size of the structure.

Joins for (perfect) matchings split the covered bag vertices between the two
subtrees; submask enumeration makes the per-bag work 3^|bag|. Joins for
independent sets multiply tables pointwise. Size-resolved joins convolve with
the child of the smaller subtree supplying the short polynomial.

All counts are exact arbitrary-precision integers.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .decomposition import FORGET, INTRODUCE, JOIN, LEAF

_LEAF, _INTRO, _FORGET, _JOIN = 0, 1, 2, 3


class SizePolynomial:
    """Counts by structure size: coeffs[k] structures of size k.

    Trailing zero coefficients are trimmed; the zero polynomial is ``(0,)``.
    Indexing out of range yields 0. Compares equal to plain sequences.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs) or [0]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return self.coeffs[k]
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, SizePolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (tuple, list)):
            return self == SizePolynomial(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"SizePolynomial{self.coeffs}"

    def total(self):
        return sum(self.coeffs)


@dataclass
class DpStats:
    """Operation counters a caller may pass in to inspect a run."""

    join_nodes: int = 0
    # (bag size, multiplications performed) per join node, in visit order
    join_bags: list = field(default_factory=list)


class DecompositionMismatch(ValueError):
    """The nice decomposition does not describe the given graph."""


def _prepare(g, nd):
    """Compile nd into per-node instructions and check it matches g."""
    nodes = nd.nodes
    plan = [None] * len(nodes)
    n_below = [0] * len(nodes)
    introduced = set()
    covered = set()

    for i, node in enumerate(nodes):
        bag = node.bag
        w = len(bag)
        kind = node.kind
        if any(not 0 <= v < g.n for v in bag):
            raise DecompositionMismatch(
                f"bag {bag} mentions vertices outside 0..{g.n - 1}"
            )
        if kind == LEAF:
            plan[i] = (_LEAF,)
            n_below[i] = 0
        elif kind == INTRODUCE:
            v = node.v
            c = node.children[0]
            introduced.add(v)
            p = bag.index(v)
            nbrs = g.neighbors(v)
            nbr_mask = 0
            for q, u in enumerate(bag):
                if u in nbrs:
                    nbr_mask |= 1 << q
                    covered.add((u, v) if u < v else (v, u))
            plan[i] = (_INTRO, c, p, nbr_mask, w)
            n_below[i] = n_below[c] + 1
        elif kind == FORGET:
            v = node.v
            c = node.children[0]
            child_bag = nodes[c].bag
            p = child_bag.index(v)
            nbrs = g.neighbors(v)
            pairs = tuple(
                (1 << q, 1 << (q if q < p else q + 1))
                for q, u in enumerate(bag)
                if u in nbrs
            )
            plan[i] = (_FORGET, c, p, pairs, w)
            n_below[i] = n_below[c]
        elif kind == JOIN:
            c1, c2 = node.children
            if n_below[c1] > n_below[c2]:
                c1, c2 = c2, c1
            plan[i] = (_JOIN, c1, c2, w, (1 << w) - 1, n_below[c1])
            n_below[i] = n_below[c1] + n_below[c2] - w
        else:
            raise DecompositionMismatch(f"unknown node kind {kind!r}")

    if introduced != set(range(g.n)):
        missing = sorted(set(range(g.n)) - introduced)
        raise DecompositionMismatch(
            f"vertices {missing} never introduced by the decomposition"
        )
    stray = sorted(tuple(sorted(e)) for e in g.edges - covered)
    if stray:
        raise DecompositionMismatch(f"edges {stray} not covered by any bag")
    return plan


def _release(tables, children):
    for c in children:
        tables[c] = None


def _run_total(nd, plan, mode, stats):
    """Shared traversal for the three total counters.

    mode: 'pm' (perfect matchings), 'match' (all matchings), 'ind'
    (independent sets).
    """
    nodes = nd.nodes
    tables = [None] * len(nodes)
    is_ind = mode == "ind"
    is_match = mode == "match"
    for i, op in enumerate(plan):
        code = op[0]
        if code == _LEAF:
            tables[i] = [1]
        elif code == _INTRO:
            _, c, p, nbr_mask, w = op
            child = tables[c]
            out = [0] * (1 << w)
            low = (1 << p) - 1
            bit = 1 << p
            if is_ind:
                for cm, val in enumerate(child):
                    if val:
                        base = (cm & low) | ((cm >> p) << (p + 1))
                        out[base] = val
                        if not base & nbr_mask:
                            out[base | bit] = val
            else:
                for cm, val in enumerate(child):
                    if val:
                        out[((cm & low) | ((cm >> p) << (p + 1))) | bit] = val
            tables[i] = out
            _release(tables, (c,))
        elif code == _FORGET:
            _, c, p, pairs, w = op
            child = tables[c]
            out = [0] * (1 << w)
            low = (1 << p) - 1
            bit = 1 << p
            if is_ind:
                for m in range(1 << w):
                    base = (m & low) | ((m >> p) << (p + 1))
                    out[m] = child[base] + child[base | bit]
            else:
                for m in range(1 << w):
                    base = (m & low) | ((m >> p) << (p + 1))
                    val = child[base]
                    if is_match:
                        val += child[base | bit]
                    for pbit, cbit in pairs:
                        if not m & pbit:
                            val += child[base | bit | cbit]
                    out[m] = val
            tables[i] = out
            _release(tables, (c,))
        else:  # _JOIN
            _, c1, c2, w, full, _n1 = op
            t1 = tables[c1]
            t2 = tables[c2]
            out = [0] * (1 << w)
            products = 0
            if is_ind:
                for m in range(1 << w):
                    out[m] = t1[m] * t2[m]
                products = 1 << w
            else:
                for m in range(1 << w):
                    free = full ^ m
                    acc = 0
                    h = free
                    while True:
                        acc += t1[m | h] * t2[m | (free ^ h)]
                        products += 1
                        if h == 0:
                            break
                        h = (h - 1) & free
                    out[m] = acc
            tables[i] = out
            if stats is not None:
                stats.join_nodes += 1
                stats.join_bags.append((w, products))
            _release(tables, (c1, c2))
    return tables[nd.root][0]


def _poly_acc(acc, poly, shift):
    need = len(poly) + shift
    if len(acc) < need:
        acc.extend([0] * (need - len(acc)))
    for k, v in enumerate(poly):
        if v:
            acc[k + shift] += v
    return acc


def _run_poly(nd, plan, mode, stats):
    """Size-resolved traversal; mode 'match' or 'ind'. Tables hold coeff lists."""
    nodes = nd.nodes
    tables = [None] * len(nodes)
    is_ind = mode == "ind"
    empty = []
    for i, op in enumerate(plan):
        code = op[0]
        if code == _LEAF:
            tables[i] = [[1]]
        elif code == _INTRO:
            _, c, p, nbr_mask, w = op
            child = tables[c]
            out = [empty] * (1 << w)
            low = (1 << p) - 1
            bit = 1 << p
            if is_ind:
                for cm, val in enumerate(child):
                    if val:
                        base = (cm & low) | ((cm >> p) << (p + 1))
                        out[base] = val
                        if not base & nbr_mask:
                            out[base | bit] = val
            else:
                for cm, val in enumerate(child):
                    if val:
                        out[((cm & low) | ((cm >> p) << (p + 1))) | bit] = val
            tables[i] = out
            _release(tables, (c,))
        elif code == _FORGET:
            _, c, p, pairs, w = op
            child = tables[c]
            out = [empty] * (1 << w)
            low = (1 << p) - 1
            bit = 1 << p
            for m in range(1 << w):
                base = (m & low) | ((m >> p) << (p + 1))
                acc = list(child[base])
                if is_ind:
                    # forgetting a chosen vertex commits it: size grows by one
                    acc = _poly_acc(acc, child[base | bit], 1)
                else:
                    acc = _poly_acc(acc, child[base | bit], 0)
                    for pbit, cbit in pairs:
                        if not m & pbit:
                            # the pair edge v-u joins the matching here
                            acc = _poly_acc(acc, child[base | bit | cbit], 1)
                out[m] = acc
            tables[i] = out
            _release(tables, (c,))
        else:  # _JOIN
            _, c1, c2, w, full, n1 = op
            t1 = tables[c1]  # smaller subtree: short polynomials drive the loop
            t2 = tables[c2]
            # the inner convolution index is bounded by the smaller subtree
            assert max(len(p) for p in t1) <= n1 + 1
            out = [empty] * (1 << w)
            products = 0
            for m in range(1 << w):
                acc = []
                if is_ind:
                    splits = ((m, m),)
                else:
                    free = full ^ m
                    splits = []
                    h = free
                    while True:
                        splits.append((m | h, m | (free ^ h)))
                        if h == 0:
                            break
                        h = (h - 1) & free
                for i1, i2 in splits:
                    p1 = t1[i1]
                    p2 = t2[i2]
                    if not p1 or not p2:
                        continue
                    need = len(p1) + len(p2) - 1
                    if len(acc) < need:
                        acc.extend([0] * (need - len(acc)))
                    for k1, a in enumerate(p1):
                        if a:
                            for k2, b in enumerate(p2):
                                if b:
                                    acc[k1 + k2] += a * b
                                    products += 1
                out[m] = acc
            tables[i] = out
            if stats is not None:
                stats.join_nodes += 1
                stats.join_bags.append((w, products))
            _release(tables, (c1, c2))
    return SizePolynomial(tables[nd.root][0])


def count_perfect_matchings(g, nd, stats=None):
    """Number of perfect matchings (Kekulé structures) of g."""
    return _run_total(nd, _prepare(g, nd), "pm", stats)


def count_matchings(g, nd, stats=None):
    """Hosoya index: number of matchings of g, the empty one included."""
    return _run_total(nd, _prepare(g, nd), "match", stats)


def count_independent_sets(g, nd, stats=None):
    """Merrifield-Simmons index: number of independent sets, counting the
    empty set."""
    return _run_total(nd, _prepare(g, nd), "ind", stats)


def matching_polynomial(g, nd, stats=None):
    """Matchings of g by size: coeffs[k] = matchings with k edges."""
    return _run_poly(nd, _prepare(g, nd), "match", stats)


def independence_polynomial(g, nd, stats=None):
    """Independent sets of g by size: coeffs[k] = sets of k vertices."""
    return _run_poly(nd, _prepare(g, nd), "ind", stats)


def entropy(poly):
    """Shannon entropy in bits of the normalized size distribution.

    ``H = -sum p_k log2 p_k`` with ``p_k = coeffs[k] / sum(coeffs)``; zero
    coefficients contribute nothing. Logarithms of the arbitrary-precision
    counts are taken directly, so totals far beyond float range are fine.
    """
    coeffs = list(poly)
    total = sum(coeffs)
    if total <= 0:
        raise ValueError("entropy of an all-zero polynomial is undefined")
    lg_total = math.log2(total)
    h = 0.0
    for c in coeffs:
        if c:
            p = c / total
            if p > 0.0:
                h -= p * (math.log2(c) - lg_total)
    return h


@dataclass
class RunReport:
    """Everything the five counters say about one graph/decomposition pair."""

    width: int
    node_count: int
    join_count: int
    perfect_matchings: int
    matchings: int
    independent_sets: int
    matching_poly: SizePolynomial
    independence_poly: SizePolynomial
    entropy_matchings: float
    entropy_independent_sets: float
    millis: dict

    def as_dict(self):
        return {
            "perfect_matchings": self.perfect_matchings,
            "matchings": self.matchings,
            "independent_sets": self.independent_sets,
            "matching_polynomial": self.matching_poly,
            "independence_polynomial": self.independence_poly,
            "entropy_matchings": self.entropy_matchings,
            "entropy_independent_sets": self.entropy_independent_sets,
        }


def run_all(g, nd, stats=None):
    """Run all five counters plus both entropies on one decomposition."""
    plan = _prepare(g, nd)
    millis = {}

    def timed(name, fn):
        t0 = time.perf_counter()
        value = fn()
        millis[name] = (time.perf_counter() - t0) * 1000.0
        return value

    pm = timed("perfect_matchings", lambda: _run_total(nd, plan, "pm", stats))
    ma = timed("matchings", lambda: _run_total(nd, plan, "match", stats))
    ind = timed("independent_sets", lambda: _run_total(nd, plan, "ind", stats))
    mp = timed("matching_polynomial", lambda: _run_poly(nd, plan, "match", stats))
    ip = timed("independence_polynomial", lambda: _run_poly(nd, plan, "ind", stats))
    return RunReport(
        width=nd.width(),
        node_count=len(nd),
        join_count=nd.join_count(),
        perfect_matchings=pm,
        matchings=ma,
        independent_sets=ind,
        matching_poly=mp,
        independence_poly=ip,
        entropy_matchings=entropy(mp),
        entropy_independent_sets=entropy(ip),
        millis=millis,
    )
