"""Sequence and tuple combinatorics for graded idempotents: level
sequences of dimension vectors, their triple encodings (x, v, kappa),
even idempotents, and the cyclotomic truncation condition."""

from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from .cartan import is_even_pair


class SizeCap(RuntimeError):
    pass


def _vec_items(vec):
    return tuple(sorted((x, c) for x, c in vec.items() if c))


def vec_total(vec):
    return sum(c for c in vec.values())


def tau(w):
    """Strip the zero parts of a level sequence of vectors.

    w maps integer levels to vectors (vertex -> count); returns
    (m, tuple of nonzero vectors in level order, increasing levels).
    """
    levels = tuple(sorted(k for k, vec in w.items() if vec_total(vec)))
    wtuple = tuple(dict(_vec_items(w[k])) for k in levels)
    return len(levels), wtuple, levels


def seq_max(w):
    """The largest level carrying a nonzero vector, or None."""
    support = [k for k, vec in w.items() if vec_total(vec)]
    return max(support) if support else None


@dataclass(frozen=True)
class TriplePoint:
    """A triple (x, v, kappa): weakly increasing integers x, a vertex
    tuple v of the same length, and a weakly increasing kappa-tuple."""

    x: tuple
    v: tuple
    kappa: tuple


def seq_to_triple(vseq, levels, order):
    """Encode a level sequence of vectors as a triple point.

    Blocks are ordered by level; inside a block, vertices follow the
    given total order.  kappa_s counts the tuple positions at levels
    <= l_s.
    """
    ks = sorted(k for k, vec in vseq.items() if vec_total(vec))
    v = []
    x = []
    for k in ks:
        for vtx in order:
            c = vseq[k].get(vtx, 0)
            v.extend([vtx] * c)
            x.extend([k] * c)
    kappa = tuple(
        sum(vec_total(vseq[k]) for k in ks if k <= l) for l in levels
    )
    return TriplePoint(tuple(x), tuple(v), kappa)


def triple_to_seq(x, v):
    """Decode (x, v) back into a level sequence of vectors."""
    out = {}
    for k, vtx in zip(x, v):
        out.setdefault(k, {}).setdefault(vtx, 0)
        out[k][vtx] += 1
    return out


def in_J(x, v, kappa, levels, order):
    """Membership test for the triple set: (1) equal-x neighbours are
    vertex-ordered, (2) x weakly increasing, (3) kappa cuts x at the
    levels."""
    h = len(x)
    rank = {vtx: t for t, vtx in enumerate(order)}
    for k in range(h - 1):
        if x[k] > x[k + 1]:
            return False
        if x[k] == x[k + 1] and rank[v[k]] > rank[v[k + 1]]:
            return False
    for l, kap in zip(levels, kappa):
        if kap > 0 and not x[kap - 1] <= l:
            return False
        if kap < h and not l < x[kap]:
            return False
    return True


def _search_window(levels, order, extra=None):
    periods = [2] * len(order)
    if extra:
        periods = [extra(vtx) for vtx in order]
    p = max(periods) if periods else 2
    if levels:
        return min(levels) - 2 * p, max(levels) + 2 * p
    return -2 * p, 2 * p


def exists_x(v, kappa, levels, order, window=None, even=None, ordered=True):
    """Decide whether some weakly increasing x completes (v, kappa) to a
    triple point; `even(vtx, value)` further restricts admissible values.

    Backtracking over positions with the interval bounds forced by the
    kappa cuts; x values are confined to the window.  With ordered=False
    the equal-value vertex-ordering constraint is skipped.
    """
    h = len(v)
    if window is None:
        window = _search_window(levels, order)
    lo_w, hi_w = window
    rank = {vtx: t for t, vtx in enumerate(order)}
    # per-position interval bounds from condition (3)
    lo = [lo_w] * h
    hi = [hi_w] * h
    for l, kap in zip(levels, kappa):
        for k in range(kap, h):
            lo[k] = max(lo[k], l + 1)
        for k in range(kap):
            hi[k] = min(hi[k], l)
    if h == 0:
        return all(0 <= kap <= h for kap in kappa)

    def admissible(k, val):
        if even is not None and not even(v[k], val):
            return False
        return True

    def step(k, prev_x, prev_rank):
        if k == h:
            return True
        start = max(lo[k], prev_x if prev_x is not None else lo[k])
        for val in range(start, hi[k] + 1):
            if not admissible(k, val):
                continue
            if (
                ordered
                and prev_x is not None
                and val == prev_x
                and prev_rank > rank[v[k]]
            ):
                continue
            if step(k + 1, val, rank[v[k]]):
                return True
        return False

    return step(0, None, None)


def underline_order(uq):
    """The total order on unfolded vertices: by base-vertex order (even
    vertices first), then by residue."""
    return tuple(
        sorted(uq.underline_I, key=lambda ui: (uq.base.rank(ui[0]), ui[1]))
    )


def is_even_idempotent(uq, v, kappa, levels, window=None):
    """True iff some weakly increasing x completes (v, kappa) to a triple
    point whose pairs (v_k, x_k) are all even."""
    order = underline_order(uq)
    if window is None:
        window = _search_window(
            levels, order, extra=lambda ui: 2 * uq.base.d[ui[0] - 1]
        )
    return exists_x(
        v,
        kappa,
        levels,
        order,
        window=window,
        even=lambda ui, val: is_even_pair(uq, ui, val),
    )


def is_even_idempotent_ade(uq, v, kappa, levels, window=None):
    """The simplified test for symmetric types: the equal-value ordering
    constraint is dropped, leaving monotonicity, the kappa cuts and the
    parity of the pairs (v_k, x_k)."""
    order = underline_order(uq)
    if window is None:
        window = _search_window(
            levels, order, extra=lambda ui: 2 * uq.base.d[ui[0] - 1]
        )
    return exists_x(
        v,
        kappa,
        levels,
        order,
        window=window,
        even=lambda ui, val: is_even_pair(uq, ui, val),
        ordered=False,
    )


def vertex_tuples(alpha, order):
    """All arrangements of the multiset with alpha[vtx] copies of each
    vertex (the tuple set I(alpha))."""
    items = [vtx for vtx in order for _ in range(alpha.get(vtx, 0))]
    out = set()

    def backtrack(remaining, acc):
        if not remaining:
            out.add(tuple(acc))
            return
        seen = set()
        for t, vtx in enumerate(remaining):
            if vtx in seen:
                continue
            seen.add(vtx)
            backtrack(remaining[:t] + remaining[t + 1:], acc + [vtx])

    backtrack(items, [])
    return sorted(out, key=lambda tup: tuple(order.index(v) for v in tup))


def kappa_tuples(h, m):
    """All weakly increasing m-tuples with entries in [0, h]."""
    return [tuple(k) for k in combinations_with_replacement(range(h + 1), m)]


def e_w_mu_support(alpha, levels, order, window=None, even=None, cap=None):
    """All pairs (v, kappa) admitting a completion x to a triple point;
    with `even` given, only even completions count."""
    m = len(levels)
    h = sum(alpha.values())
    out = []
    for v in vertex_tuples(alpha, order):
        for kappa in kappa_tuples(h, m):
            if exists_x(v, kappa, levels, order, window=window, even=even):
                out.append((v, kappa))
                if cap is not None and len(out) > cap:
                    raise SizeCap(f"support cap {cap} exceeded")
    return out


def enumerate_P(alpha, window, order):
    """All level sequences of vectors with column sums alpha and support
    inside the window (the set P(alpha), windowed)."""
    kmin, kmax = window
    levels = range(kmin, kmax + 1)
    per_vertex = []
    verts = [vtx for vtx in order if alpha.get(vtx, 0)]
    for vtx in verts:
        per_vertex.append(
            list(combinations_with_replacement(levels, alpha[vtx]))
        )
    out = []
    for choice in product(*per_vertex):
        seq = {}
        for vtx, ks in zip(verts, choice):
            for k in ks:
                seq.setdefault(k, {}).setdefault(vtx, 0)
                seq[k][vtx] += 1
        out.append(seq)
    return out


def is_even_sequence(uq, vseq):
    """True iff every supported pair (vertex, level) of the sequence is even."""
    for k, vec in vseq.items():
        for ui, c in vec.items():
            if c and not is_even_pair(uq, ui, k):
                return False
    return True


def cyclotomic_seq(w, vseq):
    """The truncation condition on sequences: max(w) < max(v)."""
    mw = seq_max(w)
    mv = seq_max(vseq)
    if mv is None:
        return False
    return mw is None or mw < mv


def cyclotomic_triple(kappa, h):
    """The truncation condition on triples: kappa_m < h."""
    if not kappa:
        return h > 0
    return kappa[-1] < h
