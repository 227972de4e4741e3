"""The even monomial crystal: statistics, Kashiwara operators, connected
components, the dominant-closure construction, and label extraction."""

from dataclasses import dataclass
from itertools import product

from .cartan import zero_I_member
from .coweight import EvenCoweight
from .monomial import Monomial, OddMonomial, a_factorize, a_monomial, z_rho


class CapExceeded(RuntimeError):
    pass


class NotDominantSeed(ValueError):
    pass


@dataclass(frozen=True)
class Caps:
    iterations: int = 10
    nodes: int = 100000


@dataclass(frozen=True)
class CrystalGraph:
    """A finite piece of the crystal: nodes, lowering edges, highest nodes."""

    nodes: tuple  # Monomials, deterministic order
    edges: tuple  # ((node, ui), target) for the lowering operator
    highest: tuple

    def edge_map(self):
        return dict(self.edges)

    def __len__(self):
        return len(self.nodes)


def _progression_data(uq, m, ui):
    i, r = ui
    p = uq.period(i)
    keys = []
    for (j, k), e in m.items():
        if j == i and (k - r) % p == 0:
            keys.append((k, e))
    keys.sort()
    return p, keys


def eps_phi(uq, m, ui):
    """The statistics at an unfolded vertex: (eps, phi, min argmax, max argmax).

    The index l runs over the residue progression k = r mod 2d_i.  The
    argmax sets of the two running sums coincide; the min argmax is a
    support key when eps > 0 and the max argmax lies one period below the
    next support key when phi > 0; otherwise None is returned.
    """
    if not m.is_even(uq):
        raise OddMonomial(m.to_text())
    p, keys = _progression_data(uq, m, ui)
    total = sum(e for _, e in keys)
    # value of eps_l on the interval starting at each key, plus the
    # left-unbounded interval where it is 0
    prefix = []
    run = 0
    for _k, e in keys:
        run += e
        prefix.append(-run)
    eps = max([0] + prefix)
    phi = total + eps
    m_l = None
    if eps > 0:
        for (k, _e), val in zip(keys, prefix):
            if val == eps:
                m_l = k
                break
    n_l = None
    if phi > 0:
        # intervals in order: (-inf, k_0) with value 0, then [k_j, k_{j+1})
        # with value prefix[j]; the right-unbounded interval is excluded
        # since its value -total cannot be the max when phi > 0.
        best = None
        if eps == 0:
            best = keys[0][0] - p
        for j in range(len(keys) - 1):
            if prefix[j] == eps:
                best = keys[j + 1][0] - p
        n_l = best
    return eps, phi, m_l, n_l


def e_tilde(uq, m, ui):
    """Raising operator: None if eps = 0, else multiply by the mutation monomial."""
    eps, _phi, m_l, _n_l = eps_phi(uq, m, ui)
    if eps == 0:
        return None
    return m * a_monomial(uq, ui[0], m_l)


def f_tilde(uq, m, ui):
    """Lowering operator: None if phi = 0, else divide by the mutation monomial."""
    _eps, phi, _m_l, n_l = eps_phi(uq, m, ui)
    if phi == 0:
        return None
    return m / a_monomial(uq, ui[0], n_l)


def _node_key(m):
    return m.items()


def _bfs_closure(uq, seeds, cap):
    seen = set(seeds)
    frontier = sorted(seeds, key=_node_key)
    edges = {}
    while frontier:
        new = []
        for m in frontier:
            for ui in uq.underline_I:
                down = f_tilde(uq, m, ui)
                if down is not None:
                    edges[(m, ui)] = down
                    if down not in seen:
                        seen.add(down)
                        new.append(down)
                up = e_tilde(uq, m, ui)
                if up is not None:
                    edges[(up, ui)] = m
                    if up not in seen:
                        seen.add(up)
                        new.append(up)
            if len(seen) > cap:
                raise CapExceeded(f"node cap {cap} exceeded")
        frontier = sorted(new, key=_node_key)
    nodes = tuple(sorted(seen, key=_node_key))
    highest = tuple(
        m for m in nodes if all(e_tilde(uq, m, ui) is None for ui in uq.underline_I)
    )
    return CrystalGraph(
        nodes=nodes, edges=tuple(sorted(edges.items(), key=lambda kv: (_node_key(kv[0][0]), kv[0][1]))), highest=highest
    )


def component(uq, m, cap=100000):
    """The connected component of the crystal containing m (BFS closure)."""
    if not m.is_even(uq):
        raise OddMonomial(m.to_text())
    return _bfs_closure(uq, [m], cap)


def character(uq, graph):
    """Multiset of node weights, as a map weight-tuple -> count (weights in
    the order of the unfolded vertex list)."""
    out = {}
    for m in graph.nodes:
        wt = m.weight(uq)
        key = tuple(wt[ui] for ui in uq.underline_I)
        out[key] = out.get(key, 0) + 1
    return out


def closure_Minfty(uq, rho, caps=Caps()):
    """Iterate the one-step product construction over dominant monomials
    until the dominant set stabilizes, then return the generated subcrystal
    together with the stable dominant set."""
    seed = z_rho(uq, rho)
    if not seed.is_l_dominant():
        raise NotDominantSeed(seed.to_text())
    comp_cache = {}

    def var_component(i, k):
        if (i, k) not in comp_cache:
            comp_cache[(i, k)] = component(uq, Monomial.variable(i, k), caps.nodes)
        return comp_cache[(i, k)]

    def one_step(dom):
        factors = []
        for (i, k), e in dom.items():
            factors.extend([var_component(i, k).nodes] * e)
        out = set()
        for choice in product(*factors):
            m = Monomial.unit()
            for f in choice:
                m = m * f
            out.add(m)
            if len(out) > caps.nodes:
                raise CapExceeded(f"node cap {caps.nodes} exceeded")
        return out

    dominants = {seed}
    processed = set()
    union = set()
    for _ in range(caps.iterations):
        todo = sorted(dominants - processed, key=_node_key)
        if not todo:
            break
        for dom in todo:
            processed.add(dom)
            step = one_step(dom)
            union |= step
            dominants |= {m for m in step if m.is_l_dominant()}
            if len(union) > caps.nodes:
                raise CapExceeded(f"node cap {caps.nodes} exceeded")
    else:
        if dominants - processed:
            raise CapExceeded(f"iteration cap {caps.iterations} exceeded")
    graph = _bfs_closure(uq, union, caps.nodes)
    stable = tuple(sorted(dominants, key=_node_key))
    return graph, stable


def labels(uq, rho, graph):
    """Label every node by the coweight read off from the mutation-product
    factorization of seed/node; returns (labeled, unlabeled) where labeled
    is a list of (node, coweight, weight map) and unlabeled collects nodes
    with no factorization."""
    seed = z_rho(uq, rho)
    labeled = []
    unlabeled = []
    for m in graph.nodes:
        fac = a_factorize(uq, seed / m)
        wt = m.weight(uq)
        if fac is None:
            unlabeled.append(m)
            continue
        rows = [[] for _ in range(uq.base.n)]
        for (i, k), e in sorted(fac.items()):
            rows[i - 1].extend([k] * e)
        gamma = EvenCoweight(tuple(tuple(sorted(r, reverse=True)) for r in rows))
        labeled.append((m, gamma, wt))
    return labeled, unlabeled


def to_dot(uq, graph):
    """DOT export with edges labeled by the unfolded vertex."""
    lines = ["digraph crystal {"]
    index = {m: f"n{t}" for t, m in enumerate(graph.nodes)}
    for m in graph.nodes:
        lines.append(f'  {index[m]} [label="{m.to_text()}"];')
    for (m, ui), tgt in graph.edges:
        lines.append(f'  {index[m]} -> {index[tgt]} [label="{ui[0]},{ui[1]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(uq, graph):
    return {
        "nodes": [m.to_text() for m in graph.nodes],
        "edges": [
            {"from": m.to_text(), "vertex": list(ui), "to": tgt.to_text()}
            for (m, ui), tgt in graph.edges
        ],
        "highest": [m.to_text() for m in graph.highest],
    }
