"""Verification of the built-in type-B2 reference tables: closure,
labels, weight multisets and the zero-shift label rows."""

import json
from importlib import resources

from .cartan import builtin_datum, unfold
from .coweight import EvenCoweight
from .crystal import Caps, closure_Minfty, labels
from .monomial import lweight_of


def load_golden():
    path = resources.files("foldcrys").joinpath("data/b2_golden.json")
    return json.loads(path.read_text())


def _components_of(graph):
    """Connected components of a crystal graph as lists of nodes."""
    adj = {m: set() for m in graph.nodes}
    for (m, _ui), tgt in graph.edges:
        adj[m].add(tgt)
        adj[tgt].add(m)
    seen = set()
    comps = []
    for m in graph.nodes:
        if m in seen:
            continue
        stack = [m]
        comp = []
        seen.add(m)
        while stack:
            cur = stack.pop()
            comp.append(cur)
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        comps.append(comp)
    return comps


def _wt_vector(uq, m):
    wt = m.weight(uq)
    return tuple(wt[ui] for ui in uq.underline_I)


def verify_case(case, caps=Caps()):
    """Run one reference case and diff it against the stored table.

    Returns a report dict with an "ok" flag and a list of mismatch
    messages (empty when everything agrees).
    """
    datum = builtin_datum("B2")
    uq = unfold(datum)
    problems = []
    rho = EvenCoweight.from_string(case["rho"], datum.n)
    graph, _stable = closure_Minfty(uq, rho, caps)
    labeled, unlabeled = labels(uq, rho, graph)
    if len(graph) != case["node_count"]:
        problems.append(
            f"node count {len(graph)} != expected {case['node_count']}"
        )
    if unlabeled:
        problems.append(f"{len(unlabeled)} nodes without a label")

    by_node = {m: (gamma, wt) for m, gamma, wt in labeled}

    # component decomposition by highest-node weights
    comps = _components_of(graph)
    highest = set(graph.highest)
    comp_tops = []
    comp_of_node = {}
    for t, comp in enumerate(comps):
        tops = [m for m in comp if m in highest]
        if len(tops) != 1:
            problems.append(f"component with {len(tops)} highest nodes")
            comp_tops.append(None)
            continue
        comp_tops.append(_wt_vector(uq, tops[0]))
        for m in comp:
            comp_of_node[m] = t
    expected_comps = sorted(tuple(c) for c in case["components"])
    if sorted(t for t in comp_tops if t is not None) != expected_comps:
        problems.append(
            f"components {sorted(comp_tops)} != expected {expected_comps}"
        )

    if "rows" in case:
        for row in case["rows"]:
            mu = tuple(row["mu"])
            want = sorted(
                EvenCoweight.from_string(g, datum.n).doubled
                for g in row["gammas"]
            )
            got = sorted(
                gamma.doubled
                for _m, gamma, wt in labeled
                if tuple(wt[ui] for ui in uq.underline_I) == mu
            )
            if got != want:
                problems.append(f"labels at weight {mu}: {got} != {want}")

    if "weights" in case:
        want = {tuple(w): c for w, c in case["weights"]}
        got = {}
        for m in graph.nodes:
            key = _wt_vector(uq, m)
            got[key] = got.get(key, 0) + 1
        if got != want:
            problems.append(f"weight multiset mismatch: {got} != {want}")

    if "mu0_rows" in case:
        # nodes whose rational-function weight has zero degree everywhere
        zero = []
        for m, gamma, wt in labeled:
            degs = lweight_of(uq, rho, gamma).degrees()
            if all(d == 0 for d in degs):
                zero.append((m, gamma, _wt_vector(uq, m)))
        want_rows = []
        for row in case["mu0_rows"]:
            want_rows.append(
                (
                    tuple(row["mu"]),
                    tuple(row["component"]),
                    sorted(
                        EvenCoweight.from_string(g, datum.n).doubled
                        for g in row["gammas"]
                    ),
                )
            )
        got_rows = {}
        for m, gamma, wvec in zero:
            top = comp_tops[comp_of_node[m]]
            got_rows.setdefault((wvec, top), []).append(gamma.doubled)
        got_list = sorted(
            (wvec, top, sorted(gs)) for (wvec, top), gs in got_rows.items()
        )
        if got_list != sorted(want_rows):
            problems.append(
                f"zero-shift rows: {got_list} != {sorted(want_rows)}"
            )

    return {"id": case["id"], "ok": not problems, "problems": problems}


def verify_all(caps=Caps()):
    golden = load_golden()
    return [verify_case(case, caps) for case in golden["cases"]]
