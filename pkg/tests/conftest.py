"""Shared test helpers: random even monomials and a small structural
JSON-schema checker."""

import random

from foldcrys.cartan import builtin_datum, unfold
from foldcrys.monomial import Monomial


def unfolded(name):
    return unfold(builtin_datum(name))


def even_pairs(uq, lo=-12, hi=12):
    """All even (vertex, level) pairs with level in [lo, hi]."""
    out = []
    for i in range(1, uq.base.n + 1):
        p = uq.period(i)
        for r in sorted(uq.class_residues[i - 1]):
            k = lo + (r - lo) % p
            while k <= hi:
                out.append((i, k))
                k += p
    return out


def random_even_monomial(uq, rng, lo=-12, hi=12, max_keys=4, max_exp=3):
    pairs = even_pairs(uq, lo, hi)
    n = rng.randint(1, max_keys)
    exp = {}
    for key in rng.sample(pairs, min(n, len(pairs))):
        e = rng.randint(-max_exp, max_exp)
        if e:
            exp[key] = e
    return Monomial(exp)


def make_rng(seed=20260823):
    return random.Random(seed)


def check_schema(instance, schema, path="$"):
    """Minimal structural validator for the shipped schemas: supports
    type (incl. unions), required, properties, items.  Raises
    AssertionError with the offending path."""
    expected = schema.get("type")
    if expected is not None:
        types = expected if isinstance(expected, list) else [expected]
        ok = False
        for t in types:
            if t == "object" and isinstance(instance, dict):
                ok = True
            elif t == "array" and isinstance(instance, list):
                ok = True
            elif t == "string" and isinstance(instance, str):
                ok = True
            elif t == "integer" and isinstance(instance, int) and not isinstance(instance, bool):
                ok = True
            elif t == "boolean" and isinstance(instance, bool):
                ok = True
            elif t == "null" and instance is None:
                ok = True
        assert ok, f"{path}: {instance!r} is not of type {expected}"
    if isinstance(instance, dict):
        for key in schema.get("required", []):
            assert key in instance, f"{path}: missing required key {key!r}"
        for key, sub in schema.get("properties", {}).items():
            if key in instance:
                check_schema(instance[key], sub, f"{path}.{key}")
    if isinstance(instance, list) and "items" in schema:
        for t, item in enumerate(instance):
            check_schema(item, schema["items"], f"{path}[{t}]")
