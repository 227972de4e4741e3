"""Laurent monomials in the variables z_{i,k}, mutation monomials,
and the symbolic dictionary to ell-weights."""

import re
from collections import Counter

from .cartan import UnknownVertex, zero_I_member


class OddCoweight(ValueError):
    pass


class OddMonomial(ValueError):
    pass


class Monomial:
    """A Laurent monomial with finite-support integer exponents on pairs (i, k).

    Immutable; zero exponents are dropped and keys kept in (i, k) order.
    """

    __slots__ = ("_exp", "_hash")

    def __init__(self, exponents=None):
        exp = {}
        if exponents:
            for key, e in dict(exponents).items():
                if e != 0:
                    i, k = key
                    exp[(int(i), int(k))] = int(e)
        self._exp = dict(sorted(exp.items()))
        self._hash = hash(tuple(self._exp.items()))

    @classmethod
    def variable(cls, i, k, e=1):
        return cls({(i, k): e})

    @classmethod
    def unit(cls):
        return cls()

    def exponent(self, i, k):
        return self._exp.get((i, k), 0)

    def support(self):
        return tuple(self._exp)

    def items(self):
        return tuple(self._exp.items())

    def __bool__(self):
        return bool(self._exp)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._exp == other._exp

    def __hash__(self):
        return self._hash

    def __mul__(self, other):
        c = Counter(self._exp)
        for key, e in other._exp.items():
            c[key] += e
        return Monomial(c)

    def __truediv__(self, other):
        c = Counter(self._exp)
        for key, e in other._exp.items():
            c[key] -= e
        return Monomial(c)

    def __pow__(self, p):
        return Monomial({key: e * p for key, e in self._exp.items()})

    def inv(self):
        return self ** -1

    def is_l_dominant(self):
        return all(e >= 0 for e in self._exp.values())

    def is_even(self, uq):
        return all(zero_I_member(uq, i, k) is not None for (i, k) in self._exp)

    def weight(self, uq):
        """The weight as a map on unfolded vertices: sums of exponents per residue class."""
        wt = {ui: 0 for ui in uq.underline_I}
        for (i, k), e in self._exp.items():
            ui = zero_I_member(uq, i, k)
            if ui is None:
                raise OddMonomial(f"support key ({i},{k}) is not even")
            wt[ui] += e
        return wt

    def to_text(self):
        if not self._exp:
            return "1"
        parts = []
        for (i, k), e in self._exp.items():
            s = f"z[{i},{k}]"
            if e != 1:
                s += f"^{e}"
            parts.append(s)
        return " * ".join(parts)

    _TOKEN = re.compile(r"^z\[(-?\d+),(-?\d+)\](?:\^(-?\d+))?$")

    @classmethod
    def from_text(cls, text):
        text = text.strip()
        if text == "1":
            return cls.unit()
        c = Counter()
        for part in text.split("*"):
            m = cls._TOKEN.match(part.strip())
            if not m:
                raise ValueError(f"bad monomial token: {part.strip()!r}")
            i, k, e = int(m.group(1)), int(m.group(2)), m.group(3)
            c[(i, k)] += int(e) if e is not None else 1
        return cls(c)

    def to_json(self):
        return [[i, k, e] for (i, k), e in self._exp.items()]

    @classmethod
    def from_json(cls, data):
        c = Counter()
        for i, k, e in data:
            c[(int(i), int(k))] += int(e)
        return cls(c)

    def __repr__(self):
        return f"Monomial({self.to_text()})"


def a_monomial(uq, i, k):
    """The mutation monomial a_{i,k}."""
    dt = uq.base
    d_i = dt.d[i - 1]
    c = Counter()
    c[(i, k)] += 1
    c[(i, k + 2 * d_i)] += 1
    for j in range(1, dt.n + 1):
        cij = dt.c[i - 1][j - 1]
        if j == i or cij >= 0:
            continue
        b = dt.b(i, j)
        for nn in range(1, -cij + 1):
            c[(j, k + b + 2 * d_i * nn)] -= 1
    return Monomial(c)


def _check_even_coweight(uq, cw):
    for i in range(1, uq.base.n + 1):
        for s in cw.doubled[i - 1]:
            if zero_I_member(uq, i, s) is None:
                raise OddCoweight(f"entry {s} at vertex {i} is not even")


def z_rho(uq, rho):
    """The dominant even monomial attached to a framing coweight."""
    _check_even_coweight(uq, rho)
    d = uq.base.d
    m = Monomial.unit()
    for i in range(1, uq.base.n + 1):
        for s in rho.doubled[i - 1]:
            m = m * Monomial.variable(i, 2 * d[i - 1] + s)
    return m


def a_gamma(uq, gamma):
    """The product of mutation monomials over the entries of a coweight."""
    _check_even_coweight(uq, gamma)
    m = Monomial.unit()
    for i in range(1, uq.base.n + 1):
        for s in gamma.doubled[i - 1]:
            m = m * a_monomial(uq, i, s)
    return m


def _wkey(dt, i, k):
    # vertex potential making a_{i,k}'s own (i,k) its strict minimum
    return (k + dt.d[i - 1], dt.rank(i), k)


def a_factorize(uq, m):
    """Write m as a product of mutation monomials, or return None.

    Greedy elimination in the order of the vertex-potential weight
    k + d_i, under which the (i,k) entry of a_{i,k} is strictly minimal
    among its support; this makes the factorization triangular and unique.
    """
    dt = uq.base
    result = Counter()
    cur = m
    if not cur:
        return result
    wmax = max(_wkey(dt, i, k)[0] for (i, k) in cur.support())
    guard = wmax + 4 * max(2 * di for di in dt.d) + 4
    for _ in range(10000):
        if not cur:
            return result
        (i, k) = min(cur.support(), key=lambda key: _wkey(dt, *key))
        e = cur.exponent(i, k)
        if e <= 0 or _wkey(dt, i, k)[0] > guard:
            return None
        result[(i, k)] += e
        cur = cur / (a_monomial(uq, i, k) ** e)
    return None


class LWeightSymbolic:
    """A tuple of rational functions of u, one per vertex, each stored as a
    zeta-power prefactor and a multiset of linear factors (1 - zeta^(e/2) u^-1)^s.

    All zeta-exponents are half-integers stored doubled as integers.
    """

    __slots__ = ("prefactors", "factors")

    def __init__(self, n, prefactors=None, factors=None):
        self.prefactors = tuple(prefactors) if prefactors else (0,) * n
        fs = []
        for i in range(n):
            comp = Counter(factors[i]) if factors else Counter()
            fs.append(tuple(sorted((e, s) for e, s in comp.items() if s != 0)))
        self.factors = tuple(fs)

    @property
    def n(self):
        return len(self.prefactors)

    @classmethod
    def unit(cls, n):
        return cls(n)

    def __eq__(self, other):
        return (
            isinstance(other, LWeightSymbolic)
            and self.prefactors == other.prefactors
            and self.factors == other.factors
        )

    def __hash__(self):
        return hash((self.prefactors, self.factors))

    def __mul__(self, other):
        if self.n != other.n:
            raise ValueError("rank mismatch")
        pre = tuple(a + b for a, b in zip(self.prefactors, other.prefactors))
        fac = []
        for i in range(self.n):
            c = Counter(dict(self.factors[i]))
            for e, s in other.factors[i]:
                c[e] += s
            fac.append(c)
        return LWeightSymbolic(self.n, pre, fac)

    def inv(self):
        pre = tuple(-a for a in self.prefactors)
        fac = [Counter({e: -s for e, s in comp}) for comp in self.factors]
        return LWeightSymbolic(self.n, pre, fac)

    def degree(self, i):
        """Zero count minus pole count at vertex i (1-based)."""
        return sum(s for _, s in self.factors[i - 1])

    def degrees(self):
        return tuple(self.degree(i) for i in range(1, self.n + 1))

    def to_text(self):
        comps = []
        for i in range(self.n):
            parts = []
            if self.prefactors[i] != 0:
                e = self.prefactors[i]
                parts.append(f"zeta^({e}/2)" if e % 2 else f"zeta^{e // 2}")
            for e, s in self.factors[i]:
                ze = f"zeta^({e}/2)" if e % 2 else (f"zeta^{e // 2}" if e else "")
                base = f"(1-{ze}u^-1)" if ze else "(1-u^-1)"
                parts.append(base if s == 1 else f"{base}^{s}")
            comps.append("*".join(parts) if parts else "1")
        return "(" + ", ".join(comps) + ")"

    def __repr__(self):
        return f"LWeightSymbolic{self.to_text()}"


def _shift_component(prefactor, factors, a_doubled):
    """Substitute u -> zeta^(a/2) u: each zero exponent e goes to e - a."""
    return prefactor, Counter({e - a_doubled: s for e, s in factors.items()})


def _a_gamma_vertex(uq, gamma, i):
    """The vertex-i component of the ell-weight of the mutation product:
    diagonal factors at i and cross factors from arrows into i."""
    dt = uq.base
    d = dt.d
    pre = 0
    fac = Counter()
    # A_{gamma_i}(u): prefactor zeta_i^{-|gamma_i|} = zeta^{-sum(s)/2}, doubled -sum(s)
    s_list = gamma.doubled[i - 1]
    pre = -sum(s_list)
    for s in s_list:
        fac[2 * s] += 1  # zeta_i^{2 gamma_{i,r}} = zeta^s, doubled 2s
    # A_{gamma_i}(zeta_i^{-2} u): zeros shift by +2d_i in zeta-exponent
    pre += -sum(s_list)
    for s in s_list:
        fac[2 * s + 4 * d[i - 1]] += 1
    # cross factors: prod over j with c_ji < 0, n = 1..-c_ji of
    # A_{gamma_j}(zeta_j^{-c_ji - 2n} u)^{-1}
    for j in range(1, dt.n + 1):
        cji = dt.c[j - 1][i - 1]
        if j == i or cji >= 0:
            continue
        sj = gamma.doubled[j - 1]
        for nn in range(1, -cji + 1):
            a_dbl = 2 * d[j - 1] * (-cji - 2 * nn)  # doubled zeta-exp of zeta_j^{-c_ji-2n}
            pre -= -sum(sj)
            for s in sj:
                fac[2 * s - a_dbl] -= 1
    return pre, fac


def lweight_of(uq, rho, gamma):
    """The symbolic ell-weight attached to a framing coweight and a
    mutation coweight: prefundamental zeros over the mutation factors."""
    _check_even_coweight(uq, rho)
    _check_even_coweight(uq, gamma)
    dt = uq.base
    d = dt.d
    pres, facs = [], []
    for i in range(1, dt.n + 1):
        fac = Counter()
        for s in rho.doubled[i - 1]:
            # zeta_i^{2 + 2 rho_{i,s}} = zeta^{2 d_i + s}; doubled: 4 d_i + 2 s
            fac[4 * d[i - 1] + 2 * s] += 1
        apre, afac = _a_gamma_vertex(uq, gamma, i)
        pre = -apre
        for e, s in afac.items():
            fac[e] -= s
        pres.append(pre)
        facs.append(fac)
    return LWeightSymbolic(dt.n, pres, facs)


def Y_monomial(datum, i, r):
    """The basic degree-zero ell-weight at vertex i and spectral step r."""
    n = datum.n
    d_i = datum.d[i - 1]
    pres = [0] * n
    facs = [Counter() for _ in range(n)]
    pres[i - 1] = 2 * d_i  # zeta_i, doubled
    facs[i - 1][2 * (r - d_i)] += 1
    facs[i - 1][2 * (r + d_i)] -= 1
    return LWeightSymbolic(n, pres, facs)
