"""Classical finite-type Lie theory with exact arithmetic: positive roots,
weight multiplicities, Weyl dimensions, tensor-product decomposition."""

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import gcd


class NotDominant(ValueError):
    pass


class RootSystem:
    """A finite root system given by its Cartan matrix c[i][j] = <alpha_j, alpha_i^vee>."""

    def __init__(self, cartan):
        self.c = tuple(tuple(int(x) for x in row) for row in cartan)
        self.n = len(self.c)
        self.d = self._symmetrizer()
        self.positive_roots = self._generate_positive_roots()
        # half-sum of positive roots: all-ones in fundamental coordinates
        self.rho_weyl = (1,) * self.n
        self._cinv = self._invert_cartan()

    def _symmetrizer(self):
        n = self.n
        d = [0] * n
        for start in range(n):
            if d[start]:
                continue
            d[start] = 1
            queue = [start]
            while queue:
                i = queue.pop(0)
                for j in range(n):
                    if j != i and self.c[i][j] != 0 and d[j] == 0:
                        # d_i c_ij = d_j c_ji
                        num = d[i] * self.c[i][j]
                        den = self.c[j][i]
                        q, r = divmod(num, den)
                        if r != 0:
                            # scale everything assigned so far
                            for k in range(n):
                                d[k] *= den
                            q = d[i] * self.c[i][j] // den
                        d[j] = q
                        queue.append(j)
        g = 0
        for x in d:
            g = gcd(g, x)
        return tuple(x // g for x in d)

    def _pairing_root(self, beta, i):
        """<beta, alpha_i^vee> for beta in simple-root coordinates."""
        return sum(beta[j] * self.c[i][j] for j in range(self.n))

    def _generate_positive_roots(self):
        simple = [tuple(1 if j == i else 0 for j in range(self.n)) for i in range(self.n)]
        roots = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for beta in frontier:
                for i in range(self.n):
                    # length of the descending i-string through beta
                    p = 0
                    down = list(beta)
                    while True:
                        down[i] -= 1
                        t = tuple(down)
                        if all(x == 0 for x in t):
                            break
                        if t in roots and all(x >= 0 for x in t):
                            p += 1
                        else:
                            break
                    if p - self._pairing_root(beta, i) > 0:
                        up = list(beta)
                        up[i] += 1
                        t = tuple(up)
                        if t not in roots:
                            roots.add(t)
                            new.append(t)
            frontier = new
        return tuple(sorted(roots))

    def _invert_cartan(self):
        n = self.n
        m = [[Fraction(self.c[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            pv = m[col][col]
            m[col] = [x / pv for x in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [a - f * b for a, b in zip(m[r], m[col])]
        return tuple(tuple(row[n:]) for row in m)

    def fund_to_root(self, mu):
        """Fundamental coordinates -> simple-root coordinates (rational)."""
        return tuple(
            sum(self._cinv[i][j] * mu[j] for j in range(self.n)) for i in range(self.n)
        )

    def root_to_fund(self, q):
        return tuple(
            sum(self.c[i][j] * q[j] for j in range(self.n)) for i in range(self.n)
        )

    def inner(self, mu, nu):
        """Weyl-invariant form on weights in fundamental coordinates."""
        q = self.fund_to_root(mu)
        # (mu, nu) = sum_i q_i (alpha_i, nu) = sum_i q_i d_i nu_i
        return sum(q[i] * self.d[i] * nu[i] for i in range(self.n))

    def reflect(self, mu, i):
        """Simple reflection s_i in fundamental coordinates."""
        return tuple(
            mu[j] - mu[i] * self.c[j][i] for j in range(self.n)
        )

    def dominant_conjugate(self, mu):
        """(dominant representative, sign of the Weyl element); sign 0 if on a wall."""
        mu = tuple(mu)
        sign = 1
        while True:
            neg = next((i for i in range(self.n) if mu[i] < 0), None)
            if neg is None:
                return mu, sign
            mu = self.reflect(mu, neg)
            sign = -sign

    def weyl_dim(self, lam):
        if any(x < 0 for x in lam):
            raise NotDominant(str(lam))
        num = Fraction(1)
        lam_rho = tuple(x + 1 for x in lam)
        for alpha in self.positive_roots:
            af = self.root_to_fund(alpha)
            num *= Fraction(self.inner(lam_rho, af), 1) / self.inner(self.rho_weyl, af)
        assert num.denominator == 1
        return int(num)


class Character:
    """A finite weight -> multiplicity map in fundamental coordinates."""

    def __init__(self, mult):
        self.mult = {tuple(w): int(m) for w, m in dict(mult).items() if m != 0}

    def dim(self):
        return sum(self.mult.values())

    def __getitem__(self, w):
        return self.mult.get(tuple(w), 0)

    def items(self):
        return sorted(self.mult.items())

    def __eq__(self, other):
        return isinstance(other, Character) and self.mult == other.mult


def _weights_of(rs, lam):
    """All weights of the simple module with highest weight lam (fundamental coords)."""
    seen = {tuple(lam)}
    frontier = [tuple(lam)]
    alpha_fund = [tuple(rs.c[j][i] for j in range(rs.n)) for i in range(rs.n)]
    while frontier:
        new = []
        for mu in frontier:
            for i in range(rs.n):
                m = mu[i]
                if m > 0:
                    cur = mu
                    for _ in range(m):
                        cur = tuple(a - b for a, b in zip(cur, alpha_fund[i]))
                        if cur not in seen:
                            seen.add(cur)
                            new.append(cur)
        frontier = new
    return seen


def weight_multiplicities(rs, highest):
    """Exact weight multiplicities of L(highest) by the Freudenthal recursion."""
    lam = tuple(int(x) for x in highest)
    if any(x < 0 for x in lam):
        raise NotDominant(str(lam))
    weights = _weights_of(rs, lam)
    dominant = [w for w in weights if all(x >= 0 for x in w)]
    # sort by height of lam - mu, ascending
    def height(mu):
        q = rs.fund_to_root(tuple(a - b for a, b in zip(lam, mu)))
        return sum(q)

    dominant.sort(key=height)
    pos_fund = [rs.root_to_fund(a) for a in rs.positive_roots]
    rho = rs.rho_weyl
    lam_rho = tuple(x + 1 for x in lam)
    clam = rs.inner(lam_rho, lam_rho)
    mult = {}

    def get(mu):
        dom, _ = rs.dominant_conjugate(mu)
        return mult.get(dom, 0)

    for mu in dominant:
        if mu == lam:
            mult[mu] = 1
            continue
        mu_rho = tuple(x + 1 for x in mu)
        denom = clam - rs.inner(mu_rho, mu_rho)
        total = Fraction(0)
        for af in pos_fund:
            k = 1
            while True:
                muk = tuple(a + k * b for a, b in zip(mu, af))
                if muk not in weights:
                    break
                m = get(muk)
                if m:
                    total += m * rs.inner(muk, af)
                k += 1
        mult[mu] = int(Fraction(2) * total / denom)
    full = {}
    for mu in weights:
        dom, _ = rs.dominant_conjugate(mu)
        full[mu] = mult.get(dom, 0)
    return Character(full)


def tensor_decompose(rs, lam, mu):
    """Decomposition multiplicities of L(lam) (x) L(mu) by the Racah-Klimyk method."""
    lam = tuple(int(x) for x in lam)
    mu = tuple(int(x) for x in mu)
    if any(x < 0 for x in lam) or any(x < 0 for x in mu):
        raise NotDominant(f"{lam}, {mu}")
    ch = weight_multiplicities(rs, mu)
    out = Counter()
    for nu, m in ch.mult.items():
        xi = tuple(l + n + r for l, n, r in zip(lam, nu, rs.rho_weyl))
        dom, sign = rs.dominant_conjugate(xi)
        if any(x == 0 for x in dom):
            continue
        res = tuple(x - r for x, r in zip(dom, rs.rho_weyl))
        out[res] += sign * m
    return Counter({w: m for w, m in out.items() if m != 0})


def weight_space_dim(rs, lam, mu):
    """Multiplicity of the weight mu in L(lam)."""
    return weight_multiplicities(rs, lam)[mu]
