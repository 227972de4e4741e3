"""Even rational coweights in doubled-integer storage, gradings,
dominance, and dimension counts for the graded pair spaces."""

from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from .cartan import zero_I_member
from .monomial import OddCoweight, _check_even_coweight


class EmptyWindow(ValueError):
    pass


@dataclass(frozen=True)
class EvenCoweight:
    """Per-vertex lists of doubled entries: doubled[i-1][r] = 2 d_i gamma_{i,r}."""

    doubled: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "doubled", tuple(tuple(int(x) for x in row) for row in self.doubled)
        )

    @classmethod
    def empty(cls, n):
        return cls(tuple(() for _ in range(n)))

    @classmethod
    def from_string(cls, text, n):
        """Parse the CLI form '1:[-4,-6];2:[-4]' into a coweight of rank n."""
        rows = [[] for _ in range(n)]
        text = text.strip()
        if text:
            for chunk in text.split(";"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                vertex, _, body = chunk.partition(":")
                i = int(vertex)
                body = body.strip().lstrip("[").rstrip("]")
                if body:
                    rows[i - 1].extend(int(x) for x in body.split(","))
        return cls(tuple(tuple(r) for r in rows))

    def to_string(self):
        parts = []
        for i, row in enumerate(self.doubled, start=1):
            if row:
                parts.append(f"{i}:[{','.join(str(x) for x in row)}]")
        return ";".join(parts)

    @property
    def n(self):
        return len(self.doubled)

    def alpha(self):
        """Entry counts per vertex (the dimension vector)."""
        return tuple(len(row) for row in self.doubled)

    def dominant_form(self):
        """Canonical dominant arrangement: entries weakly decreasing per vertex."""
        return EvenCoweight(tuple(tuple(sorted(row, reverse=True)) for row in self.doubled))

    def is_dominant(self, uq):
        """Blockwise weak decrease: within each residue class mod 2d_i."""
        for i, row in enumerate(self.doubled, start=1):
            p = 2 * uq.base.d[i - 1]
            last = {}
            for x in row:
                r = x % p
                if r in last and x > last[r]:
                    return False
                last[r] = x
        return True


@dataclass(frozen=True)
class GradedDims:
    """Graded dimensions: counts per (unfolded vertex, integer level)."""

    dims: tuple  # sorted tuple of ((ui, k), count)

    def as_dict(self):
        return dict(self.dims)

    def vector(self):
        """The total dimension vector over unfolded vertices."""
        total = {}
        for (ui, _k), c in self.dims:
            total[ui] = total.get(ui, 0) + c
        return total

    def sequence(self):
        """Level -> vector over unfolded vertices."""
        seq = {}
        for (ui, k), c in self.dims:
            seq.setdefault(k, {})[ui] = c
        return seq


def grading_of(uq, gamma):
    """Attach each doubled entry k at vertex i to the unfolded vertex of its
    residue class, counting multiplicities per level."""
    _check_even_coweight(uq, gamma)
    counts = {}
    for i in range(1, uq.base.n + 1):
        for k in gamma.doubled[i - 1]:
            ui = zero_I_member(uq, i, k)
            key = (ui, k)
            counts[key] = counts.get(key, 0) + 1
    return GradedDims(tuple(sorted(counts.items())))


def underline_mu(uq, lambda_dims, alpha_dims):
    """The shifted weight: framing vector minus Cartan matrix times dimension vector."""
    lam = lambda_dims.vector()
    al = alpha_dims.vector()
    out = {}
    for xi, x in enumerate(uq.underline_I):
        val = lam.get(x, 0)
        for yi, y in enumerate(uq.underline_I):
            val -= uq.underline_C[xi][yi] * al.get(y, 0)
        out[x] = val
    return out


def norm(datum, gamma):
    """Doubled norm: 2 * sum_i d_i sum_r gamma_{i,r} = sum of all doubled entries."""
    return sum(sum(row) for row in gamma.doubled)


def enumerate_dominant(uq, alpha, window):
    """All dominant even coweights with alpha_i entries at vertex i and
    doubled entries in [kmin, kmax], in lexicographic order."""
    kmin, kmax = window
    if kmin > kmax:
        raise EmptyWindow(f"window [{kmin},{kmax}] is empty")
    per_vertex = []
    for i in range(1, uq.base.n + 1):
        vals = [k for k in range(kmax, kmin - 1, -1) if zero_I_member(uq, i, k) is not None]
        picks = list(combinations_with_replacement(vals, alpha[i - 1]))
        per_vertex.append(picks)
    out = [EvenCoweight(tuple(choice)) for choice in product(*per_vertex)]
    out.sort(key=lambda cw: cw.doubled)
    return out


def _shifted_dims(uq, dims):
    """Apply the exceptional grading shift for the triple-laced type:
    levels at the short unfolded vertex (2,1) move up by 2."""
    if uq.base.family != "G":
        return dims
    return {
        (ui, k + 2 if ui == (2, 1) else k): c for (ui, k), c in dims.items()
    }


def dim_N_eta_rho(uq, eta, rho):
    """Dimension of the space of graded pairs (A, B) with A mapping the
    framing levels into levels <= k and B strictly lowering levels."""
    v = _shifted_dims(uq, grading_of(uq, eta).as_dict())
    w = _shifted_dims(uq, grading_of(uq, rho).as_dict())
    total = 0
    for (x, k), wc in w.items():
        vle = sum(c for (y, kk), c in v.items() if y == x and kk <= k)
        total += wc * vle
    for (x, y) in uq.underline_E:
        for (xx, k), vc in v.items():
            if xx != x:
                continue
            vlt = sum(c for (yy, kk), c in v.items() if yy == y and kk < k)
            total += vc * vlt
    return total
