"""Algebraic weights kappa = (k_tau) and half-integral weights."""
from dataclasses import dataclass


@dataclass(frozen=True)
class AlgebraicWeight:
    """Weight with all k_tau >= 2 of the same parity.

    Derived data: k0 = max k_tau, m_tau = (k0 - k_tau)/2, n_tau = k_tau - 2,
    n0 = k0 - 2 and t = (1, ..., 1), so that kappa + 2m = k0 t.
    """

    k: tuple

    def __post_init__(self):
        k = tuple(int(x) for x in self.k)
        if len(k) < 2:
            raise ValueError("weights are indexed by at least two embeddings")
        if min(k) < 2:
            raise ValueError(f"weight {k} has an entry below 2")
        if len({x % 2 for x in k}) != 1:
            raise ValueError(f"weight {k} mixes parities")
        object.__setattr__(self, "k", k)

    @property
    def d(self):
        return len(self.k)

    @property
    def k0(self):
        return max(self.k)

    @property
    def m(self):
        return tuple((self.k0 - x) // 2 for x in self.k)

    @property
    def n(self):
        return tuple(x - 2 for x in self.k)

    @property
    def n0(self):
        return self.k0 - 2

    @property
    def t(self):
        return (1,) * self.d

    @property
    def is_parallel(self):
        return len(set(self.k)) == 1

    half = False

    def unit_factor(self, u):
        """u^kappa = prod tau(u)^{k_tau}, as an element of F read through the first embedding."""
        F = u.F
        F._require_quadratic()
        k1, k2 = self.k
        if k1 == k2:
            return F(u.norm() ** k1)
        return u ** k1 * u.conjugate() ** k2

    def to_json(self):
        return {"weight": list(self.k), "half": False}


@dataclass(frozen=True)
class HalfIntegralWeight:
    """Weight with entries in (1/2)Z, stored doubled: ``doubled = 2 kappa``."""

    doubled: tuple

    half = True

    @classmethod
    def t_over_2(cls, d=2):
        return cls((1,) * d)

    @property
    def d(self):
        return len(self.doubled)

    @property
    def is_parallel(self):
        return len(set(self.doubled)) == 1

    def unit_factor(self, u):
        # the automorphy factor of half-integral weight is not modelled; on the
        # units = 1 mod n acting on theta series the multiplier is trivial
        return u.F.one

    def to_json(self):
        return {"weight": list(self.doubled), "half": True}
