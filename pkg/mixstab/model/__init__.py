"""
Domain types of a two-species Bose mixture.

All quantities are taken in one consistent unit system; hbar and the masses are explicit
fields so the natural units m = hbar = 1 are a configuration, not an assumption.
"""

import dataclasses
from enum import Enum
import math
from typing import Dict, Tuple


class BranchLabel(Enum):
    """The two excitation branches of the balanced mixture."""

    MINUS = "minus"
    PLUS = "plus"

    @classmethod
    def from_str(cls, name: str) -> "BranchLabel":
        if name == "minus":
            return cls.MINUS
        elif name == "plus":
            return cls.PLUS
        else:
            raise ValueError(f"Invalid branch label: {name!r}")

    @property
    def sign(self) -> int:
        # radicand 1 + sign * lambda: 1 - lambda (minus), 1 + lambda (plus)
        return -1 if self is BranchLabel.MINUS else 1

    def __str__(self) -> str:
        return self.value


@dataclasses.dataclass(frozen=True)
class MixtureParams:
    m1: float
    m2: float
    g11: float
    g22: float
    g12: float
    n1: float
    n2: float
    nc1: float
    nc2: float
    hbar: float = 1.0

    def swap_species(self) -> "MixtureParams":
        return MixtureParams(
            m1=self.m2, m2=self.m1,
            g11=self.g22, g22=self.g11, g12=self.g12,
            n1=self.n2, n2=self.n1,
            nc1=self.nc2, nc2=self.nc1,
            hbar=self.hbar,
        )

    def replace(self, **changes) -> "MixtureParams":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> Dict[str, float]:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class SymmetricParams:
    m: float
    g: float
    lam: float
    n: float
    nc: float
    hbar: float = 1.0

    def replace(self, **changes) -> "SymmetricParams":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> Dict[str, float]:
        return {"m": self.m, "g": self.g, "lambda": self.lam, "n": self.n, "nc": self.nc, "hbar": self.hbar}


@dataclasses.dataclass(frozen=True)
class FluctuationSet:
    """Reduced fluctuations N~_ij, M~_ij (unreduced values divided by sqrt(nc_i nc_j))."""

    nt11: float = 0.0
    nt22: float = 0.0
    nt12: float = 0.0
    mt11: float = 0.0
    mt22: float = 0.0
    mt12: float = 0.0

    @classmethod
    def zero(cls) -> "FluctuationSet":
        return cls()

    @property
    def f12(self) -> float:
        """N~12 + M~12, the combination entering the couplings and the soft branch."""
        return self.nt12 + self.mt12

    def is_symmetric(self) -> bool:
        return self.nt11 == self.nt22 and self.mt11 == self.mt22

    def is_finite(self) -> bool:
        return all(math.isfinite(v) for v in self.as_tuple())

    def swap(self) -> "FluctuationSet":
        return FluctuationSet(
            nt11=self.nt22, nt22=self.nt11, nt12=self.nt12,
            mt11=self.mt22, mt22=self.mt11, mt12=self.mt12,
        )

    def as_tuple(self) -> Tuple[float, ...]:
        return (self.nt11, self.nt22, self.nt12, self.mt11, self.mt22, self.mt12)

    def max_abs_diff(self, other: "FluctuationSet") -> float:
        return max(abs(a - b) for a, b in zip(self.as_tuple(), other.as_tuple()))

    def to_dict(self) -> Dict[str, float]:
        return dataclasses.asdict(self)


from mixstab.model.params import (  # noqa: E402
    embed_symmetric,
    gamma_1d,
    lieb_liniger,
    params_from_dict,
    reduce,
    reduce_symmetric,
    unreduce,
    validate,
)
