"""Run configuration shared by the CLI and the scripts."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass

from .complex import DEFAULT_FACE_CAP
from .groebner import DEFAULT_PAIR_BUDGET
from .linalg import DEFAULT_PRIME, check_prime
from .polynomial import Field, PrimeField, RationalField
from .sop import DEFAULT_BUDGET

ENV_FACE_CAP = "SRSCHUBERT_FACE_CAP"
ENV_PAIR_BUDGET = "SRSCHUBERT_PAIR_BUDGET"
FORMATS = ("json", "text", "dot")


@dataclass(frozen=True)
class RunConfig:
    modulus: int | None = DEFAULT_PRIME  # None means work over Q
    seed: int = 0
    face_cap: int = DEFAULT_FACE_CAP
    pair_budget: int = DEFAULT_PAIR_BUDGET
    sop_budget: int = DEFAULT_BUDGET
    output: str = "json"
    verbosity: int = 0

    def __post_init__(self):
        if self.modulus is not None:
            check_prime(self.modulus)
        for name in ("face_cap", "pair_budget", "sop_budget"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.output not in FORMATS:
            raise ValueError(f"output must be one of {FORMATS}")

    @property
    def rational(self) -> bool:
        return self.modulus is None

    @property
    def prime(self) -> int:
        """Modulus for the F_p linear algebra, falling back to the default over Q."""
        return self.modulus if self.modulus is not None else DEFAULT_PRIME

    def field(self) -> Field:
        return RationalField() if self.modulus is None else PrimeField(self.modulus)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["field"] = "Q" if self.modulus is None else str(self.modulus)
        return d


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name}={raw!r} is not an integer") from None


def env_defaults() -> dict:
    """Cap defaults after applying environment overrides."""
    return {
        "face_cap": _env_int(ENV_FACE_CAP, DEFAULT_FACE_CAP),
        "pair_budget": _env_int(ENV_PAIR_BUDGET, DEFAULT_PAIR_BUDGET),
    }
