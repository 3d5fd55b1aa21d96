"""Half-integer theta characteristics with entries in {0, 1}."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ..errors import InvalidInput


@dataclass(frozen=True, order=True)
class ThetaCharacteristic:
    eps1: tuple[int, ...]
    eps2: tuple[int, ...]

    def __post_init__(self):
        e1, e2 = tuple(int(a) for a in self.eps1), tuple(int(a) for a in self.eps2)
        if len(e1) != len(e2):
            raise InvalidInput("characteristic halves must have the same length")
        if any(a not in (0, 1) for a in e1 + e2):
            raise InvalidInput("characteristic entries must lie in {0, 1}")
        object.__setattr__(self, "eps1", e1)
        object.__setattr__(self, "eps2", e2)

    @property
    def g(self) -> int:
        return len(self.eps1)

    @property
    def dot(self) -> int:
        return sum(a * b for a, b in zip(self.eps1, self.eps2))

    @property
    def is_even(self) -> bool:
        return self.dot % 2 == 0

    @property
    def parity(self) -> str:
        return "even" if self.is_even else "odd"

    def __str__(self):
        return "[" + "".join(map(str, self.eps1)) + "|" + "".join(map(str, self.eps2)) + "]"

    @classmethod
    def parse(cls, text: str) -> "ThetaCharacteristic":
        """Parse ``"[011|101]"`` or ``"011,101"``."""
        body = text.strip().strip("[]").replace(",", "|")
        try:
            a, b = body.split("|")
            return cls(tuple(int(c) for c in a.strip()), tuple(int(c) for c in b.strip()))
        except ValueError as exc:
            raise InvalidInput(f"cannot parse characteristic {text!r}") from exc


@lru_cache(maxsize=None)
def enumerate_characteristics(g: int) -> tuple[ThetaCharacteristic, ...]:
    """All 4^g characteristics, ordered by eps1 then eps2 lexicographically."""
    if not 1 <= g <= 4:
        raise InvalidInput(f"genus must be between 1 and 4, got {g}")
    vecs = list(product((0, 1), repeat=g))
    return tuple(ThetaCharacteristic(a, b) for a in vecs for b in vecs)


def even_characteristics(g: int) -> tuple[ThetaCharacteristic, ...]:
    return tuple(c for c in enumerate_characteristics(g) if c.is_even)


def odd_characteristics(g: int) -> tuple[ThetaCharacteristic, ...]:
    return tuple(c for c in enumerate_characteristics(g) if not c.is_even)


def even_count(g: int) -> int:
    return 2 ** (g - 1) * (2**g + 1)


def chi_weight(g: int) -> int:
    """Half the number of even characteristics, the weight of their product."""
    return 2 ** (g - 2) * (2**g + 1)
