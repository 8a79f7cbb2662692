"""Harmonic oscillator spectra in the occupation-number representation.

A single vibrational mode ladder has level energies ``hbar*omega*(q + 1/2)``
for integer ``q >= 0``.  Many-body states of non-interacting particles on
that ladder are sparse occupation maps ``q -> n_q``; the total particle
number is the sum of the counts and is carried explicitly so that a
malformed state can be rejected rather than silently repaired.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import ClosureError, DomainError

__all__ = [
    "OscillatorParams",
    "OccupationState",
    "mode_energy",
    "ensemble_energy",
]


@dataclass(frozen=True)
class OscillatorParams:
    """Physical constants of one oscillator species.

    Parameters
    ----------
    hbar : float
        Reduced Planck constant, kept explicit so unit systems other than
        ``hbar = 1`` round-trip through every formula.
    mass : float
        Particle mass.  Unused by the bare ladder but required by the
        translational-gas extension.
    omega : float
        Angular frequency of the mode.
    """

    hbar: float = 1.0
    mass: float = 1.0
    omega: float = 1.0

    def __post_init__(self) -> None:
        for name in ("hbar", "mass", "omega"):
            value = getattr(self, name)
            if not value > 0.0:
                raise DomainError(f"{name} must be positive, got {value!r}")

    @property
    def quantum(self) -> float:
        """Level spacing ``hbar * omega``."""
        return self.hbar * self.omega


@dataclass(frozen=True)
class OccupationState:
    """Sparse occupation map ``q -> n_q`` with a validated particle total.

    Zero counts are dropped on construction.  If ``total`` is supplied it
    must equal the summed counts; a mismatch raises :class:`ClosureError`
    instead of being patched over, because a state whose declared total
    disagrees with its occupations carries no trustworthy information.
    """

    occupations: Mapping[int, int]
    total: int | None = None

    def __post_init__(self) -> None:
        clean: dict[int, int] = {}
        for q, n in self.occupations.items():
            if q != int(q) or int(q) < 0:
                raise DomainError(f"level index must be a non-negative integer, got {q!r}")
            if n != int(n) or int(n) < 0:
                raise DomainError(f"occupation count must be a non-negative integer, got {n!r}")
            if int(n) > 0:
                clean[int(q)] = int(n)
        object.__setattr__(self, "occupations", clean)
        derived = sum(clean.values())
        if self.total is None:
            object.__setattr__(self, "total", derived)
        elif int(self.total) != derived:
            raise ClosureError(
                f"declared total {self.total} != summed occupations {derived}"
            )

    @classmethod
    def from_levels(cls, levels: Iterable[int]) -> "OccupationState":
        """Build a state from one ladder index per particle."""
        return cls(dict(Counter(int(q) for q in levels)))

    def items(self) -> list[tuple[int, int]]:
        """Occupied ``(q, n_q)`` pairs in ascending level order."""
        return sorted(self.occupations.items())

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.items())

    def validate(self) -> None:
        """Re-check closure; guards against mutation of the backing map."""
        derived = sum(self.occupations.values())
        if derived != self.total:
            raise ClosureError(
                f"declared total {self.total} != summed occupations {derived}"
            )
        for q, n in self.occupations.items():
            if q < 0 or n < 0:
                raise DomainError(f"invalid entry q={q!r}, n={n!r}")


def mode_energy(q: int, p: OscillatorParams) -> float:
    """Energy ``hbar*omega*(q + 1/2)`` of ladder level ``q``.

    Raises
    ------
    DomainError
        If ``q`` is negative or not an integer.
    """
    if q != int(q) or int(q) < 0:
        raise DomainError(f"level index must be a non-negative integer, got {q!r}")
    return p.quantum * (q + 0.5)


def ensemble_energy(occ: OccupationState, p: OscillatorParams) -> float:
    """Total energy ``sum_q hbar*omega*(q + 1/2) * n_q`` of an occupation state.

    Levels are summed in ascending order so repeated evaluation of the same
    state is bit-for-bit reproducible.
    """
    occ.validate()
    return sum(mode_energy(q, p) * n for q, n in occ.items())
