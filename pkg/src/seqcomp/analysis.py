"""Set-size bounds and the lengths reachable by the (L1 + L2) concatenation."""

from __future__ import annotations

from dataclasses import dataclass

from . import seeds


@dataclass(frozen=True)
class BoundVerdict:
    m: int
    n: int
    l: int
    z: int
    feng_rhs: int
    suehiro_ok: bool
    feng_optimal: bool

    def as_dict(self) -> dict:
        return {
            "M": self.m,
            "N": self.n,
            "L": self.l,
            "Z": self.z,
            "feng_rhs": self.feng_rhs,
            "suehiro_ok": self.suehiro_ok,
            "feng_optimal": self.feng_optimal,
        }


def feng_bound(m: int, n: int, l: int, z: int) -> BoundVerdict:
    """Compare M with ``N * floor(L / Z)`` (ZCCS) and with N (mutually orthogonal).

    ``feng_optimal`` is reported only inside the zone regime ``Z < L``; with
    ``Z == L`` the relevant bound is ``M <= N``.
    """
    if z < 1:
        raise ValueError(f"zone width must be >= 1, got {z}")
    rhs = n * (l // z)
    return BoundVerdict(
        m=m,
        n=n,
        l=l,
        z=z,
        feng_rhs=rhs,
        suehiro_ok=m <= n,
        feng_optimal=z < l and m == rhs,
    )


# Binary (2, 4)-MOCSS lengths printed for this construction, L <= 40.
PRINTED_TABLE3_LENGTHS = (
    3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 16, 17, 18, 20,
    21, 22, 24, 26, 27, 28, 32, 33, 34, 36, 40,
)


@dataclass(frozen=True)
class LengthEntry:
    length: int
    witness: tuple[int, int] | None  # (L1, L2) with L1 <= L2
    printed: bool

    @property
    def status(self) -> str:
        if self.witness is not None:
            return "verified-here" if self.printed else "extra-here"
        return "unverified-here"


def theorem5_witnesses(max_len: int) -> dict[int, tuple[int, int]]:
    """Smallest-L1 decomposition ``L = L1 + L2`` into catalog CCC lengths."""
    lengths = seeds.catalog_lengths(max_len)
    out: dict[int, tuple[int, int]] = {}
    for i, a in enumerate(lengths):
        for b in lengths[i:]:
            if a + b <= max_len:
                out.setdefault(a + b, (a, b))
    return dict(sorted(out.items()))


def enumerate_theorem5_lengths(max_len: int) -> list[int]:
    """Sorted lengths ``L1 + L2 <= max_len`` over catalog (2, L) CCC lengths."""
    if max_len < 2:
        raise ValueError(f"max_len must be >= 2, got {max_len}")
    return list(theorem5_witnesses(max_len))


def compare_with_printed(max_len: int = 40) -> list[LengthEntry]:
    """Union of our lengths and the printed ones, each with its status."""
    ours = theorem5_witnesses(max_len)
    listed = {L for L in PRINTED_TABLE3_LENGTHS if L <= max_len}
    return [LengthEntry(L, ours.get(L), L in listed) for L in sorted(set(ours) | listed)]
