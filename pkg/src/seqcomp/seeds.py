"""Binary Golay pairs and the (2, L) complete complementary codes built from them.

Kernels of length 1, 2, 10 and 26 live in ``data/seeds/*.json`` as ordinary
family documents and are re-checked by brute force when first loaded.
Longer pairs come from repeated doubling ``(a, b) -> (a|b, a|~b)``, so the
catalog covers lengths ``2**a``, ``10 * 2**a`` and ``26 * 2**a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .core import ResidueSequence, SequenceSet, SetFamily
from .correlation import accf, is_ccc
from .document import parse_document
from .errors import SeqCompError, VerificationRefusedError

KERNEL_LENGTHS = (1, 2, 10, 26)


class CatalogError(SeqCompError, LookupError):
    """A requested seed is not in the catalog."""


@dataclass(frozen=True)
class GolayPair:
    """Binary complementary pair; checked on construction."""

    a: ResidueSequence
    b: ResidueSequence

    def __post_init__(self):
        if self.a.q != 2 or self.b.q != 2:
            raise ValueError("Golay pairs in the catalog are binary")
        if len(self.a) != len(self.b):
            raise ValueError(f"pair lengths differ: {len(self.a)} vs {len(self.b)}")
        for tau in range(1, len(self.a)):
            if not (accf(self.a, self.a, tau) + accf(self.b, self.b, tau)).is_zero():
                raise VerificationRefusedError(f"not a complementary pair (fails at shift {tau})")

    @property
    def length(self) -> int:
        return len(self.a)

    def as_set(self) -> SequenceSet:
        return SequenceSet(2, (self.a, self.b))


@lru_cache(maxsize=None)
def golay_kernel(L: int) -> GolayPair:
    if L not in KERNEL_LENGTHS:
        raise CatalogError(f"no stored kernel of length {L}; kernels exist for {KERNEL_LENGTHS}")
    text = resources.files("seqcomp").joinpath(f"data/seeds/gcp-{L}.json").read_text("utf-8")
    doc = parse_document(text)
    a, b = doc.sets[0]
    return GolayPair(ResidueSequence(2, tuple(a)), ResidueSequence(2, tuple(b)))


def golay_double(p: GolayPair) -> GolayPair:
    """``(a|b, a|(b+1))``, a pair of twice the length."""
    return GolayPair(
        ResidueSequence(2, p.a.elems + p.b.elems),
        ResidueSequence(2, p.a.elems + p.b.shift(1).elems),
    )


def _decompose(L: int) -> tuple[int, int]:
    """Split L into (kernel, doublings) or raise."""
    for kernel in (26, 10, 1):
        if L % kernel == 0:
            rest = L // kernel
            if rest & (rest - 1) == 0:
                return kernel, rest.bit_length() - 1
    raise CatalogError(f"length {L} is not 2^a, 10*2^a or 26*2^a")


def is_catalog_length(L: int) -> bool:
    try:
        _decompose(L)
    except CatalogError:
        return False
    return True


def catalog_lengths(max_len: int) -> list[int]:
    return [L for L in range(1, max_len + 1) if is_catalog_length(L)]


@lru_cache(maxsize=None)
def binary_gcp(L: int) -> GolayPair:
    kernel, doublings = _decompose(L)
    p = golay_kernel(kernel)
    for _ in range(doublings):
        p = golay_double(p)
    return p


def gcp_to_ccc(p: GolayPair) -> SetFamily:
    """The (2, L) CCC ``{[a; b], [rev(b+1); rev(a)]}``; refuses if it fails."""
    mate = SequenceSet(2, (p.b.shift(1).reversed(), p.a.reversed()))
    F = SetFamily((p.as_set(), mate))
    if not is_ccc(F):
        raise VerificationRefusedError(f"mate construction failed for the length-{p.length} pair")
    return F


@lru_cache(maxsize=None)
def binary_ccc(L: int) -> SetFamily:
    return gcp_to_ccc(binary_gcp(L))


_NAME = re.compile(r"^(?:seeds:)?(gcp|ccc-2x)-?(\d+)$")


def resolve(name: str) -> SetFamily:
    """Look up ``gcp-L`` or ``ccc-2xL`` (optionally prefixed ``seeds:``)."""
    m = _NAME.match(name.strip())
    if not m:
        raise CatalogError(f"unknown seed name {name!r}; expected gcp-L or ccc-2xL")
    kind, L = m.group(1), int(m.group(2))
    if kind == "gcp":
        return SetFamily((binary_gcp(L).as_set(),))
    return binary_ccc(L)


def validate_catalog() -> None:
    """Load every kernel and its CCC; any failure propagates."""
    for L in KERNEL_LENGTHS:
        binary_ccc(L)
