"""Worked examples with their printed values, and diffs against them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from . import analysis, seeds
from .constructions import Theorem2Params, build_css_theorem1, build_zccs_theorem2, mocss_theorem5
from .core import SequenceSet, SetFamily
from .correlation import zcz_width
from .ebf import EbfSpec, associated_sequence

EXAMPLE2_COEFFS = ((1, 3), (2, 4), (1, 1), (0, 3))
EXAMPLE2 = dict(q=5, m=2, alpha=1, pi=(2, 1), coeffs=EXAMPLE2_COEFFS, c0=0)

TABLE1_PARAMS = Theorem2Params(
    q=3, m=3, v=1, alpha=2, beta=1, pi=(1, 2), coeffs=((1, 2, 1), (0, 1, 2)), c0=0
)


@lru_cache(maxsize=None)
def golden() -> dict:
    text = resources.files("seqcomp").joinpath("data/golden.json").read_text("utf-8")
    return json.loads(text)


@dataclass
class Diff:
    """Entry-level comparison of generated against printed data."""

    name: str
    shape: tuple
    mismatches: list = field(default_factory=list)  # (index tuple, expected, got)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        line = f"{self.name}: {' x '.join(map(str, self.shape))}, {len(self.mismatches)} mismatches"
        if self.mismatches:
            idx, exp, got = self.mismatches[0]
            line += f"; first at {idx}: printed {exp}, generated {got}"
        return line


def _diff(name: str, expected, got) -> Diff:
    expected = np.asarray(expected)
    got = np.asarray(got)
    if expected.shape != got.shape:
        return Diff(name, expected.shape, [((), f"shape {expected.shape}", f"shape {got.shape}")])
    bad = np.argwhere(expected != got)
    return Diff(
        name,
        expected.shape,
        [(tuple(int(i) for i in b), int(expected[tuple(b)]), int(got[tuple(b)])) for b in bad],
    )


def example1_functions() -> dict[str, EbfSpec]:
    """``x_1``, ``x_2`` and ``x_1 x_2 + 1`` over q = 3, m = 2."""
    return {
        "x1": EbfSpec(3, 2, alpha=1, pi=(1,), coeffs=((1, 0),)),
        "x2": EbfSpec(3, 2, alpha=1, pi=(1,), coeffs=((0, 1),)),
        "x1x2+1": EbfSpec(3, 2, alpha=1, pi=(1, 2), c0=1),
    }


def example1() -> Diff:
    printed = golden()["example1"]["sequences"]
    got = {k: list(associated_sequence(f)) for k, f in example1_functions().items()}
    return _diff("example1", [printed[k] for k in got], list(got.values()))


def example2_set() -> SequenceSet:
    return build_css_theorem1(**EXAMPLE2)


def example2() -> Diff:
    return _diff("example2", golden()["example2"]["rows"], example2_set().tolist())


def printed_example2_set() -> SequenceSet:
    return SequenceSet.from_array(5, golden()["example2"]["rows"])


def table1_family() -> SetFamily:
    return build_zccs_theorem2(TABLE1_PARAMS)


def table1() -> Diff:
    got = table1_family().tolist()
    d = _diff("table1", golden()["table1"]["sets"], got)
    d.shape = (len(got) * len(got[0]), len(got[0][0]))  # rows x symbols
    return d


def remark_2_4_11() -> SetFamily:
    return mocss_theorem5(seeds.binary_ccc(1), seeds.binary_ccc(10))


@dataclass
class Table3Result:
    entries: list
    built: dict  # length -> verified (bool), for every witnessed length
    expected_flags: dict

    @property
    def flags(self) -> dict:
        return {str(e.length): e.status for e in self.entries if e.status != "verified-here"}

    @property
    def ok(self) -> bool:
        return self.flags == self.expected_flags and all(self.built.values())


def table3(max_len: int = 40, build: bool = True) -> Table3Result:
    """Compare reachable lengths with the printed row; optionally build each one."""
    entries = analysis.compare_with_printed(max_len)
    built = {}
    if build:
        for e in entries:
            if e.witness is None:
                continue
            l1, l2 = e.witness
            F = mocss_theorem5(seeds.binary_ccc(l1), seeds.binary_ccc(l2), verify="never")
            built[e.length] = F.shape == (2, 4, e.length) and zcz_width(F) == e.length
    return Table3Result(entries, built, dict(golden()["table3"]["expected_flags"]))
