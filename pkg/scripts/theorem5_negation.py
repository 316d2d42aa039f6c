"""Which reading of -B makes [A|B ; A|-B] mutually orthogonal?

Tries the additive inverse over Z_q and the phase inverse (b + q/2) on
binary catalog CCCs and on q-ary CCCs from the v = 0 ZCCS construction.
"""

import itertools

from seqcomp import seeds
from seqcomp.constructions import Theorem2Params, build_zccs_theorem2, mocss_theorem5
from seqcomp.correlation import classify


def q_ary_ccc(q, m, c1):
    return build_zccs_theorem2(Theorem2Params(q, m, 0, 1, 1, tuple(range(1, m + 1)), (c1,)))


def main():
    cases = [(f"binary ({l1}, {l2})", seeds.binary_ccc(l1), seeds.binary_ccc(l2))
             for l1, l2 in itertools.combinations_with_replacement((1, 2, 10, 26), 2)]
    for q in (3, 4, 5, 6):
        cases.append((f"q={q} ({q}, {q * q}) x2", q_ary_ccc(q, 2, (0, 1)), q_ary_ccc(q, 2, (1, 1))))
    print(f"{'inputs':28s} {'additive':>22s} {'phase':>22s}")
    for label, A, B in cases:
        row = []
        for negation in ("additive", "phase"):
            if negation == "phase" and A.q % 2:
                row.append("n/a (odd q)")
                continue
            r = classify(mocss_theorem5(A, B, negation=negation, verify="never"))
            row.append(f"Z={r.zcz_width}/{r.length} css={r.is_css}")
        print(f"{label:28s} {row[0]:>22s} {row[1]:>22s}")


if __name__ == "__main__":
    main()
