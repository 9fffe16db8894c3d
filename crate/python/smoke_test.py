#!/usr/bin/env python3
"""Smoke test for the parhiggs_py extension module.

Build the extension first:

    cargo build -p parhiggs-py --release

then run this script from the repository root:

    python3 python/smoke_test.py
"""

import shutil
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        REPO / "target" / "release" / "libparhiggs_py.so",
        REPO / "target" / "debug" / "libparhiggs_py.so",
        REPO / "target" / "release" / "libparhiggs_py.dylib",
        REPO / "target" / "debug" / "libparhiggs_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("extension not built; run: cargo build -p parhiggs-py --release")
    stage = Path(tempfile.mkdtemp(prefix="parhiggs_py_"))
    shutil.copy(built, stage / "parhiggs_py.so")
    sys.path.insert(0, str(stage))
    import parhiggs_py

    return parhiggs_py


def main():
    ph = load_module()

    # Parabolic weight calculus.
    b = ph.ParabolicBundle(3, -2, [[(1, 3, 1), (2, 3, 2)], [(0, 1, 3)]])
    assert b.pardeg() == Fraction(-1, 3)
    assert b.dual().pardeg() == Fraction(1, 3)
    assert b.dual().dual() == b

    line = ph.ParabolicBundle.line(0, [(2, 3)])
    one_point = ph.ParabolicBundle(1, 0, [[(2, 3, 1)]])
    twisted = one_point.tensor_line(line)
    assert twisted.degree == 1 and twisted.points() == [[(1, 3, 1)]]

    round_trip = ph.ParabolicBundle.from_json(b.to_json())
    assert round_trip == b

    # Orbifold line-bundle arithmetic and cohomology.
    sig = ph.Signature(2, [2])
    l = ph.LineBundle(1, [1])
    assert l.v_degree(sig) == Fraction(3, 2)
    assert l.tensor(l, sig) == ph.LineBundle(3, [0])
    assert l.euler_characteristic(sig) == 0
    assert ph.cohomology_ranks(sig) == (4, 1)
    assert ph.cyclic_cohomology_ranks(3) == (1, 0, 0)
    assert ph.mayer_vietoris_exact(ph.Signature(1, [2, 3]))
    assert ph.picard_components(ph.Signature(0, [2, 3, 4])) == 24
    assert ph.sqrt_count(sig) == 16

    # Spectral cover bookkeeping.
    cover = ph.spectral_cover(sig, 2, 3)
    assert cover["branch_degree"] == 6 and cover["spectral_genus"] == 6
    assert ph.hitchin_base_dimension(2, 1, 2) == 7
    assert ph.hitchin_base_dimension(2, 1, 2, strong=True) == 6
    assert ph.hitchin_fiber_component_count(sig, 2) == 4
    assert ph.prym(sig, 3) == (4, 2)
    assert ph.lift_multiplicity([Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]) == 6

    # Sp(2n,R) layer.
    v = ph.ParabolicBundle(2, 3, [[(0, 1, 2)]])
    triple = ph.SpHiggs(2, v, sig, True, True)
    assert triple.toledo() == (Fraction(3), Fraction(3), True)
    is_min, case, index = triple.classify_minimum()
    assert is_min and case == "type-2" and index == 0
    partner = triple.cayley_partner(ph.LineBundle(1, [1]))
    assert partner.pardeg() == 0
    assert ph.morse_index(2, 1, Fraction(1)) == 2
    assert sum(ph.minima_decomposition(3, 2, 1), Fraction(0)) == Fraction(9, 2)

    # Component counts against their enumerations.
    assert ph.component_count(sig, 2) == 52
    assert ph.component_count(sig, 3) == 48
    assert ph.component_count(sig, 2, "fixed-half") == 49
    assert ph.component_count(ph.Signature(1, [2, 3]), 2) == 22
    assert ph.component_families(sig, 2) == (30, 6, 16)
    classes = ph.invariant_classes(ph.Signature(1, [2, 3]), 2)
    assert len(classes) == 22
    assert ph.non_reduced([[1, 1], [0, 2]], [2, 3])
    assert not ph.non_reduced([[0, 2]], [4])

    # Regime errors surface as ValueError.
    try:
        ph.component_count(ph.Signature(0, [3, 3]), 2)
    except ValueError as e:
        assert "s0 = 0" in str(e)
    else:
        raise AssertionError("expected a regime error")

    print("smoke test passed")


if __name__ == "__main__":
    main()
