"""Smoke test for the pyeaqecc extension module."""

import pyeaqecc


def main():
    curve = pyeaqecc.Curve(3)
    assert (curve.n, curve.genus, curve.m_star, curve.max_m) == (27, 3, 15, 31)
    assert curve.m_perp(10) == 21

    p = curve.params(14)
    assert str(p) == "[[27, 6, 13; 9]]_3", str(p)
    assert (p.K, p.c, p.d_lb, p.delta) == (6, 9, 13, 6)
    assert "distance_is_exact_unknown" in p.flags

    assert curve.delta(10) == (6, "optimized")
    assert curve.delta(21) == (6, "duality")
    assert curve.delta(15, "baseline")[0] == curve.delta(15, "optimized")[0] == 7
    assert curve.phi_orders(15) == [0, 9, 12, 18, 21, 24, 3, 22, 25, 4, 15, 26, 13]
    assert curve.phi_table(15).splitlines()[0].startswith("f\tnu(f)")

    codes = curve.sweep()
    assert len(codes) == 32 and [c.m for c in codes] == list(range(32))
    assert curve.gv_range() == (1, 16)
    assert not pyeaqecc.gv_holds(3, 27, 17, 16, 13)
    assert pyeaqecc.reduction_bound(16) == 34680

    for m in range(curve.max_m + 1):
        assert curve.delta_oracle(m) == curve.params(m).delta

    try:
        curve.params(32)
    except ValueError:
        pass
    else:
        raise AssertionError("m = 32 should be rejected")

    print("pyeaqecc smoke test passed")


if __name__ == "__main__":
    main()
