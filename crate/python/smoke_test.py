"""Smoke test for the pyimprim extension module.

Build and install with `maturin develop -m crates/py/Cargo.toml` (or
`pip install --no-build-isolation crates/py`), then run this file.
"""

import math

import pyimprim as im


def main():
    z = im.Cyc.zeta(4, 1)
    assert z * z == im.Cyc("-1")
    assert (z ** 4) == im.Cyc("1")
    assert im.Cyc("1/2") + im.Cyc("1/2") == im.Cyc("1")

    gp = im.GroupParams(4, 2, 2)
    assert gp.full_order() == 32 and gp.order() == 16
    shapes = gp.shapes()
    params = im.HeckeParams(gp)

    total = 0
    for shape in shapes:
        rep = im.Rep(shape, params)
        total += rep.dim ** 2
        assert all(r["failures"] == [] for r in [rep.verify_relations()])
        assert rep.verify_tau_shift()
        dec = rep.decompose()
        assert sum(s["dim"] for s in dec["summands"]) == rep.dim
    assert total == 4 ** 2 * math.factorial(2)

    try:
        im.HeckeParams(gp, v=["1", "-1"])
    except ValueError as e:
        assert "SeparationFailure" in str(e)
    else:
        raise AssertionError("colliding parameters accepted")

    census = im.smash_census(params)
    assert census["sum_of_squares"] == census["expected_sum_of_squares"]

    k = im.KTable.tau_compatible(gp)
    assert im.dunkl_commutation(k, 2)["commuting"]
    assert im.tau_fixed_cherednik(k)["gamma_invariant"]

    # rank 1: T(x^m) = (m + r k_{m mod r}) x^{m-1}
    g1 = im.GroupParams(3, 1, 1)
    k1 = im.KTable(g1, ["1/5", "2/5"], "0")
    [(exps, coeff)] = k1.dunkl_monomial(0, [4])
    assert exps == [3] and coeff == im.Cyc("4") + im.Cyc("3") * im.Cyc("1/5")

    rows = im.bn_dn_table(2)
    assert len(rows) == 5 and sum(r["verdict"] == "split" for r in rows) == 1
    assert im.fake_degrees(im.GroupParams(2, 2, 2))["poincare_verified"]
    print("pyimprim smoke test passed")


if __name__ == "__main__":
    main()
