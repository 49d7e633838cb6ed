import json
from fractions import Fraction

try:
    import mfflow
except ImportError:
    import _mfflow as mfflow


def test_combinatorial_values():
    assert mfflow.fuss_catalan(2, 2) == "3"
    assert mfflow.fuss_catalan(2, 3) == "12"
    assert mfflow.stirling2(4, 2) == "7"
    assert mfflow.ordered_bell(3) == "13"


def test_weight_taylor_roundtrip():
    weights = ["1/9", "-2/5", "3/7", "1/11"]
    taylor = mfflow.weights_to_taylor(weights, 3)
    back = mfflow.taylor_to_weights(taylor)
    assert [Fraction(w) for w in back] == [Fraction(w) for w in weights]


def test_fixed_point_solve():
    res = mfflow.solve_fixed_point(tol="1/100000000", q_max=20)
    assert res["iterations"] <= 100
    assert abs(res["residual"]) < 1e-8
    b1 = Fraction(res["b1_star"])
    assert abs(float(b1) - 0.178) < 0.01
    assert abs(res["f2_top"] - 1 / 32) < 1e-7


def test_first_order_amplitude():
    terms = mfflow.amplitude_terms(2, 1, j_max=2)
    # 3 - 3/alpha
    as_map = {(t["alpha_power"], t["log_power"]): t["coefficient"] for t in terms}
    assert as_map[(0, 0)][0]["coefficient"] == "3"
    assert as_map[(-1, 0)][0]["coefficient"] == "-3"


def test_borel_resum_linear():
    # transform of z is t; the resummation returns z itself
    val = mfflow.borel_resum(["0", "1"], "3/7", pade=False)
    assert abs(val - 3 / 7) < 1e-12


def test_run_json_report():
    doc = json.loads(mfflow.run_json("fixed-point", {"q-max": "20", "tol": "1/100000000"}))
    assert doc["errors"] == []
    assert all(c["pass"] for c in doc["certificates"])
    names = [t["name"] for t in doc["tables"]]
    assert "picard_trace" in names and "fixed_point" in names
