"""Smoke tests for the whelix extension module.

Runs standalone (python3 test_smoke.py) and under pytest.
"""

import whelix

P2 = {"factors": [{"dim": 2}]}
P1P1 = {"factors": [{"dim": 1}, {"dim": 1}]}
HAMILTON = {
    "invariants": [
        {"place": "2", "num": 1, "den": 2},
        {"place": "inf", "num": 1, "den": 2},
    ]
}
CONIC = {"factors": [{"dim": 1, "twist": HAMILTON}]}


def line(*degree, mult=1):
    return {"summands": [{"degree": list(degree), "mult": mult}]}


def split_line(*degree, mult=1):
    return {"summands": [{"degree": list(degree), "mult": mult, "geometric": True}]}


def test_brauer_arithmetic():
    assert whelix.hilbert_symbol("-1", "-1", "2") == -1
    assert whelix.hilbert_symbol("-1", "-1", "3") == 1
    assert whelix.hilbert_symbol("-1", "-1", "inf") == -1
    q = whelix.quaternion_class("-1", "-1")
    assert q == HAMILTON
    assert whelix.brauer_period(q) == 2
    assert whelix.brauer_index(q) == 2
    assert whelix.brauer_is_split(whelix.brauer_tensor(q, q))
    assert whelix.brauer_power(q, 3) == q


def test_cohomology():
    assert whelix.cohomology_dims(P2, [1]) == [3, 0, 0]
    assert whelix.cohomology_dims(P2, [-3]) == [0, 0, 1]
    assert whelix.euler_char(P1P1, [1, 1]) == 4
    assert whelix.hom_basis(P2, [1]) == ["x0", "x1", "x2"]


def test_bundles():
    w1 = whelix.as_bundle(CONIC, [1])
    assert w1["summands"][0]["end"] == HAMILTON
    assert whelix.classify(CONIC, w1) == "weak_exceptional"
    assert whelix.classify(P2, line(0)) == "exceptional"
    assert whelix.is_rigid(P2, line(0, mult=2))
    assert whelix.ext_dims(P2, line(0), line(1)) == [3, 0, 0]
    dual = whelix.dual(P2, line(1))["summands"][0]
    assert dual["degree"] == [-1]
    assert dual["end"] == {"invariants": []}
    assert whelix.check_block(P1P1, [line(1, 0), line(0, 1)])["ok"]
    report = whelix.check_collection(
        P2, [line(0), line(1), line(2)], strong=True, full=True
    )
    assert report["passed"]
    assert report["details"]["fullness"]["k0_rank"] == 3


def test_helix():
    thread = [line(0), line(1), line(2)]
    assert whelix.verify_whelix(P2, thread, 3, 9)["passed"]
    assert whelix.verify_geometric(P2, thread, 3, 9)["passed"]
    assert whelix.helix_extend(P2, thread, 3, 0)["summands"][0]["degree"] == [-1]
    assert whelix.helix_hom_dim(P2, thread, 3, 1, 2) == 3
    assert whelix.arrow_count(P2, thread, 3, 1, 3) == 0
    quiver = whelix.quiver(P2, thread, 3, 9)
    assert quiver["dot"].startswith("digraph helix {")
    assert whelix.check_tilting(P2, thread, 3, thread_index=1, L=10)["passed"]


def test_descent():
    labels = {"oo": [0, 0], "a": [1, 0], "b": [0, 1], "d": [1, 1]}
    orbits = whelix.orbits(P1P1, labels, [["(a b)"]])
    assert orbits == [["a", "b"], ["d"], ["oo"]]

    lines = {"summands": [{"degree": [1, 0], "geometric": True},
                          {"degree": [0, 1], "geometric": True}]}
    blocks = whelix.check_descent_blocks(
        P1P1, lines, {"a": [1, 0], "b": [0, 1]}, [["(a b)"]],
        {"a": 1},
    )
    assert blocks["status"] == "affirmative"

    split = whelix.check_singleton_decomposition(
        CONIC, split_line(1, mult=2), {"a": [1]}
    )
    assert split["status"] == "affirmative"

    decomp = whelix.decompose_as_bundle(CONIC, split_line(1, mult=2))
    assert decomp["ok"]
    assert decomp["parts"] == [[1, 1]] or decomp["parts"] == [(1, 1)]


def test_errors():
    try:
        whelix.cohomology_dims({"factors": [{"dim": 2, "twist": HAMILTON}]}, [0])
    except whelix.ValidationError:
        pass
    else:
        raise AssertionError("a quaternion-twisted surface must be rejected")
    try:
        whelix.quaternion_class("0", "1")
    except whelix.ValidationError:
        pass
    else:
        raise AssertionError("degenerate symbol must be rejected")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"[PASS] {test.__name__}")
    print("python smoke: all checks passed")


if __name__ == "__main__":
    main()
