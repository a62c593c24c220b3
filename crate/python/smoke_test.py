"""Smoke test for the pywmesc extension module.

Build and install first:

    pip install maturin
    maturin develop -m crates/python/Cargo.toml

then run ``python python/smoke_test.py``.
"""

import pywmesc

P3 = "4 3\n1.0 2 0 1\n1.0 2 1 2\n1.0 2 2 3\n"


def main():
    inst = pywmesc.Instance.parse(P3)
    assert (inst.n, inst.m) == (4, 3)
    assert inst.intersection_edges() == [(0, 1), (1, 2)]
    assert pywmesc.Instance.parse(inst.to_text()) == inst

    best, stats = pywmesc.solve(inst)
    assert best.chosen == [0, 2]
    assert best.covered == 4 and best.weight == 2.0
    assert stats.branch_nodes == 1 and stats.leaves == 3

    oracle = pywmesc.brute_force(inst)
    assert (oracle.covered, oracle.weight) == (best.covered, best.weight)
    assert pywmesc.better(best, pywmesc.evaluate(inst, [1]))
    try:
        pywmesc.evaluate(inst, [0, 1])
    except ValueError as e:
        assert "share element 1" in str(e)
    else:
        raise AssertionError("overlap not reported")

    star = pywmesc.Instance(6, [[0, 1, 2], [0, 3], [1, 4], [2, 5]])
    assert pywmesc.solve(star)[0].chosen == [1, 2, 3]

    for seed in range(20):
        r = pywmesc.gen_random(seed, 20, 12, 4, 0.4)
        s, _ = pywmesc.solve(r)
        o = pywmesc.brute_force(r)
        assert s.covered == o.covered and abs(s.weight - o.weight) <= 1e-9

    ring = pywmesc.gen_ring(100, 1)
    _, st = pywmesc.solve(ring)
    assert pywmesc.check_bound(st.leaves, 100, 1.0, "2m^2")[0]

    planted, idx = pywmesc.gen_planted(9, 3, 4, 7)
    assert pywmesc.solve(planted)[0].covered == 9 and len(idx) == 3

    triples = [("a", "b", "c"), ("c", "d", "e"), ("f", "g", "h")]
    red = pywmesc.reduce_3set_packing(triples)
    assert (red.n, red.m) == (8, 3)
    assert len(pywmesc.solve(red)[0].chosen) == pywmesc.brute_force_packing(triples) == 2

    assert abs(pywmesc.branching_root([1, 5]) - 1.3247) < 1e-3
    assert abs(pywmesc.branching_root([1, 2]) - 1.618034) < 1e-6

    clique = pywmesc.Instance(201, [[0, i + 1] for i in range(200)])
    try:
        pywmesc.solve(clique, timeout=0.0)
    except TimeoutError:
        pass
    else:
        raise AssertionError("timeout not raised")

    print("pywmesc smoke test passed")


if __name__ == "__main__":
    main()
