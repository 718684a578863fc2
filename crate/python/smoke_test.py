"""Smoke test for the entkit Python module: run after `pip install -e crates/python`."""

import json
import math

import entkit


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b}"


def main():
    bell = entkit.DensityMatrix.max_entangled(2)
    assert bell.dims == [2, 2]
    close(bell.purity(), 1.0, 1e-12)
    close(entkit.vn_entropy(bell), 0.0, 1e-9)
    close(entkit.vn_entropy(bell.partial_trace([0])), 1.0, 1e-9)

    # round trip through nested complex lists and JSON
    again = entkit.DensityMatrix(bell.to_list(), [2, 2])
    close(entkit.trace_distance(bell, again), 0.0, 1e-12)
    close(entkit.trace_distance(bell, entkit.DensityMatrix.from_json(bell.to_json())), 0.0, 1e-12)

    r = entkit.fw_ree(bell, seed=1)
    close(r.value, 1.0, 2e-4)
    lo, hi = r.interval()
    assert lo <= 1.0 + 1e-9 and hi >= 1.0 - 2e-4
    close(entkit.rel_entropy(bell, r.sigma()), r.value, 1e-9)
    assert all(w >= 0 for w, _, _ in r.atoms())

    # twirl basis on the Bell state: log2(d + 1) - 1
    m = entkit.fw_measured_ree(bell, entkit.Povm.twirl_basis(2), seed=2)
    close(m.value, math.log2(3) - 1, 2e-4)

    probs = entkit.Povm.computational_basis(2, 2).apply(bell)
    close(sum(probs), 1.0, 1e-12)

    rows = entkit.phi_table(3)
    assert [row["d"] for row in rows] == [2, 3]
    assert all(row["pass"] for row in rows)

    stein = entkit.stein(4)
    assert len(stein) == 4 and stein[0]["alpha_n"] == 0

    report = entkit.run_check("ssa", samples=5, seed=7)
    assert report["violations"] == 0, json.dumps(report)[:400]

    try:
        entkit.DensityMatrix([[1.2, 0], [0, -0.2]], [2])
    except ValueError as e:
        assert "positive" in str(e), e
    else:
        raise AssertionError("expected ValueError")

    print("python smoke test: OK")


if __name__ == "__main__":
    main()
