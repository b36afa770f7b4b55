"""Smoke test for the pyquasiinv extension module.

Build and install first, e.g.

    pip install maturin
    maturin build -m crates/python/Cargo.toml --release -o target/wheels
    pip install target/wheels/pyquasiinv-*.whl

then run `python python/smoke_test.py`.
"""

import json

import pyquasiinv as qi


def main():
    x1 = qi.Poly.var(2, 1)
    x2 = qi.Poly.var(2, 2)
    q = qi.q_integral(2, 1, 2, 0)
    assert q == qi.q_closed_form(2, 1, 2, 0)
    assert q.degree == 3
    assert q.coeff([3, 0]) == "1/6"
    z = x2 - x1
    assert (z ** 3) * qi.Poly.from_json('{"nvars":2,"terms":[{"exp":[0,0],"num":"-1","den":"6"}]}') == q
    assert qi.Poly.from_json(q.to_json()) == q

    basis = qi.hook_basis(3, 1, 2, verify=True)
    assert [b.degree for b in basis] == [4, 5]
    assert all(qi.is_quasiinvariant(b, 1) for b in basis)
    assert all(qi.gamma_apply(b, [[1, 3], [2]]) == b for b in basis)

    assert qi.act(x1, "(1,2)") == x2
    assert not qi.is_quasiinvariant(x1, 1)
    try:
        qi.apply_lm(x1, 1)
    except qi.NonPolynomialError:
        pass
    else:
        raise AssertionError("L_1 x1 should not be polynomial")

    q0, _, q2 = qi.hook_basis(4, 1, 2)
    assert qi.apply_lm(q2, 1) == q0 + q0

    report = json.loads(qi.full_hilbert(2, 1, 8, oracle=True))
    assert report["total"] == [1, 1, 2, 3, 4, 5, 6, 7, 8]
    assert all(row["agrees"] for row in report["oracle"])
    assert qi.graded_dimension(3, 1, 4) == 6
    assert len(qi.oracle_basis(2, 1, 3)) == 3

    passed, text = qi.verify("hook", 3, 1, seed=1)
    assert passed, text
    print("pyquasiinv smoke test: OK")


if __name__ == "__main__":
    main()
