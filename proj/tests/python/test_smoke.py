import json
import math
from fractions import Fraction

import numpy as np
import pytest

import varfrac


def test_special_functions():
    assert varfrac.gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert varfrac.binomial(70, 35) == math.comb(70, 35)
    b = varfrac.bernoulli_numbers(4)
    assert b == [Fraction(1), Fraction(-1, 2), Fraction(1, 6), Fraction(0), Fraction(-1, 30)]
    with pytest.raises(varfrac.DomainError):
        varfrac.gamma(-1.0)


def test_basis_and_operators():
    q = varfrac.q_matrix(3)
    assert np.allclose(q @ varfrac.q_inverse(3), np.eye(4), atol=1e-14)
    assert varfrac.bernoulli_poly(2, 0.5) == pytest.approx(-1.0 / 12.0)
    t = 0.6
    p = varfrac.operational_matrix(2, 1.0, t)
    want = np.array([[t, 0, 0], [-t / 4, t / 2, 0], [t / 36, -t / 6, t / 3]])
    assert np.allclose(p, want, atol=1e-14)
    coeffs = varfrac.project(2, lambda s: s * s)
    assert np.allclose(coeffs, [1 / 3, 1, 1], atol=1e-12)


def test_caputo_oracle():
    nu, order, t = 3.5, 0.7, 0.4

    def derivative(k, s):
        c = 1.0
        for j in range(k):
            c *= nu - j
        return c * s ** (nu - k)

    want = math.gamma(nu + 1) / math.gamma(nu + 1 - order) * t ** (nu - order)
    assert varfrac.caputo(derivative, order, t) == pytest.approx(want, rel=1e-10)


def test_expressions():
    e = varfrac.parse_expression("2+3*4^2")
    assert e(0.0) == 50.0
    f = varfrac.parse_expression("t*y", ["t", "y"])
    assert f(2.0, 3.0) == 6.0
    assert varfrac.parse_expression(str(f), ["t", "y"]) == f
    with pytest.raises(varfrac.ParseError):
        varfrac.parse_expression("1 +")
    with pytest.raises(varfrac.EvalError):
        varfrac.parse_expression("ln(t)")(0.0)


def test_solve_examples():
    assert varfrac.examples() == [f"example{i}" for i in range(1, 6)]
    sol = varfrac.solve("example1", 1)
    assert np.allclose(sol.coefficients, [-1.0, 0.0], atol=1e-9)
    assert sol(1.0) == pytest.approx(1.5)
    assert sol.criterion == "residual"
    sol4 = varfrac.solve("example4", 1)
    assert sol4.l2_error() == pytest.approx(6.29e-3, abs=1e-5)


def test_problem_documents():
    doc = json.loads(varfrac.example_json("example3"))
    assert doc["deformed_args"] == {"yd": "t^5"}
    doc["M"] = [2]
    sol = varfrac.solve(json.dumps(doc), 2)
    assert np.allclose(sol.coefficients, [2, 5, 3], atol=1e-8)
    del doc["n"]
    with pytest.raises(varfrac.SchemaError, match="'n'"):
        varfrac.check_problem(json.dumps(doc))


def test_run_table():
    csv = varfrac.run_table("example2", [2, 6, 10], [0.2])
    header, row = csv.strip().splitlines()
    assert header == "t,M=2,M=6,M=10"
    assert float(row.split(",")[1]) == pytest.approx(5.69e-3, rel=0.25)
    report = json.loads(varfrac.run_table("example2", [2], [0.5], "json"))
    assert report["results"][0]["converged"] is True


def test_non_convergence():
    with pytest.raises(varfrac.SolverError):
        varfrac.solve("example2", 6, max_iterations=1)
