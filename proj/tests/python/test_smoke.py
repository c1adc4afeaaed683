import itertools
import json

import pytest

import commvar


def matrices_mod(p, n):
    for entries in itertools.product(range(p), repeat=n * n):
        yield [list(entries[i * n:(i + 1) * n]) for i in range(n)]


def matmul(a, b, p):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n)] for i in range(n)]


def brute_pairs(p, n, c):
    """Pairs over F_p with AB - BA = cI, by direct enumeration."""
    target = [[c if i == j else 0 for j in range(n)] for i in range(n)]
    mats = list(matrices_mod(p, n))
    count = 0
    for a in mats:
        for b in mats:
            ab, ba = matmul(a, b, p), matmul(b, a, p)
            if [[(ab[i][j] - ba[i][j]) % p for j in range(n)] for i in range(n)] == target:
                count += 1
    return count


def test_weyl_pair_commutator():
    a, b = commvar.weyl_pair(3)
    assert commvar.commutator(a, b, 3) == "1,0,0;0,1,0;0,0,1"
    assert commvar.invariant_factors(a, 3) == ["t^3"]


def test_block_pair_regular():
    x, y = commvar.block_pair(2, ["0", "1"])
    assert commvar.is_regular(x, 2)
    assert commvar.commutator(x, y, 2) == "1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1"


def test_counts_against_enumeration():
    assert commvar.count_commuting_pairs(2, 2) == brute_pairs(2, 2, 0)
    assert commvar.count_lie_pairs(2, 2) == brute_pairs(2, 2, 1)
    assert commvar.count_lie_pairs(2, 3) == 0
    assert commvar.count_lie_pairs(2, 2, strategy="brute") == commvar.count_lie_pairs(2, 2)


def test_group_counts_strategies_agree():
    assert commvar.count_group_pairs(2, 2, 3) == commvar.count_group_pairs(2, 2, 3, strategy="brute")
    assert commvar.count_w(2, 2, 3) == commvar.count_w(2, 2, 3, strategy="brute")


def test_class_sizes_sum_to_matrix_count():
    classes = commvar.classes(2, 3)
    assert sum(c["size"] for c in classes) == 3 ** 4
    gl = commvar.classes(2, 3, invertible=True)
    assert sum(c["size"] for c in gl) == (9 - 1) * (9 - 3)


def test_estimate_dimension_exact_power_law():
    fitted, raw, residual = commvar.estimate_dimension([(3, 3 ** 5), (9, 9 ** 5)])
    assert fitted == 5
    assert float(raw) == pytest.approx(5.0)
    assert float(residual) == pytest.approx(0.0)


def test_dimensions():
    assert commvar.component_dimensions(2, 2)["equal_components"]
    assert commvar.component_dimensions(2, 4)["dim_C"] == 18
    assert commvar.group_dims(4, 2) == (18, 14)


def test_limit_exceeded():
    with pytest.raises(commvar.LimitExceeded):
        commvar.count_lie_pairs(2, 2, strategy="brute", max_brute=10)


def test_cli_round_trip():
    code, out, err = commvar.run_cli(["count", "lie", "--p", "2", "--n", "2", "--qs", "2,4,8", "--expect"])
    assert code == 0
    report = json.loads(out)
    assert report["fitted_dimension"] == 5
    assert report["match"] is True
    assert "fitted 5" in err


def feit_fine(n, q):
    """Commuting pairs in M_n(F_q) from the Feit-Fine generating function
    sum_n P_n x^n / |GL_n(q)| = prod_{i>=1} prod_{j>=0} 1 / (1 - q^{1-j} x^i)."""
    from fractions import Fraction

    def mul(a, b):
        c = [Fraction(0)] * (n + 1)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                if i + j <= n:
                    c[i + j] += u * v
        return c

    total = [Fraction(1)] + [Fraction(0)] * n
    for i in range(1, n + 1):
        # prod_{j>=2} 1/(1 - q^{1-j} y) by Euler's identity, then the j = 0, 1 factors
        series = [Fraction(0)] * (n + 1)
        for m in range(n // i + 1):
            e = Fraction(1, q ** m)
            for k in range(1, m + 1):
                e /= 1 - Fraction(1, q ** k)
            series[m * i] = e
        for r in (q, 1):
            geometric = [Fraction(0)] * (n + 1)
            for m in range(n // i + 1):
                geometric[m * i] = Fraction(r) ** m
            series = mul(series, geometric)
        total = mul(total, series)
    gl = 1
    for i in range(n):
        gl *= q ** n - q ** i
    value = total[n] * gl
    assert value.denominator == 1
    return int(value)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2), (3, 4), (4, 2)])
def test_commuting_counts_match_feit_fine(n, q):
    assert commvar.count_commuting_pairs(n, q) == feit_fine(n, q)
