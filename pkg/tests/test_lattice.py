import sympy
from hypothesis import given
from hypothesis import strategies as st

from selectivity.lattice import det, hnf, nullspace_mod_p, solve_in_lattice, solve_rational

square = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
)


def _full_rank(m):
    return sympy.Matrix(m).det() != 0


@given(square, st.lists(st.integers(-3, 3), min_size=16, max_size=16))
def test_hnf_is_canonical(m, mix):
    if not _full_rank(m):
        return
    n = len(m)
    # add integer combinations of the rows: same lattice, different generators
    extra = [[sum(mix[(i + j) % 16] * m[j][c] for j in range(n)) for c in range(n)] for i in range(n)]
    a = hnf(m, n)
    b = hnf(extra + m[::-1], n)
    assert a == b
    for j, row in enumerate(a):
        assert row[j] > 0 and all(x == 0 for x in row[j + 1:])
        for later in a[j + 1:]:
            assert 0 <= later[j] < row[j]
    assert abs(det(a)) == abs(sympy.Matrix(m).det())


@given(square, st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_in_lattice_finds_combinations(m, coeff):
    n = len(m)
    target = [sum(coeff[i] * m[i][c] for i in range(n)) for c in range(n)]
    found = solve_in_lattice(m, target, n)
    assert found is not None
    assert [sum(found[i] * m[i][c] for i in range(n)) for c in range(n)] == target


def test_solve_in_lattice_rejects_outside_points():
    assert solve_in_lattice([[2, 0], [0, 2]], [1, 0], 2) is None


@given(square)
def test_solve_rational(m):
    if not _full_rank(m):
        return
    n = len(m)
    b = list(range(1, n + 1))
    x = solve_rational(m, b)
    assert [sum(x[i] * m[i][j] for i in range(n)) for j in range(n)] == b


@given(square, st.sampled_from([2, 3, 5, 7]))
def test_nullspace_mod_p(m, p):
    from sympy.polys.matrices import DomainMatrix

    rank = DomainMatrix([[sympy.GF(p)(x) for x in r] for r in m], (len(m), len(m[0])), sympy.GF(p)).rank()
    basis = nullspace_mod_p(m, p)
    assert len(basis) == len(m[0]) - rank
    for v in basis:
        assert all(sum(r[j] * v[j] for j in range(len(v))) % p == 0 for r in m)
