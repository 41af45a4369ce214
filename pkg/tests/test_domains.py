import pytest
from hypothesis import given, strategies as st

from proofmesh.audit import naive_coset_eval, naive_dft, naive_idft
from proofmesh.domains import DomainError, EvaluationDomain, coset_fft, coset_ifft, fft, ifft, \
    stride_partition, stride_unpartition, target_eval_on_coset, target_eval_on_subgroup
from proofmesh.field import DESK, TEST17
from proofmesh.opcount import Tally


def d17(n=4, eta=2):
    return EvaluationDomain(TEST17, n, omega=TEST17.root_of_unity_int(n) if n != 4 else 4, eta=eta)


def test_fft_known_answer():
    d = d17()
    assert fft(d, [1, 2, 3, 4]) == [10, 7, 15, 6]
    assert ifft(d, [10, 7, 15, 6]) == [1, 2, 3, 4]
    assert fft(d, [5, 0, 0, 0]) == [5] * 4
    assert ifft(d, [5] * 4) == [5, 0, 0, 0]
    assert fft(d, [0] * 4) == [0] * 4


def test_coset_known_answer():
    d = d17()
    # D = {2, 8, 15, 9}
    assert sorted(d.elements()) == [2, 8, 9, 15]
    assert coset_fft(d, [1, 2, 3, 4]) == [15, 13, 11, 16]
    assert coset_ifft(d, [15, 13, 11, 16]) == [1, 2, 3, 4]
    assert coset_fft(d, [7, 0, 0, 0]) == [7] * 4
    assert coset_ifft(d, [0] * 4) == [0] * 4


def test_coset_validation():
    with pytest.raises(DomainError):
        EvaluationDomain(TEST17, 4, omega=4, eta=1)
    with pytest.raises(DomainError):
        EvaluationDomain(TEST17, 4, omega=4, eta=4)  # in S
    with pytest.raises(DomainError):
        EvaluationDomain(TEST17, 4, omega=2)  # 2 has order 8
    with pytest.raises(DomainError):
        EvaluationDomain(TEST17, 3)
    with pytest.raises(DomainError):
        coset_fft(EvaluationDomain(TEST17, 4, omega=4), [1, 2, 3, 4])
    with pytest.raises(DomainError):
        fft(d17(), [1, 2, 3])


def test_target_polynomial():
    d = d17()
    assert target_eval_on_coset(d) == [15] * 4
    assert target_eval_on_subgroup(d) == [0] * 4


def test_coset_disjoint_from_subgroup():
    for n in (2, 4, 8):
        d = EvaluationDomain.standard(TEST17, n)
        assert not set(d.elements()) & set(d.without_coset().elements())
    d = EvaluationDomain.standard(DESK, 64)
    assert not set(d.elements()) & set(d.without_coset().elements())


def test_stride_partition():
    assert stride_partition([1, 2, 3, 4], 2) == [[1, 3], [2, 4]]
    assert stride_partition([1, 2, 3, 4], 1) == [[1, 2, 3, 4]]
    assert stride_partition([1, 2, 3, 4], 4) == [[1], [2], [3], [4]]
    assert stride_unpartition([[1, 3], [2, 4]]) == [1, 2, 3, 4]
    with pytest.raises(DomainError):
        stride_partition([1, 2, 3, 4], 3)


def test_stride_subdomain():
    d = EvaluationDomain.standard(DESK, 16)
    s = d.stride(4)
    assert s.n == 4 and s.omega == pow(d.omega, 4, DESK.modulus) and s.eta == pow(d.eta, 4, DESK.modulus)


@pytest.mark.parametrize("field,n", [(TEST17, 1), (TEST17, 8), (TEST17, 16), (DESK, 32), (DESK, 64)])
def test_against_naive(field, n, rng):
    coset = field is DESK or n <= 8  # every element of F17 has order dividing 16
    d = EvaluationDomain.standard(field, n) if coset else EvaluationDomain(field, n)
    plain = d.without_coset()
    for _ in range(10):
        x = field.random_vector(rng, n)
        assert fft(plain, x) == naive_dft(plain, x)
        assert ifft(plain, x) == naive_idft(plain, x)
        if coset:
            pts = d.elements()
            assert coset_fft(d, x) == [naive_coset_eval(x, z, field.modulus) for z in pts]


@given(st.lists(st.integers(0, DESK.modulus - 1), min_size=32, max_size=32))
def test_round_trips(xs):
    d = EvaluationDomain.standard(DESK, 32)
    assert ifft(d, fft(d, xs)) == xs
    assert fft(d, ifft(d, xs)) == xs
    assert coset_ifft(d, coset_fft(d, xs)) == xs


def test_fft_cost_is_tallied():
    d = EvaluationDomain.standard(DESK, 64)
    t = Tally()
    fft(d, [1] * 64, t)
    assert t.mul == 32 * 6 and t.add == 64 * 6
