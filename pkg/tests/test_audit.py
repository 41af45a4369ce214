import pytest

from proofmesh.audit import CensusBudgetExceeded, OracleSizeError, complexity_report, \
    matrix_rank_mod_p, naive_dft, naive_idft, naive_poly_divide, per_server_max, privacy_census, \
    prover_count, report_csv
from proofmesh.audit.census import census_cost
from proofmesh.domains import EvaluationDomain, fft
from proofmesh.field import DESK, TEST17
from proofmesh.mpc import COSET_IFFT, ProtocolConfig
from proofmesh.opcount import Tally


def test_naive_dft_examples():
    d = EvaluationDomain(TEST17, 4, omega=4)
    assert naive_dft(d, [1, 2, 3, 4]) == [10, 7, 15, 6]
    assert naive_idft(d, naive_dft(d, [5, 1, 0, 9])) == [5, 1, 0, 9]
    one = EvaluationDomain(DESK, 1)
    assert naive_dft(one, [42]) == [42] == naive_idft(one, [42])
    with pytest.raises(OracleSizeError):
        naive_dft(EvaluationDomain(DESK, 8192), [0] * 8192)


def test_naive_poly_divide():
    p = 17
    T = [16, 0, 1]  # x^2 - 1
    assert naive_poly_divide(T, T, p) == ([1], [])
    assert naive_poly_divide([0] + T, T, p) == ([0, 1], [])
    H, R = naive_poly_divide([1, 2, 3], [1, 1], p)
    assert R == [2] and H == [16, 3]  # 3x^2+2x+1 = (x+1)(3x-1) + 2
    with pytest.raises(ZeroDivisionError):
        naive_poly_divide([1], [0, 0], p)


def test_rank():
    assert matrix_rank_mod_p([[1, 2], [2, 4]], 17) == 1
    assert matrix_rank_mod_p([[1, 2], [3, 4]], 17) == 2
    assert matrix_rank_mod_p([], 17) == 0
    assert matrix_rank_mod_p([[0, 0]], 17) == 0


def cfg(**kw):
    return ProtocolConfig.build(TEST17, 2, 1, 1, **kw)


def test_census_private_and_uniform():
    c = privacy_census(cfg(), {1}, [[1, 2], [7, 7]])
    assert c.verdict == "private"
    assert c.multiset_size == 17 ** 6
    assert c.total((1, 2)) == c.total((7, 7)) == 17 ** 6
    assert c.is_uniform((1, 2))


def test_census_empty_coalition():
    c = privacy_census(cfg(), set(), [[1, 2], [3, 4]])
    assert c.verdict == "private"


def test_census_single_round_protocol():
    c = privacy_census(cfg(), {2}, [[1, 2], [3, 4], [0, 0]], protocol=COSET_IFFT)
    assert c.verdict == "private" and c.multiset_size == 17 ** 2 and c.is_uniform((0, 0))


def test_census_negative_control():
    c = privacy_census(cfg(zero_randomness=True), {1}, [[1, 2], [3, 4]])
    assert c.verdict == "leaks"


def test_census_detects_t_plus_one_colluders():
    # with K=1, T=0 the single server sees the secret directly
    c = privacy_census(ProtocolConfig.build(TEST17, 2, 1, 0), set(), [[1, 2], [3, 4]])
    assert c.verdict == "private"  # nobody colludes
    with pytest.raises(ValueError):
        privacy_census(cfg(), {1, 2}, [[1, 2]])


def test_census_budget():
    big = ProtocolConfig.build(TEST17, 4, 1, 1)
    with pytest.raises(CensusBudgetExceeded) as e:
        privacy_census(big, {1}, [[0] * 4, [1] * 4])
    assert e.value.required >= census_cost(big, {1})["steps"]


def test_complexity_report_csv():
    rows = complexity_report([(64, 2, 1), (64, 4, 1)])
    text = report_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "n,K,T,party,mul_count,add_count"
    assert all(len(l.split(",")) == 6 for l in lines)
    assert len(lines) == 1 + (1 + 3) + (1 + 5)
    assert prover_count(rows, 64, 4, 1) > prover_count(rows, 64, 2, 1)


def test_prover_scales_linearly_in_n():
    rows = complexity_report([(1 << k, 4, 1) for k in (10, 11, 12)])
    r1 = prover_count(rows, 2048, 4, 1) / prover_count(rows, 1024, 4, 1)
    r2 = prover_count(rows, 4096, 4, 1) / prover_count(rows, 2048, 4, 1)
    assert abs(r1 - 2) < 0.5 and abs(r2 - 2) < 0.5
    s = per_server_max(rows, 4096, 4, 1) / per_server_max(rows, 2048, 4, 1)
    assert 2 <= s < 2.5


def test_degenerate_server_count_close_to_plain_fft():
    rows = complexity_report([(256, 1, 0)], protocol="coset_ifft")
    t = Tally()
    fft(EvaluationDomain.standard(DESK, 256), [1] * 256, t)
    # one IFFT (plus its 1/n scaling) on the only server
    assert t.mul <= per_server_max(rows, 256, 1, 0) <= t.mul + 2 * 256
