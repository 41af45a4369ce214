import pytest

from proofmesh.domains import EvaluationDomain, coset_fft, coset_ifft, ifft, stride_partition
from proofmesh.field import DESK, TEST17
from proofmesh.mpc import COMPOSED, COSET_IFFT, Fault, PROVER, ProtocolAbort, ProtocolConfig, \
    Transcript, mpc_composed_fft, mpc_coset_ifft, replay, run_simulation
from proofmesh.sharing import SharingParams, reconstruct_at


def cfg17(K=2, T=1, seed=0, **kw):
    return ProtocolConfig(EvaluationDomain(TEST17, 4, omega=4, eta=2),
                          SharingParams.canonical(TEST17, K, T), rng_seed=seed, **kw)


def test_composed_small_example():
    c = cfg17()
    want = coset_fft(c.domain, ifft(c.domain, [1, 2, 3, 4]))
    assert mpc_composed_fft(c, [1, 2, 3, 4]) == want


def test_coset_ifft_small_example():
    assert mpc_coset_ifft(cfg17(), [15, 13, 11, 16]) == [1, 2, 3, 4]


@pytest.mark.parametrize("protocol", [COMPOSED, COSET_IFFT])
def test_zero_and_degenerate(protocol):
    c = ProtocolConfig.build(DESK, 16, 4, 2, seed=9)
    assert run_simulation(c, protocol, [0] * 16)[0] == [0] * 16
    c1 = ProtocolConfig.build(DESK, 16, 1, 0)
    x = list(range(16))
    want = coset_fft(c1.domain, ifft(c1.domain, x)) if protocol == COMPOSED else coset_ifft(c1.domain, x)
    assert run_simulation(c1, protocol, x)[0] == want


@pytest.mark.parametrize("n,K,T", [(8, 2, 1), (8, 4, 2), (8, 8, 0), (8, 4, 3), (32, 4, 3), (64, 2, 0)])
def test_matches_oracles(n, K, T, rng):
    field = TEST17 if n <= 8 else DESK
    c = ProtocolConfig.build(field, n, K, T, seed=3)
    for _ in range(5):
        a = field.random_vector(rng, n)
        assert mpc_composed_fft(c, a) == coset_fft(c.domain, ifft(c.domain, a))
        assert mpc_coset_ifft(c, a) == coset_ifft(c.domain, a)


def test_config_validation():
    with pytest.raises(ValueError):
        ProtocolConfig.build(DESK, 8, 3, 1)
    with pytest.raises(ValueError):
        ProtocolConfig(EvaluationDomain(DESK, 8), SharingParams.canonical(DESK, 2, 1))
    with pytest.raises(ValueError):
        ProtocolConfig(EvaluationDomain.standard(DESK, 8), SharingParams.canonical(TEST17, 2, 1))
    with pytest.raises(ValueError):
        run_simulation(ProtocolConfig.build(DESK, 8, 2, 1), "nope", [0] * 8)
    with pytest.raises(ValueError):
        mpc_composed_fft(ProtocolConfig.build(DESK, 8, 2, 1), [0] * 4)


def test_transcript_determinism_and_round_trip(rng):
    c = ProtocolConfig.build(DESK, 16, 2, 2, seed=11)
    a = DESK.random_vector(rng, 16)
    _, t1 = run_simulation(c, COMPOSED, a)
    _, t2 = run_simulation(c, COMPOSED, a)
    b = t1.to_bytes()
    assert b == t2.to_bytes() and b[:5] == b"PMTX1"
    back = Transcript.from_bytes(b)
    assert back.to_bytes() == b and back.messages == t1.messages and back.output == t1.output
    with pytest.raises(ValueError):
        Transcript.from_bytes(b"XXXXX" + b[5:])


def test_seed_changes_views_not_output(rng):
    a = DESK.random_vector(rng, 16)
    o1, t1 = run_simulation(ProtocolConfig.build(DESK, 16, 2, 1, seed=1), COMPOSED, a)
    o2, t2 = run_simulation(ProtocolConfig.build(DESK, 16, 2, 1, seed=2), COMPOSED, a)
    assert o1 == o2
    assert t1.view_log(1) != t2.view_log(1)


@pytest.mark.parametrize("protocol", [COMPOSED, COSET_IFFT])
def test_replay(protocol, rng):
    c = ProtocolConfig.build(DESK, 32, 4, 1, seed=5)
    a = DESK.random_vector(rng, 32)
    out, tr = run_simulation(c, protocol, a)
    assert replay(c, Transcript.from_bytes(tr.to_bytes())) == out


def test_replay_detects_altered_response(rng):
    c = ProtocolConfig.build(DESK, 8, 2, 1)
    _, tr = run_simulation(c, COMPOSED, DESK.random_vector(rng, 8))
    last = [m for m in tr.messages if m.round == 2][0]
    last.payload = (last.payload[0] + 1,) + last.payload[1:]
    with pytest.raises(ProtocolAbort):
        replay(c, tr)


def test_view_logs_are_exactly_delivered_messages(rng):
    c = ProtocolConfig.build(DESK, 16, 2, 1)
    _, tr = run_simulation(c, COMPOSED, DESK.random_vector(rng, 16))
    for st in tr.servers:
        assert st.view_log == tr.view_log(st.index)
        assert [m.sender for m in st.view_log] == [PROVER] + list(range(1, c.N + 1))
        assert not st.inbox
    # the prover only receives final responses
    assert [m.sender for m in tr.messages if m.receiver == PROVER] == list(range(1, c.N + 1))


def test_internal_sharings_reconstruct(rng):
    """Every sharing a server sends interpolates back to its summands at β_1..β_K."""
    c = ProtocolConfig.build(DESK, 16, 4, 2, seed=4)
    a = DESK.random_vector(rng, 16)
    _, tr = run_simulation(c, COMPOSED, a)
    chunks = stride_partition(a, 4)
    first = [list(m.payload) for m in tr.messages if m.round == 0]
    for j in range(4):
        assert reconstruct_at(c.sharing, first, c.sharing.beta[j]) == chunks[j]
    for st in tr.servers:
        sent = [list(m.payload) for m in tr.messages if m.round == 1 and m.sender == st.index]
        for j in range(4):
            assert reconstruct_at(c.sharing, sent, c.sharing.beta[j]) == st.scratch["x"][j]


@pytest.mark.parametrize("n,K,T", [(4, 2, 1), (16, 4, 2), (16, 2, 1)])
def test_summands_add_up_to_strided_coefficients(n, K, T, rng):
    c = ProtocolConfig.build(DESK, n, K, T, seed=8)
    a = DESK.random_vector(rng, n)
    _, tr = run_simulation(c, COMPOSED, a)
    want = stride_partition(ifft(c.domain, a), K)
    p = DESK.modulus
    for j in range(K):
        got = [sum(st.scratch["x"][j][t] for st in tr.servers) % p for t in range(n // K)]
        assert got == want[j]


def test_faults():
    a = list(range(8))
    c = ProtocolConfig.build(DESK, 8, 2, 1, faults=(Fault(2, 6, "crash"),))
    with pytest.raises(ProtocolAbort) as e:
        mpc_composed_fft(c, a)
    assert (e.value.server, e.value.step) == (2, 6)
    c = ProtocolConfig.build(DESK, 8, 2, 1, faults=(Fault(1, 8),))
    honest = mpc_composed_fft(ProtocolConfig.build(DESK, 8, 2, 1), a)
    assert mpc_composed_fft(c, a) != honest
    c = ProtocolConfig.build(DESK, 8, 2, 1, faults=(Fault(3, 4),))
    assert mpc_coset_ifft(c, a) != mpc_coset_ifft(ProtocolConfig.build(DESK, 8, 2, 1), a)


def test_op_attribution_partitions_total(rng):
    c = ProtocolConfig.build(DESK, 64, 4, 1)
    _, tr = run_simulation(c, COMPOSED, DESK.random_vector(rng, 64))
    total = tr.ops.total()
    parts = [tr.ops.party(k) for k in ["prover"] + [f"server{i}" for i in range(1, 6)]]
    assert total.mul == sum(t.mul for t in parts) > 0
    assert total.add == sum(t.add for t in parts)
