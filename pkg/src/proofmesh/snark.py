"""Setup, proving (centralized or distributed quotient), and verification.

Group G_T is written additively, so the verifier's check reads
e(L_r, R_q) = e(α, β) + e(I, γ) + e(K, δ).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, fields
from typing import Sequence

from .backend import G1, G2, GT, Enc, MockBackend
from .domains import EvaluationDomain, coset_fft, coset_ifft, ifft, target_eval_on_coset
from .field import PrimeField, field_by_modulus
from .mpc import COMPOSED, COSET_IFFT, Fault, ProtocolConfig, Transcript, run_simulation
from .opcount import OpCounter, Tally
from .qap import QapInstance, Witness, abc_vectors, selector_polynomial_evals_at
from .sharing import SharingParams


class SetupError(ValueError):
    pass


class UnsatisfiableWitness(ValueError):
    def __init__(self, detail: str = ""):
        super().__init__("witness does not satisfy circuit" + (f": {detail}" if detail else ""))


class SelfVerificationError(RuntimeError):
    def __init__(self):
        super().__init__("proof failed self-verification")


@dataclass(frozen=True)
class Toxic:
    s: int
    alpha: int
    beta: int
    gamma: int
    delta: int


@dataclass(frozen=True)
class EvaluationKey:
    alpha1: Enc
    beta1: Enc
    beta2: Enc
    delta1: Enc
    delta2: Enc
    L1: tuple[Enc, ...]
    R1: tuple[Enc, ...]
    R2: tuple[Enc, ...]
    kpk1: tuple[Enc, ...]
    t1: tuple[Enc, ...]


@dataclass(frozen=True)
class VerificationKey:
    alpha_beta: Enc
    gamma2: Enc
    delta2: Enc
    kvk1: tuple[Enc, ...]


@dataclass(frozen=True)
class Proof:
    L_r: Enc
    R_q: Enc
    K: Enc


def sample_toxic(qap: QapInstance, rng) -> Toxic:
    """Uniform nonzero toxic values with s outside S. ``rng`` is a numpy Generator."""
    p = qap.field.modulus
    while True:
        vals = [int(v) for v in rng.integers(1, p, size=5)]
        if pow(vals[0], qap.n, p) != 1:
            return Toxic(*vals)


def sample_blinding(field: PrimeField, rng) -> tuple[int, int]:
    r, q = (int(v) for v in rng.integers(0, field.modulus, size=2))
    return r, q


def setup(qap: QapInstance, toxic: Toxic, backend=None) -> tuple[EvaluationKey, VerificationKey]:
    field = qap.field
    p = field.modulus
    be = backend or MockBackend(field)
    s, al, be_, ga, de = (v % p for v in (toxic.s, toxic.alpha, toxic.beta, toxic.gamma, toxic.delta))
    if ga == 0 or de == 0:
        raise SetupError("γ and δ must be nonzero")
    Ts = (pow(s, qap.n, p) - 1) % p
    if Ts == 0:
        raise SetupError("s lies in S, so T(s) = 0")
    Ls, Rs, Os = selector_polynomial_evals_at(qap, s)
    g_inv, d_inv = field.inv_int(ga), field.inv_int(de)

    def k(i, inv):
        return (be_ * Ls[i] + al * Rs[i] + Os[i]) * inv % p

    kvk = [k(i, g_inv) for i in qap.io]
    kpk = [k(i, d_inv) for i in qap.mid]
    t = [pow(s, j, p) * Ts % p * d_inv % p for j in range(qap.n - 1)]
    e1, e2 = be.encode1, be.encode2
    ek = EvaluationKey(
        e1(al), e1(be_), e2(be_), e1(de), e2(de),
        tuple(map(e1, Ls)), tuple(map(e1, Rs)), tuple(map(e2, Rs)),
        tuple(map(e1, kpk)), tuple(map(e1, t)),
    )
    vk = VerificationKey(be.pair(e1(al), e2(be_)), e2(ga), e2(de), tuple(map(e1, kvk)))
    return ek, vk


def _check_satisfied(a, b, c, p) -> None:
    for j, (x, y, z) in enumerate(zip(a, b, c)):
        if (x * y - z) % p:
            raise UnsatisfiableWitness(f"gate {j} violates a*b = c")


def quotient_centralized(domain: EvaluationDomain, a, b, c, tally: Tally | None = None) -> list[int]:
    """h' = coset_ifft((a''∘b'' - c'') / T on D), with x'' = coset_fft(ifft(x))."""
    two = [coset_fft(domain, ifft(domain, v, tally), tally) for v in (a, b, c)]
    return _divide_and_interpolate(domain, *two, tally=tally, inverse=lambda h: coset_ifft(domain, h, tally))


def _divide_and_interpolate(domain, a2, b2, c2, tally, inverse):
    p = domain.p
    t_inv = domain.field.inv_int(target_eval_on_coset(domain)[0])
    h = [(x * y - z) * t_inv % p for x, y, z in zip(a2, b2, c2)]
    if tally is not None:
        tally.charge(mul=2 * domain.n, add=domain.n, inv=1)
    return inverse(h)


def polynomial_division_centralized(qap: QapInstance, witness: Witness,
                                    tally: Tally | None = None) -> list[int]:
    p = qap.field.modulus
    a, b, c = abc_vectors(qap, witness)
    _check_satisfied(a, b, c, p)
    h = quotient_centralized(qap.domain, a, b, c, tally)
    if h[-1] != 0:
        raise UnsatisfiableWitness("quotient degree exceeds n-2")
    return h


@dataclass
class DistributedRun:
    h: list[int]
    transcripts: list[Transcript]
    ops: OpCounter


def quotient_distributed(config: ProtocolConfig, a, b, c) -> DistributedRun:
    """Three composed-transform runs, prover-side division, one coset-IFFT run.

    Runs use streams 1..4 of ``config`` so their randomness is independent.
    """
    ops = OpCounter()
    transcripts = []
    two = []
    for stream, v in enumerate((a, b, c), start=1):
        out, tr = run_simulation(config.with_stream(stream), COMPOSED, v)
        two.append(out)
        transcripts.append(tr)
        ops.merge(tr.ops)

    def inverse(hvals):
        out, tr = run_simulation(config.with_stream(4), COSET_IFFT, hvals)
        transcripts.append(tr)
        ops.merge(tr.ops)
        return out

    h = _divide_and_interpolate(config.domain, *two, tally=ops.prover(), inverse=inverse)
    return DistributedRun(h, transcripts, ops)


def protocol_config(qap: QapInstance, K: int, T: int, seed: int = 0,
                    faults: Sequence[Fault] = (), zero_randomness: bool = False) -> ProtocolConfig:
    return ProtocolConfig(qap.domain, SharingParams.canonical(qap.field, K, T), rng_seed=seed,
                          faults=tuple(faults), zero_randomness=zero_randomness)


def distributed_run(qap: QapInstance, witness: Witness, config: ProtocolConfig) -> DistributedRun:
    if config.domain.n != qap.n or config.domain.field != qap.field or config.domain.eta != qap.domain.eta:
        raise ValueError("protocol config domain differs from the QAP domain")
    p = qap.field.modulus
    a, b, c = abc_vectors(qap, witness)
    _check_satisfied(a, b, c, p)
    return quotient_distributed(config, a, b, c)


def polynomial_division_distributed(qap: QapInstance, witness: Witness, config: ProtocolConfig) -> list[int]:
    """Same quotient as the centralized path, with the transforms run by N = K+T servers.

    Faulty servers are not detected here; the resulting proof fails
    self-verification instead.
    """
    return distributed_run(qap, witness, config).h


def _msm(scalars: Sequence[int], points: Sequence[Enc], zero: Enc, tally: Tally | None) -> Enc:
    acc = zero
    for w, pt in zip(scalars, points):
        if w:
            acc = acc + w * pt
    if tally is not None:
        tally.charge(mul=len(points), add=len(points))
    return acc


def compute_proof(ek: EvaluationKey, qap: QapInstance, witness: Witness, h: Sequence[int],
                  blinding: tuple[int, int], tally: Tally | None = None) -> Proof:
    p = qap.field.modulus
    if len(h) != qap.n:
        raise ValueError(f"quotient has length {len(h)}, expected n={qap.n}")
    r, q = (v % p for v in blinding)
    W = witness.values
    z1 = ek.alpha1 - ek.alpha1
    z2 = ek.beta2 - ek.beta2
    L_r = ek.alpha1 + _msm(W, ek.L1, z1, tally) + r * ek.delta1
    R_q1 = ek.beta1 + _msm(W, ek.R1, z1, tally) + q * ek.delta1
    R_q2 = ek.beta2 + _msm(W, ek.R2, z2, tally) + q * ek.delta2
    K = (q * L_r + r * R_q1 - (r * q % p) * ek.delta1
         + _msm([W[i] for i in qap.mid], ek.kpk1, z1, tally)
         + _msm(h[: qap.n - 1], ek.t1, z1, tally))
    return Proof(L_r, R_q2, K)


def public_values(qap: QapInstance, witness: Witness) -> list[int]:
    """Witness values of the public wires, ascending index (wire 0 first)."""
    return [witness.values[i] for i in qap.io]


def verify(vk: VerificationKey, proof: Proof, public: Sequence[int], backend=None) -> bool:
    if len(public) != len(vk.kvk1):
        raise ValueError(f"expected {len(vk.kvk1)} public values, got {len(public)}")
    be = backend or MockBackend(field_by_modulus(vk.alpha_beta.modulus))
    I = be.zero(G1)
    for w, k in zip(public, vk.kvk1):
        I = I + (int(w) % be.field.modulus) * k
    lhs = be.pair(proof.L_r, proof.R_q)
    rhs = vk.alpha_beta + be.pair(I, vk.gamma2) + be.pair(proof.K, vk.delta2)
    return lhs == rhs


def prover_self_check(vk: VerificationKey, proof: Proof, public: Sequence[int], backend=None) -> bool:
    """The prover's own run of the verifier, catching faulty servers."""
    return verify(vk, proof, public, backend)


@dataclass
class ProveResult:
    proof: Proof
    h: list[int]
    run: DistributedRun | None = None


def prove(ek: EvaluationKey, qap: QapInstance, witness: Witness, blinding: tuple[int, int],
          config: ProtocolConfig | None = None, tally: Tally | None = None) -> ProveResult:
    """Quotient (centralized, or distributed when ``config`` is given) followed by the encoded sums."""
    if config is None:
        h = polynomial_division_centralized(qap, witness, tally)
        run = None
    else:
        run = distributed_run(qap, witness, config)
        h = run.h
    return ProveResult(compute_proof(ek, qap, witness, h, blinding, tally), h, run)


# -- binary formats --

EK_MAGIC, VK_MAGIC, PROOF_MAGIC = b"PMEK1", b"PMVK1", b"PMPF1"
_GROUPS = {
    EvaluationKey: dict(alpha1=G1, beta1=G1, beta2=G2, delta1=G1, delta2=G2,
                        L1=G1, R1=G1, R2=G2, kpk1=G1, t1=G1),
    VerificationKey: dict(alpha_beta=GT, gamma2=G2, delta2=G2, kvk1=G1),
    Proof: dict(L_r=G1, R_q=G2, K=G1),
}
_MAGIC = {EvaluationKey: EK_MAGIC, VerificationKey: VK_MAGIC, Proof: PROOF_MAGIC}


def to_bytes(obj) -> bytes:
    """Magic, u64 modulus, then each field in declaration order; lists carry a u32 length."""
    cls = type(obj)
    first = getattr(obj, fields(cls)[0].name)
    be = MockBackend(field_by_modulus(first.modulus))
    out = [_MAGIC[cls], struct.pack("<Q", first.modulus)]
    for f in fields(cls):
        v = getattr(obj, f.name)
        if isinstance(v, tuple):
            out.append(struct.pack("<I", len(v)))
            out.extend(be.to_bytes(e) for e in v)
        else:
            out.append(be.to_bytes(v))
    return b"".join(out)


def from_bytes(cls, data: bytes):
    if data[:5] != _MAGIC[cls]:
        raise ValueError(f"bad magic for {cls.__name__}: {data[:5]!r}")
    (modulus,) = struct.unpack_from("<Q", data, 5)
    be = MockBackend(field_by_modulus(modulus))
    size = be.element_size
    off = 13
    kw = {}
    for f in fields(cls):
        group = _GROUPS[cls][f.name]
        if f.type.startswith("tuple"):
            (ln,) = struct.unpack_from("<I", data, off)
            off += 4
            kw[f.name] = tuple(be.from_bytes(group, data[off + i * size: off + (i + 1) * size])
                               for i in range(ln))
            off += ln * size
        else:
            kw[f.name] = be.from_bytes(group, data[off: off + size])
            off += size
    if off != len(data):
        raise ValueError(f"{cls.__name__}: {len(data) - off} trailing bytes")
    return cls(**kw)


def modulus_of(data: bytes) -> int:
    return struct.unpack_from("<Q", data, 5)[0]
