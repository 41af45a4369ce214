"""Round-based simulation of the multiparty transforms.

Two protocols run over N = K + T semi-honest servers:

``composed``
    coset_fft(ifft(a)) in three communication rounds (prover -> servers,
    all-to-all reshare, servers -> prover).
``coset_ifft``
    coset_ifft(a) in one round trip.

Party index 0 is the prover; servers are 1..N. Servers touch only their
own scratch and the messages delivered to them.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels
from .domains import EvaluationDomain, coset_fft, ifft, stride_partition
from .field import PrimeField
from .opcount import OpCounter, Tally, charge
from .sharing import SharingParams, share

PROVER = 0
COMPOSED = "composed"
COSET_IFFT = "coset_ifft"
PROTOCOLS = (COMPOSED, COSET_IFFT)
_PROTOCOL_CODE = {COMPOSED: 1, COSET_IFFT: 2}

TRANSCRIPT_MAGIC = b"PMTX1"


class ProtocolAbort(RuntimeError):
    def __init__(self, server: int, step: int, reason: str = "server failure"):
        super().__init__(f"protocol aborted: server {server} at step {step}: {reason}")
        self.server = server
        self.step = step


@dataclass(frozen=True)
class Fault:
    """Injected misbehaviour. ``step`` uses the server step numbers of the protocol.

    ``corrupt`` adds 1 to the first element of every payload the server
    sends at that step; ``crash`` aborts the run there.
    """

    server: int
    step: int
    kind: str = "corrupt"


@dataclass(frozen=True)
class ProtocolConfig:
    domain: EvaluationDomain
    sharing: SharingParams
    rng_seed: int = 0
    stream: int = 0
    faults: tuple[Fault, ...] = ()
    zero_randomness: bool = False  # negative control only: disables masking

    def __post_init__(self):
        if self.domain.eta is None:
            raise ValueError("protocol domain needs a coset shift η")
        if self.domain.field != self.sharing.field:
            raise ValueError("domain and sharing live in different fields")
        if self.domain.n % self.sharing.K:
            raise ValueError(f"K={self.sharing.K} does not divide n={self.domain.n}")
        if self.sharing.K & (self.sharing.K - 1):
            raise ValueError(f"K={self.sharing.K} is not a power of two")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be non-negative")

    @classmethod
    def build(cls, field: PrimeField, n: int, K: int, T: int, seed: int = 0,
              eta: int | None = None, **kw) -> ProtocolConfig:
        return cls(EvaluationDomain.standard(field, n, eta), SharingParams.canonical(field, K, T),
                   rng_seed=seed, **kw)

    def with_stream(self, stream: int) -> ProtocolConfig:
        return ProtocolConfig(self.domain, self.sharing, self.rng_seed, stream,
                              self.faults, self.zero_randomness)

    @property
    def field(self) -> PrimeField:
        return self.domain.field

    @property
    def p(self) -> int:
        return self.domain.field.modulus

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def K(self) -> int:
        return self.sharing.K

    @property
    def T(self) -> int:
        return self.sharing.T

    @property
    def N(self) -> int:
        return self.sharing.N

    @property
    def M(self) -> int:
        return self.domain.n // self.sharing.K

    @cached_property
    def subdomain(self) -> EvaluationDomain:
        """S' = <ω^K> with shift η^K."""
        return self.domain.stride(self.K)

    @cached_property
    def reshare_weights(self) -> list[list[int]]:
        """Per server θ: G_θ[i] = (1/K) Σ_l λ_θ(β_l) ω^(-i(l-1)), i < n.

        Public and input-independent, so computed once per configuration.
        """
        dec = self.sharing.decode_matrix  # [l][θ]
        k_inv = self.field.inv_int(self.K)
        out = []
        for theta in range(self.N):
            w = [[dec[l][theta]] for l in range(self.K)]
            out.append(kernels.horner_recombine(w, self.n, 1, self.domain.omega_inv, k_inv, 1, self.p))
        return out

    def fault(self, server: int, step: int) -> Fault | None:
        for f in self.faults:
            if f.server == server and f.step == step:
                return f
        return None


@dataclass
class Message:
    round: int
    sender: int
    receiver: int
    payload: tuple[int, ...]


@dataclass
class ServerState:
    index: int
    inbox: list[Message] = field(default_factory=list)
    scratch: dict[str, object] = field(default_factory=dict)
    view_log: list[Message] = field(default_factory=list)

    def deliver(self, msg: Message) -> None:
        self.inbox.append(msg)
        self.view_log.append(msg)

    def take(self, rnd: int) -> list[Message]:
        got = [m for m in self.inbox if m.round == rnd]
        self.inbox = [m for m in self.inbox if m.round != rnd]
        return got


@dataclass
class Transcript:
    protocol: str
    modulus: int
    n: int
    K: int
    T: int
    N: int
    seed: int
    stream: int
    messages: list[Message] = field(default_factory=list)
    output: list[int] = field(default_factory=list)
    servers: list[ServerState] = field(default_factory=list, repr=False, compare=False)
    ops: OpCounter = field(default_factory=OpCounter, repr=False, compare=False)

    def view_log(self, theta: int) -> list[Message]:
        return [m for m in self.messages if m.receiver == theta]

    def to_bytes(self) -> bytes:
        parts = [
            TRANSCRIPT_MAGIC,
            struct.pack("<QIIIIQIB", self.modulus, self.n, self.K, self.T, self.N,
                        self.seed, self.stream, _PROTOCOL_CODE[self.protocol]),
            struct.pack("<I", len(self.messages)),
        ]
        for m in self.messages:
            parts.append(struct.pack("<IIII", m.round, m.sender, m.receiver, len(m.payload)))
            parts.append(struct.pack(f"<{len(m.payload)}Q", *m.payload))
        parts.append(struct.pack("<I", len(self.output)))
        parts.append(struct.pack(f"<{len(self.output)}Q", *self.output))
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, data: bytes) -> Transcript:
        if data[:5] != TRANSCRIPT_MAGIC:
            raise ValueError("not a transcript (bad magic)")
        off = 5
        hdr = struct.Struct("<QIIIIQIB")
        modulus, n, K, T, N, seed, stream, code = hdr.unpack_from(data, off)
        off += hdr.size
        protocol = {v: k for k, v in _PROTOCOL_CODE.items()}[code]
        (count,) = struct.unpack_from("<I", data, off)
        off += 4
        msgs = []
        for _ in range(count):
            rnd, snd, rcv, ln = struct.unpack_from("<IIII", data, off)
            off += 16
            payload = struct.unpack_from(f"<{ln}Q", data, off)
            off += 8 * ln
            msgs.append(Message(rnd, snd, rcv, tuple(payload)))
        (ln,) = struct.unpack_from("<I", data, off)
        off += 4
        output = list(struct.unpack_from(f"<{ln}Q", data, off))
        off += 8 * ln
        if off != len(data):
            raise ValueError("trailing bytes in transcript")
        return cls(protocol, modulus, n, K, T, N, seed, stream, msgs, output)


# -- randomness --

def party_rng(config: ProtocolConfig, party: int) -> np.random.Generator:
    """Independent stream per (seed, run stream, party)."""
    ss = np.random.SeedSequence(config.rng_seed, spawn_key=(config.stream, party))
    return np.random.default_rng(ss)


def draw_randomness(config: ProtocolConfig, party: int) -> list[list[int]]:
    if config.zero_randomness:
        return [[0] * config.M for _ in range(config.T)]
    rng = party_rng(config, party)
    return [config.field.random_vector(rng, config.M) for _ in range(config.T)]


def _corrupt(payload: list[int], p: int) -> list[int]:
    out = list(payload)
    if out:
        out[0] = (out[0] + 1) % p
    return out


def _apply_fault(config: ProtocolConfig, server: int, step: int, payloads: list[list[int]]) -> list[list[int]]:
    f = config.fault(server, step)
    if f is None:
        return payloads
    if f.kind == "crash":
        raise ProtocolAbort(server, step)
    return [_corrupt(x, config.p) for x in payloads]


# -- prover steps --

def prover_share_phase(config: ProtocolConfig, a: Sequence[int], randomness: Sequence[Sequence[int]],
                       tally: Tally | None = None) -> list[list[int]]:
    """Steps 1-3: stride-partition ``a`` and Lagrange-share the chunks."""
    if len(a) != config.n:
        raise ValueError(f"input length {len(a)} != n={config.n}")
    return share(config.sharing, stride_partition(a, config.K), randomness, tally)


def prover_decode(config: ProtocolConfig, responses: Sequence[Sequence[int]],
                  tally: Tally | None = None) -> list[int]:
    """Steps 9-10 of the composed protocol.

    Interpolates the responses at β_1..β_K, then
    out_i = Σ_j (ω^i η)^(j-1) · w_j[i mod n/K].
    """
    dec = config.sharing.decode_matrix
    w = kernels.lincomb(dec, list(responses), config.p)
    charge(tally, kernels.lincomb_cost(dec, config.M))
    d = config.domain
    charge(tally, kernels.horner_cost(config.n, config.K, scaled=False))
    return kernels.horner_recombine(w, config.n, d.eta, d.omega, 1, 1, config.p)


def prover_decode_inverse(config: ProtocolConfig, responses: Sequence[Sequence[int]],
                          tally: Tally | None = None) -> list[int]:
    """Decode for the coset-IFFT protocol.

    out_i = (1/K) η^(-i) Σ_j ω^(-i(j-1)) · w_j[i mod n/K], with w_j the
    interpolated responses at β_j.
    """
    dec = config.sharing.decode_matrix
    w = kernels.lincomb(dec, list(responses), config.p)
    charge(tally, kernels.lincomb_cost(dec, config.M))
    d = config.domain
    k_inv = config.field.inv_int(config.K)
    charge(tally, kernels.horner_cost(config.n, config.K, scaled=True))
    return kernels.horner_recombine(w, config.n, 1, d.omega_inv, k_inv, d.eta_inv, config.p)


# -- server steps --

def server_local_ifft(state: ServerState, config: ProtocolConfig, tally: Tally | None = None) -> list[int]:
    """Step 4: IFFT over S' of the share received from the prover."""
    y = ifft(config.subdomain.without_coset(), state.scratch["share"], tally)
    state.scratch["y"] = y
    return y


def server_reshare(state: ServerState, config: ProtocolConfig, randomness: Sequence[Sequence[int]],
                   tally: Tally | None = None) -> list[list[int]]:
    """Steps 5-6: form this server's summands x_1..x_K and share them.

    x_j[t] = G_θ[Kt+j-1] · y[(Kt+j-1) mod n/K]. Returns the N outgoing
    payloads, the γ-th destined for server γ.
    """
    y = state.scratch["y"]
    g = config.reshare_weights[state.index - 1]
    z = kernels.pointwise_mul(y * config.K, g, config.p)
    charge(tally, (config.n, 0))
    x = stride_partition(z, config.K)
    state.scratch["x"] = x
    return share(config.sharing, x, randomness, tally)


def server_aggregate(state: ServerState, config: ProtocolConfig, received: Sequence[Sequence[int]],
                     tally: Tally | None = None) -> list[int]:
    """Step 7: sum the reshares received from all N servers."""
    if len(received) != config.N:
        raise ProtocolAbort(state.index, 7, f"expected {config.N} reshares, got {len(received)}")
    u = kernels.vec_sum(list(received), config.p)
    charge(tally, (0, (config.N - 1) * config.M))
    state.scratch["u"] = u
    return u


def server_coset_fft(state: ServerState, config: ProtocolConfig, tally: Tally | None = None) -> list[int]:
    """Step 8: evaluate on D' = η^K S'."""
    return coset_fft(config.subdomain, state.scratch["u"], tally)


# -- scheduler --

def run_simulation(config: ProtocolConfig, protocol: str, a: Sequence[int]) -> tuple[list[int], Transcript]:
    """Execute one protocol run; deterministic given ``config.rng_seed`` and ``config.stream``."""
    if protocol not in PROTOCOLS:
        raise ValueError(f"unknown protocol {protocol!r}")
    a = [int(v) % config.p for v in a]
    ops = OpCounter()
    tr = Transcript(protocol, config.p, config.n, config.K, config.T, config.N,
                    config.rng_seed, config.stream, ops=ops)
    servers = [ServerState(theta) for theta in range(1, config.N + 1)]
    tr.servers = servers

    def send(rnd: int, sender: int, receiver: int, payload: Sequence[int]) -> None:
        msg = Message(rnd, sender, receiver, tuple(payload))
        tr.messages.append(msg)
        if receiver != PROVER:
            servers[receiver - 1].deliver(msg)

    shares = prover_share_phase(config, a, draw_randomness(config, PROVER), ops.prover())
    for theta, s in enumerate(shares, start=1):
        send(0, PROVER, theta, s)
    for st in servers:
        (msg,) = st.take(0)
        st.scratch["share"] = list(msg.payload)

    responses: list[list[int]] = []
    if protocol == COMPOSED:
        for st in servers:
            t = ops.server(st.index)
            server_local_ifft(st, config, t)
            _apply_fault(config, st.index, 4, [])
            out = server_reshare(st, config, draw_randomness(config, st.index), t)
            out = _apply_fault(config, st.index, 6, out)
            for gamma, payload in enumerate(out, start=1):
                send(1, st.index, gamma, payload)
        for st in servers:
            t = ops.server(st.index)
            got = sorted(st.take(1), key=lambda m: m.sender)
            server_aggregate(st, config, [list(m.payload) for m in got], t)
            (resp,) = _apply_fault(config, st.index, 8, [server_coset_fft(st, config, t)])
            send(2, st.index, PROVER, resp)
            responses.append(resp)
        output = prover_decode(config, responses, ops.prover())
    else:
        for st in servers:
            y = server_local_ifft(st, config, ops.server(st.index))
            (resp,) = _apply_fault(config, st.index, 4, [y])
            send(1, st.index, PROVER, resp)
            responses.append(resp)
        output = prover_decode_inverse(config, responses, ops.prover())
    tr.output = output
    return output, tr


def mpc_composed_fft(config: ProtocolConfig, a: Sequence[int]) -> list[int]:
    """coset_fft(ifft(a)) computed by the simulated cluster."""
    return run_simulation(config, COMPOSED, a)[0]


def mpc_coset_ifft(config: ProtocolConfig, a: Sequence[int]) -> list[int]:
    """coset_ifft(a) computed by the simulated cluster."""
    return run_simulation(config, COSET_IFFT, a)[0]


def replay(config: ProtocolConfig, transcript: Transcript) -> list[int]:
    """Recompute the output from recorded messages using the pure step functions.

    Every server response that does not depend on private randomness is
    recomputed from that server's recorded view and checked against the
    transcript.
    """
    msgs = transcript.messages
    responses = []
    last_round = 2 if transcript.protocol == COMPOSED else 1
    for theta in range(1, config.N + 1):
        view = [m for m in msgs if m.receiver == theta]
        st = ServerState(theta)
        (first,) = [m for m in view if m.round == 0]
        st.scratch["share"] = list(first.payload)
        if transcript.protocol == COMPOSED:
            got = sorted((m for m in view if m.round == 1), key=lambda m: m.sender)
            server_aggregate(st, config, [list(m.payload) for m in got])
            resp = server_coset_fft(st, config)
        else:
            resp = server_local_ifft(st, config)
        (recorded,) = [m for m in msgs if m.sender == theta and m.round == last_round]
        if tuple(resp) != recorded.payload:
            raise ProtocolAbort(theta, 8 if transcript.protocol == COMPOSED else 4,
                                "replayed response differs from transcript")
        responses.append(resp)
    if transcript.protocol == COMPOSED:
        return prover_decode(config, responses)
    return prover_decode_inverse(config, responses)
