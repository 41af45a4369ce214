"""proofmesh command line.

Human-readable progress goes to stderr; machine output (CSV, verdicts,
written paths) goes to stdout. Exit codes: 0 ok, 1 verification or
privacy failure, 2 input error, 3 unsatisfiable witness, 4 protocol
abort, 5 census budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources
from pathlib import Path

from .audit import CensusBudgetExceeded, complexity_report, privacy_census, report_csv
from .audit.census import DEFAULT_BUDGET
from .domains import DomainError
from .field import FIELDS, field_by_modulus
from .mpc import COMPOSED, COSET_IFFT, Fault, ProtocolAbort, ProtocolConfig
from .qap import CircuitError, abc_vectors, build_qap, evaluate_circuit, pad_to_power_of_two, parse_circuit, parse_values
from .rng import substream
from .sharing import SharingError
from .snark import (
    EvaluationKey,
    Proof,
    SetupError,
    UnsatisfiableWitness,
    VerificationKey,
    compute_proof,
    from_bytes,
    modulus_of,
    polynomial_division_centralized,
    distributed_run,
    protocol_config,
    prover_self_check,
    public_values,
    sample_blinding,
    sample_toxic,
    setup,
    to_bytes,
    verify,
)

OK, FAILED, INPUT_ERROR, UNSATISFIABLE, ABORT, BUDGET = 0, 1, 2, 3, 4, 5


class InputError(Exception):
    pass


def _log(args, *msg):
    if not getattr(args, "quiet", False):
        print(*msg, file=sys.stderr)


def _read(path: str, binary=False):
    try:
        p = Path(path)
        return p.read_bytes() if binary else p.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str, data: bytes | str):
    try:
        if isinstance(data, bytes):
            Path(path).write_bytes(data)
        else:
            Path(path).write_text(data, encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _parse_tamper(text: str | None):
    """'wire:<i>', 'h:<j>', 'server:<θ>' (corrupt response) or 'crash:<θ>'."""
    if text is None:
        return None
    kind, _, idx = text.partition(":")
    if kind not in ("wire", "h", "server", "crash") or not idx.isdigit():
        raise InputError(f"bad --tamper {text!r}; use wire:<i>, h:<j>, server:<θ> or crash:<θ>")
    return kind, int(idx)


def _load_circuit(text: str):
    return pad_to_power_of_two(parse_circuit(text))


def _prove(args, ek, qap, witness, rng_seed):
    """Quotient then proof, honouring --distributed and --tamper.

    A tampered wire corrupts the prover's witness after division, so it also
    reaches the public values the prover presents. Returns (proof, h, run, public).
    """
    tamper = _parse_tamper(args.tamper)
    faults = ()
    if tamper and tamper[0] in ("server", "crash"):
        if not args.distributed:
            raise InputError("server tampering needs --distributed")
        theta = tamper[1]
        faults = (Fault(theta, 8, "corrupt"),) if tamper[0] == "server" else (Fault(theta, 6, "crash"),)
    run = None
    if args.distributed:
        config = protocol_config(qap, args.k, args.t, seed=rng_seed, faults=faults)
        if faults and not 1 <= faults[0].server <= config.N:
            raise InputError(f"server index must be in 1..{config.N}")
        run = distributed_run(qap, witness, config)
        h = run.h
    else:
        h = polynomial_division_centralized(qap, witness)
    fed = witness
    if tamper and tamper[0] == "wire":
        i = tamper[1]
        if not 0 <= i <= qap.m:
            raise InputError(f"wire index must be in 0..{qap.m}")
        fed = witness.replaced(i, witness.values[i] + 1)
    if tamper and tamper[0] == "h":
        j = tamper[1]
        if not 0 <= j < qap.n:
            raise InputError(f"h index must be in 0..{qap.n - 1}")
        h = list(h)
        h[j] = (h[j] + 1) % qap.field.modulus
    blinding = sample_blinding(qap.field, substream(rng_seed, "blinding"))
    return compute_proof(ek, qap, fed, h, blinding), h, run, public_values(qap, fed)


def cmd_demo(args) -> int:
    field = FIELDS[args.field]
    text = resources.files("proofmesh").joinpath("data/example.circ").read_text()
    circuit = _load_circuit(text)
    qap = build_qap(circuit, field)
    witness = evaluate_circuit(circuit, args.inputs, field)
    a, b, c = abc_vectors(qap, witness)
    print(f"field {field.name} p={field.modulus} n={qap.n} m={qap.m}")
    print(f"inputs {args.inputs}")
    print(f"witness {witness.values}")
    print(f"a {a}")
    print(f"b {b}")
    print(f"c {c}")
    ek, vk = setup(qap, sample_toxic(qap, substream(args.seed, "toxic")))
    if args.distributed:
        print(f"prover distributed K={args.k} T={args.t} N={args.k + args.t}")
    else:
        print("prover centralized")
    proof, h, run, pub = _prove(args, ek, qap, witness, args.seed)
    print(f"h' {h}")
    print(f"proof {to_bytes(proof).hex()}")
    if not prover_self_check(vk, proof, pub):
        print("proof failed self-verification", file=sys.stderr)
        print("REJECTED")
        return FAILED
    if not verify(vk, proof, pub):
        print("REJECTED")
        return FAILED
    print("VERIFIED")
    return OK


def cmd_setup(args) -> int:
    field = FIELDS[args.field]
    circuit = _load_circuit(_read(args.circuit))
    qap = build_qap(circuit, field)
    ek, vk = setup(qap, sample_toxic(qap, substream(args.seed, "toxic")))
    _write(args.ek, to_bytes(ek))
    _write(args.vk, to_bytes(vk))
    _log(args, f"setup: n={qap.n} m={qap.m} public={qap.io} over {field.name}")
    print(args.ek)
    print(args.vk)
    return OK


def _load_ek(path) -> EvaluationKey:
    data = _read(path, binary=True)
    try:
        return from_bytes(EvaluationKey, data)
    except (ValueError, KeyError, IndexError) as e:
        raise InputError(f"{path}: {e}") from None


def cmd_prove(args) -> int:
    ek = _load_ek(args.ek)
    field = field_by_modulus(ek.alpha1.modulus)
    circuit = _load_circuit(_read(args.circuit))
    qap = build_qap(circuit, field)
    if len(ek.L1) != qap.m + 1 or len(ek.t1) != qap.n - 1:
        raise InputError("evaluation key does not match this circuit")
    witness = evaluate_circuit(circuit, parse_values(_read(args.inputs)), field)
    proof, h, run, pub = _prove(args, ek, qap, witness, args.seed)
    if args.vk is not None:
        vk = _load_vk(args.vk)
        if not prover_self_check(vk, proof, pub):
            print("proof failed self-verification", file=sys.stderr)
            return FAILED
        _log(args, "self-check passed")
    _write(args.proof, to_bytes(proof))
    _write(args.public, "".join(f"{v}\n" for v in pub))
    if run is not None:
        _log(args, f"distributed quotient: {len(run.transcripts)} protocol runs, "
                   f"{sum(len(t.messages) for t in run.transcripts)} messages")
    print(args.proof)
    print(args.public)
    return OK


def _load_vk(path) -> VerificationKey:
    data = _read(path, binary=True)
    try:
        return from_bytes(VerificationKey, data)
    except (ValueError, KeyError, IndexError) as e:
        raise InputError(f"{path}: {e}") from None


def cmd_verify(args) -> int:
    vk = _load_vk(args.vk)
    data = _read(args.proof, binary=True)
    try:
        proof = from_bytes(Proof, data)
    except (ValueError, KeyError, IndexError) as e:
        raise InputError(f"{args.proof}: {e}") from None
    if modulus_of(data) != vk.alpha_beta.modulus:
        raise InputError("proof and verification key use different fields")
    pub = parse_values(_read(args.public))
    if len(pub) != len(vk.kvk1):
        raise InputError(f"expected {len(vk.kvk1)} public values, got {len(pub)}")
    ok = verify(vk, proof, pub)
    print("ACCEPT" if ok else "REJECT")
    return OK if ok else FAILED


def cmd_bench(args) -> int:
    field = FIELDS[args.field]
    grid = []
    for n in args.n:
        for K in args.k:
            for T in args.t:
                if n < 1 or n & (n - 1):
                    raise InputError(f"n={n} is not a power of two")
                if K < 1 or n % K:
                    raise InputError(f"K={K} does not divide n={n}")
                grid.append((n, K, T))
    _log(args, f"bench: {len(grid)} configurations over {field.name}, protocol {args.protocol}")
    rows = complexity_report(grid, field, args.seed, args.protocol)
    sys.stdout.write(report_csv(rows))
    return OK


def cmd_privacy_audit(args) -> int:
    field = FIELDS[args.field]
    config = ProtocolConfig.build(field, args.n, args.k, args.t, args.seed, zero_randomness=args.break_sharing)
    colluders = args.colluders if args.colluders is not None else list(range(1, args.t + 1))
    rng = substream(args.seed, "secrets")
    secrets: list[list[int]] = []
    space = field.modulus ** args.n
    if args.secrets > space:
        raise InputError(f"only {space} distinct secrets exist")
    while len(secrets) < args.secrets:
        s = field.random_vector(rng, args.n)
        if s not in secrets:
            secrets.append(s)
    _log(args, f"census: n={args.n} K={args.k} T={args.t} colluders={colluders} over {field.name}")
    try:
        census = privacy_census(config, colluders, secrets, args.protocol, budget=args.budget)
    except CensusBudgetExceeded as e:
        print(f"census budget exceeded: requires {e.required} enumeration steps (budget {e.budget})",
              file=sys.stderr)
        return BUDGET
    print(census.summary())
    return OK if census.verdict == "private" else FAILED


def _common(p: argparse.ArgumentParser, field_default="desk"):
    env = os.environ.get("PROOFMESH_SEED")
    try:
        seed_default = int(env) if env is not None else 0
    except ValueError:
        seed_default = 0
    p.add_argument("--field", choices=sorted(FIELDS), default=field_default)
    p.add_argument("--seed", type=int, default=seed_default, help="default: $PROOFMESH_SEED or 0")
    p.add_argument("-q", "--quiet", action="store_true", help="suppress progress on stderr")


def _prover_flags(p: argparse.ArgumentParser, distributed_default=False):
    p.add_argument("--distributed", action=argparse.BooleanOptionalAction, default=distributed_default,
                   help="compute the quotient with the multiparty protocol")
    p.add_argument("--k", type=int, default=2, help="data shares (servers doing work)")
    p.add_argument("--t", type=int, default=1, help="privacy threshold")
    p.add_argument("--tamper", help="fault injection: wire:<i>, h:<j>, server:<θ> or crash:<θ>")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="proofmesh", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("demo", help="run the worked (c1+c2)*c3^2 example end to end")
    _common(p)
    _prover_flags(p, distributed_default=True)
    p.add_argument("--inputs", type=_int_list, default=[1, 2, 3], help="c1,c2,c3 (default 1,2,3)")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("setup", help="generate evaluation and verification keys")
    _common(p)
    p.add_argument("circuit")
    p.add_argument("--ek", default="ek.bin")
    p.add_argument("--vk", default="vk.bin")
    p.set_defaults(func=cmd_setup)

    p = sub.add_parser("prove", help="produce a proof from a circuit and its inputs")
    _common(p)
    _prover_flags(p)
    p.add_argument("circuit")
    p.add_argument("inputs")
    p.add_argument("--ek", default="ek.bin")
    p.add_argument("--vk", help="run the self-check against this key before writing")
    p.add_argument("--proof", default="proof.bin")
    p.add_argument("--public", default="public.txt")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify", help="check a proof against public values")
    _common(p)
    p.add_argument("--vk", default="vk.bin")
    p.add_argument("--proof", default="proof.bin")
    p.add_argument("--public", default="public.txt")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="instrumented op counts as CSV")
    _common(p)
    p.add_argument("--n", type=_int_list, default=[16384])
    p.add_argument("--k", type=_int_list, default=[2, 4, 8])
    p.add_argument("--t", type=_int_list, default=[1])
    p.add_argument("--protocol", choices=["pipeline", COMPOSED, COSET_IFFT], default="pipeline")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("privacy-audit", help="exhaustive view census")
    _common(p, field_default="test17")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--colluders", type=_int_list, help="server indices (default 1..T)")
    p.add_argument("--secrets", type=int, default=3)
    p.add_argument("--protocol", choices=[COMPOSED, COSET_IFFT], default=COMPOSED)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--break-sharing", action="store_true", help="negative control: zero all randomness")
    p.set_defaults(func=cmd_privacy_audit)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.seed < 0:
        ap.error("--seed must be non-negative")
    try:
        return args.func(args)
    except UnsatisfiableWitness as e:
        code, err = UNSATISFIABLE, e
    except ProtocolAbort as e:
        code, err = ABORT, e
    except (InputError, CircuitError, DomainError, SharingError, SetupError, ValueError) as e:
        code, err = INPUT_ERROR, e
    print(f"error: {err}", file=sys.stderr)
    return code

if __name__ == "__main__":
    sys.exit(main())
