"""Arithmetic circuits and their QAP selector tables.

Circuit text format, one statement per line (``#`` starts a comment)::

    inputs 3                 # input wires w1..w3 (or an explicit list: inputs w1 w2 w5)
    add s w1 w2              # unindexed addition node
    mul w4 s w3              # indexed multiplication output
    mul out w4 w3            # symbolic names get the next free index
    public 1                 # extra public wire indices
    return out               # circuit outputs (public)

Wire 0 is the constant ``one`` and is always public.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .domains import EvaluationDomain
from .field import PrimeField

ONE = "one"
_INDEXED = re.compile(r"^w(\d+)$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class CircuitError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Gate:
    kind: str  # "add" | "mul"
    out: str
    left: str
    right: str
    line: int = 0


@dataclass
class Circuit:
    inputs: list[str]
    gates: list[Gate]
    wire_index: dict[str, int]
    public: list[int]
    outputs: list[str] = field(default_factory=list)
    zero_wires: list[str] = field(default_factory=list)

    @property
    def m(self) -> int:
        """Number of indexed wires, excluding wire 0."""
        return len(self.wire_index) - 1

    @property
    def mul_gates(self) -> list[Gate]:
        return [g for g in self.gates if g.kind == "mul"]

    @property
    def num_mul(self) -> int:
        return sum(1 for g in self.gates if g.kind == "mul")

    @property
    def io(self) -> list[int]:
        return sorted(set(self.public))

    @property
    def mid(self) -> list[int]:
        pub = set(self.public)
        return [i for i in range(self.m + 1) if i not in pub]


def parse_circuit(text: str) -> Circuit:
    inputs: list[str] = []
    gates: list[Gate] = []
    public: list[int] = []
    returns: list[tuple[str, int]] = []
    defined: dict[str, str] = {ONE: "one"}  # name -> kind
    saw_inputs = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        op, args = tok[0], tok[1:]
        if op == "inputs":
            if saw_inputs:
                raise CircuitError("duplicate inputs statement", lineno)
            saw_inputs = True
            if len(args) == 1 and args[0].isdigit():
                names = [f"w{i}" for i in range(1, int(args[0]) + 1)]
            else:
                names = args
                for nm in names:
                    if not _INDEXED.match(nm):
                        raise CircuitError(f"input wire {nm!r} must be named w<i>", lineno)
            for nm in names:
                if nm in defined:
                    raise CircuitError(f"duplicate wire {nm!r}", lineno)
                defined[nm] = "input"
            inputs.extend(names)
        elif op in ("add", "mul"):
            if len(args) != 3:
                raise CircuitError(f"{op} takes <out> <in1> <in2>", lineno)
            out, left, right = args
            if not _NAME.match(out) or out == ONE:
                raise CircuitError(f"bad output name {out!r}", lineno)
            if out in defined:
                raise CircuitError(f"duplicate output {out!r}", lineno)
            if op == "add" and _INDEXED.match(out):
                raise CircuitError(f"addition outputs are unindexed; {out!r} looks like w<i>", lineno)
            for ref in (left, right):
                if ref not in defined:
                    raise CircuitError(f"reference to undefined wire {ref!r}", lineno)
            defined[out] = op
            gates.append(Gate(op, out, left, right, lineno))
        elif op == "public":
            if not args:
                raise CircuitError("public needs at least one wire index", lineno)
            for a in args:
                if not a.isdigit():
                    raise CircuitError(f"public expects wire indices, got {a!r}", lineno)
                public.append(int(a))
        elif op == "return":
            if not args:
                raise CircuitError("return needs a wire name", lineno)
            returns.extend((a, lineno) for a in args)
        else:
            raise CircuitError(f"unknown statement {op!r}", lineno)

    if not any(g.kind == "mul" for g in gates):
        raise CircuitError("no multiplication gates")

    wire_index: dict[str, int] = {ONE: 0}
    for nm in inputs:
        wire_index[nm] = int(_INDEXED.match(nm).group(1))
    symbolic = []
    for g in gates:
        if g.kind != "mul":
            continue
        mt = _INDEXED.match(g.out)
        if mt:
            wire_index[g.out] = int(mt.group(1))
        else:
            symbolic.append(g.out)
    used = set(wire_index.values())
    if len(used) != len(wire_index):
        raise CircuitError("two wires share one index")
    nxt = 1
    for nm in symbolic:
        while nxt in used:
            nxt += 1
        wire_index[nm] = nxt
        used.add(nxt)
    m = len(wire_index) - 1
    if used != set(range(m + 1)):
        raise CircuitError(f"wire indices must be exactly 0..{m}, got {sorted(used)}")

    for i in public:
        if i > m:
            raise CircuitError(f"public wire {i} does not exist (m={m})")
    outputs = []
    for nm, lineno in returns:
        if nm not in wire_index:
            raise CircuitError(f"return of {nm!r}: not an indexed wire", lineno)
        outputs.append(nm)
    pub = sorted({0, *public, *(wire_index[o] for o in outputs)})
    return Circuit(inputs, gates, wire_index, pub, outputs)


def pad_to_power_of_two(circuit: Circuit) -> Circuit:
    """Append dummy ``0 * 0`` gates until the multiplication count is a power of two.

    Dummies read a fresh private wire fixed to zero and write fresh indexed
    outputs; both stay out of the public set.
    """
    k = circuit.num_mul
    if k < 1:
        raise CircuitError("no multiplication gates")
    target = 1 << (k - 1).bit_length()
    if target == k:
        return circuit
    wire_index = dict(circuit.wire_index)
    m = circuit.m
    zero = _fresh("pad_zero", wire_index)
    wire_index[zero] = m + 1
    gates = list(circuit.gates)
    for d in range(target - k):
        out = _fresh(f"pad{d}", wire_index)
        wire_index[out] = m + 2 + d
        gates.append(Gate("mul", out, zero, zero))
    return Circuit(list(circuit.inputs), gates, wire_index, list(circuit.public),
                   list(circuit.outputs), list(circuit.zero_wires) + [zero])


def _fresh(base: str, taken) -> str:
    name, i = base, 0
    while name in taken:
        i += 1
        name = f"{base}_{i}"
    return name


@dataclass
class Witness:
    values: list[int]  # W_0..W_m as canonical ints
    field: PrimeField

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def replaced(self, i: int, value: int) -> Witness:
        vals = list(self.values)
        vals[i] = value % self.field.modulus
        return Witness(vals, self.field)


def evaluate_circuit(circuit: Circuit, inputs: Sequence[int], field: PrimeField) -> Witness:
    if len(inputs) != len(circuit.inputs):
        raise CircuitError(f"circuit takes {len(circuit.inputs)} inputs, got {len(inputs)}")
    p = field.modulus
    val: dict[str, int] = {ONE: 1}
    for nm, v in zip(circuit.inputs, inputs):
        val[nm] = int(v) % p
    for nm in circuit.zero_wires:
        val[nm] = 0
    for g in circuit.gates:
        a, b = val[g.left], val[g.right]
        val[g.out] = (a + b) % p if g.kind == "add" else a * b % p
    w = [0] * (circuit.m + 1)
    for nm, i in circuit.wire_index.items():
        w[i] = val[nm]
    return Witness(w, field)


@dataclass
class QapInstance:
    """Selector values at gate labels: row j holds L_i(ω^j), R_i(ω^j), O_i(ω^j) sparsely."""

    field: PrimeField
    n: int
    m: int
    L: list[dict[int, int]]
    R: list[dict[int, int]]
    O: list[dict[int, int]]
    domain: EvaluationDomain
    io: list[int]
    mid: list[int]


def build_qap(circuit: Circuit, field: PrimeField, eta: int | None = None) -> QapInstance:
    """Gate j (file order among multiplications) gets label ω^j.

    An indexed wire counts as a left/right input of a multiplication gate
    once per addition path from it to that input.
    """
    mul = circuit.mul_gates
    n = len(mul)
    if n & (n - 1):
        raise CircuitError(f"{n} multiplication gates; pad to a power of two first")
    p = field.modulus
    adds = {g.out: g for g in circuit.gates if g.kind == "add"}
    memo: dict[str, Counter] = {}

    def closure(ref: str) -> Counter:
        if ref in circuit.wire_index:
            return Counter({circuit.wire_index[ref]: 1})
        if ref not in memo:
            g = adds[ref]
            memo[ref] = closure(g.left) + closure(g.right)
        return memo[ref]

    def row(c: Counter) -> dict[int, int]:
        return {i: k % p for i, k in sorted(c.items()) if k % p}

    L = [row(closure(g.left)) for g in mul]
    R = [row(closure(g.right)) for g in mul]
    O = [{circuit.wire_index[g.out]: 1} for g in mul]
    domain = EvaluationDomain.standard(field, n, eta)
    return QapInstance(field, n, circuit.m, L, R, O, domain, circuit.io, circuit.mid)


def abc_vectors(qap: QapInstance, witness: Witness) -> tuple[list[int], list[int], list[int]]:
    """a_j = L(ω^j), b_j = R(ω^j), c_j = O(ω^j)."""
    p = qap.field.modulus
    w = witness.values

    def ev(rows):
        return [sum(k * w[i] for i, k in r.items()) % p for r in rows]

    return ev(qap.L), ev(qap.R), ev(qap.O)


def lagrange_basis_on_subgroup(domain: EvaluationDomain, s: int) -> list[int]:
    """[ℓ_j(s)] for the interpolation basis over S = {ω^j}."""
    p, n = domain.p, domain.n
    s %= p
    zs = (pow(s, n, p) - 1) % p
    if zs == 0:
        pts = domain.without_coset().elements()
        return [1 if x == s else 0 for x in pts]
    # ℓ_j(s) = (s^n - 1) ω^j / (n (s - ω^j))
    pts = domain.without_coset().elements()
    invs = domain.field.batch_inv([(s - x) % p for x in pts])
    c = zs * domain.n_inv % p
    return [c * x % p * iv % p for x, iv in zip(pts, invs)]


def selector_polynomial_evals_at(qap: QapInstance, s: int) -> tuple[list[int], list[int], list[int]]:
    """(L_i(s), R_i(s), O_i(s)) for i = 0..m via one shared basis evaluation."""
    p = qap.field.modulus
    basis = lagrange_basis_on_subgroup(qap.domain, s)

    def ev(rows):
        out = [0] * (qap.m + 1)
        for lj, r in zip(basis, rows):
            if lj:
                for i, k in r.items():
                    out[i] = (out[i] + lj * k) % p
        return out

    return ev(qap.L), ev(qap.R), ev(qap.O)


def parse_values(text: str) -> list[int]:
    """One decimal integer per line; blank lines and ``#`` comments ignored."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(int(line))
        except ValueError:
            raise CircuitError(f"not a decimal integer: {line!r}", lineno) from None
    return out


def random_circuit(rng, num_inputs: int, num_mul: int, add_prob: float = 0.4,
                   public_inputs: int = 1) -> str:
    """Circuit text with ``num_mul`` multiplications and random additions in between.

    ``rng`` is a numpy Generator.
    """
    lines = [f"inputs {num_inputs}"]
    pool = [ONE] + [f"w{i}" for i in range(1, num_inputs + 1)]
    k = 0
    last = None
    n_add = 0
    while k < num_mul:
        a = pool[int(rng.integers(len(pool)))]
        b = pool[int(rng.integers(len(pool)))]
        if rng.random() < add_prob:
            out = f"s{n_add}"
            n_add += 1
            lines.append(f"add {out} {a} {b}")
        else:
            out = f"m{k}"
            k += 1
            lines.append(f"mul {out} {a} {b}")
            last = out
        pool.append(out)
    if public_inputs:
        lines.append("public " + " ".join(str(i) for i in range(1, min(public_inputs, num_inputs) + 1)))
    lines.append(f"return {last}")
    return "\n".join(lines) + "\n"


EXAMPLE_CIRCUIT = """\
# (c1 + c2) * c3^2 with the wire numbering of the worked example:
# c1 = w1, c2 = w2, c3 = w5; gate 1 writes w3, gate ω writes w4.
inputs w1 w2 w5
add s w1 w2
mul w3 s w5
mul w4 w3 w5
return w4
"""
