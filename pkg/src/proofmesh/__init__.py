"""Finite-field zkSNARK toolkit with a multiparty distributed prover.

The quotient polynomial of the QAP prover is computed by N = K + T
simulated servers holding Lagrange shares of the witness vectors, so
that any T colluding servers learn nothing about them.
"""

from .field import DESK, FIELDS, TEST17, FieldElement, PrimeField
from .domains import EvaluationDomain, coset_fft, coset_ifft, fft, ifft
from .sharing import SharingParams, reconstruct_at, share
from .mpc import ProtocolAbort, ProtocolConfig, mpc_composed_fft, mpc_coset_ifft, run_simulation
from .qap import Circuit, Witness, build_qap, evaluate_circuit, parse_circuit
from .snark import (
    UnsatisfiableWitness,
    compute_proof,
    polynomial_division_centralized,
    polynomial_division_distributed,
    prove,
    setup,
    verify,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "DESK", "FIELDS", "TEST17", "FieldElement", "PrimeField",
    "EvaluationDomain", "coset_fft", "coset_ifft", "fft", "ifft",
    "SharingParams", "reconstruct_at", "share",
    "ProtocolAbort", "ProtocolConfig", "mpc_composed_fft", "mpc_coset_ifft", "run_simulation",
    "Circuit", "Witness", "build_qap", "evaluate_circuit", "parse_circuit",
    "UnsatisfiableWitness", "compute_proof", "polynomial_division_centralized",
    "polynomial_division_distributed", "prove", "setup", "verify", "BACKEND",
]
