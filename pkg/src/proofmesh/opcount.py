"""Field-operation tallies attributed to protocol parties."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Tally:
    mul: int = 0
    add: int = 0
    inv: int = 0

    def charge(self, mul: int = 0, add: int = 0, inv: int = 0) -> None:
        self.mul += mul
        self.add += add
        self.inv += inv

    def __iadd__(self, other: Tally) -> Tally:
        self.mul += other.mul
        self.add += other.add
        self.inv += other.inv
        return self


def charge(tally: Tally | None, cost: tuple[int, int]) -> None:
    if tally is not None:
        tally.mul += cost[0]
        tally.add += cost[1]


@dataclass
class OpCounter:
    """Per-party tallies. Party keys are ``"prover"`` or ``"server<θ>"``.

    Each protocol run accumulates into its own counter; :meth:`merge`
    folds finished runs together.
    """

    parties: dict[str, Tally] = field(default_factory=dict)

    def party(self, name: str) -> Tally:
        t = self.parties.get(name)
        if t is None:
            t = self.parties[name] = Tally()
        return t

    def prover(self) -> Tally:
        return self.party("prover")

    def server(self, theta: int) -> Tally:
        return self.party(f"server{theta}")

    def merge(self, other: OpCounter) -> OpCounter:
        for name, t in other.parties.items():
            self.party(name).__iadd__(t)
        return self

    def total(self) -> Tally:
        out = Tally()
        for t in self.parties.values():
            out += t
        return out
