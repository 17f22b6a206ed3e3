"""Interactive play of a checked proof.

A session starts at the proof's conclusion and walks the proof
backwards: the environment resolves its choice occurrences by picking
components, and after each environment move the machine immediately
replays the choices recorded in the proof's annotations until it again
waits at a rule-a line.  Because premise matching is up to isomorphism,
the live formula and the proof line it tracks may differ by child
permutations; the session keeps a witness (the "bridge") between them
and translates every recorded move into the coordinates of the formula
the player actually sees.
"""
from __future__ import annotations

import uuid
from dataclasses import dataclass
from enum import Enum

from . import classical
from .formulas import (
    CL1Error, EvaluationError, Formula, Interpretation, Path, atoms,
    elementarize, evaluate, parse_formula, parse_path, path_str, render,
    substitute,
)
from .isomorphism import IsoWitness, identity_witness, witness
from .proofs import CheckedProof, EnvChoiceTable, MachineChoice, ProofLine


class Role(Enum):
    MACHINE = "machine"
    ENVIRONMENT = "environment"


class Status(Enum):
    AWAITING_ENVIRONMENT = "awaiting_environment"
    QUIESCENT = "quiescent"
    FINISHED = "finished"


class InvalidProof(CL1Error):
    pass


class IllegalMove(CL1Error):
    def __init__(self, message: str, legal: list["Move"] | None = None):
        super().__init__(message)
        self.legal = legal or []


class InvariantViolation(CL1Error):
    """Internal consistency check failed; indicates a bug, never user error."""


@dataclass(frozen=True)
class Move:
    role: Role
    path: Path
    component: int

    @property
    def text(self) -> str:
        prefix = path_str(self.path)
        return f"{prefix}.{self.component}" if prefix else str(self.component)

    def __str__(self) -> str:
        return self.text


def parse_move(text: str, role: Role = Role.ENVIRONMENT) -> Move:
    """Parse 'p1.p2.....pk.i': path indices, then the chosen component."""
    parts = parse_path(text.strip())
    if not parts:
        raise CL1Error(f"bad move {text!r}: need at least a component index")
    return Move(role, parts[:-1], parts[-1])


@dataclass(frozen=True)
class Outcome:
    """Who would win if play stopped here.

    ``machine_wins_everywhere`` is interpretation-independent: the
    current formula's elementarization is a classical tautology.
    ``winner_now`` is filled in only when the session carries an
    interpretation.
    """

    machine_wins_everywhere: bool
    winner_now: str | None
    under: str  # "interpretation" | "all_interpretations"
    forfeited: bool = False

    def to_dict(self) -> dict:
        return {
            "machine_wins_everywhere": self.machine_wins_everywhere,
            "winner_now": self.winner_now,
            "under": self.under,
            "forfeited": self.forfeited,
        }


def position_outcome(
    formula: Formula,
    interpretation: Interpretation | None = None,
    max_atoms: int = classical.DEFAULT_MAX_ATOMS,
) -> Outcome:
    """Score a position: unresolved ?& counts as T, unresolved ?| as F."""
    elem = elementarize(formula)
    wins_all = classical.is_valid(elem, max_atoms=max_atoms)
    if interpretation is None:
        return Outcome(wins_all, "machine" if wins_all else None,
                       "all_interpretations")
    winner = "machine" if evaluate(elem, interpretation) else "environment"
    return Outcome(wins_all, winner, "interpretation")


class GameSession:
    """One live play of a verified proof; operations must be called one at a time."""

    def __init__(
        self,
        proof: CheckedProof,
        interpretation: Interpretation | None = None,
        illegal_move_policy: str = "reject",
        max_atoms: int = classical.DEFAULT_MAX_ATOMS,
    ):
        if not proof.valid:
            raise InvalidProof("cannot play an invalid proof")
        if illegal_move_policy not in ("reject", "forfeit"):
            raise ValueError(f"unknown illegal_move_policy {illegal_move_policy!r}")
        self.id = uuid.uuid4().hex
        self.proof = proof
        self.interpretation = dict(interpretation) if interpretation else None
        self.illegal_move_policy = illegal_move_policy
        self.max_atoms = max_atoms
        conclusion = proof.conclusion
        if self.interpretation is not None:
            missing = atoms(conclusion.formula) - self.interpretation.keys()
            if missing:
                raise EvaluationError(
                    f"interpretation missing atoms: {', '.join(sorted(missing))}")
        self.current_formula: Formula = conclusion.formula
        self.current_line: int = conclusion.number
        self.bridge: IsoWitness = identity_witness(conclusion.formula)
        self.run: list[Move] = []
        self.status = Status.AWAITING_ENVIRONMENT
        self._final_outcome: Outcome | None = None
        self._machine_turn()
        self._refresh_status()

    # -- queries ------------------------------------------------------------

    def line(self) -> ProofLine:
        return self.proof.line(self.current_line)

    def legal_env_moves(self) -> list[Move]:
        """The recorded environment choices, in play coordinates."""
        if self.status is not Status.AWAITING_ENVIRONMENT:
            return []
        table = self.proof.annotations[self.current_line]
        assert isinstance(table, EnvChoiceTable)
        back = self.bridge.inverse()
        moves = []
        for (path, i) in table.entries:
            play_path, play_i = back.remap(path, i)
            moves.append(Move(Role.ENVIRONMENT, play_path, play_i))
        return moves

    def outcome(self) -> Outcome:
        if self._final_outcome is not None:
            return self._final_outcome
        return position_outcome(self.current_formula, self.interpretation,
                                self.max_atoms)

    # -- transitions ----------------------------------------------------------

    def apply_env_move(self, move: Move) -> "GameSession":
        """Validate and apply an environment move, then let the machine reply."""
        if self.status is Status.FINISHED:
            raise IllegalMove("session is finished")
        legal = self.legal_env_moves()
        matched = next(
            (m for m in legal
             if m.path == move.path and m.component == move.component),
            None)
        if matched is None:
            if self.illegal_move_policy == "forfeit":
                self.status = Status.FINISHED
                self._final_outcome = Outcome(
                    True, "machine",
                    "interpretation" if self.interpretation else "all_interpretations",
                    forfeited=True)
                return self
            raise IllegalMove(
                f"illegal move {move.text!r}; legal: "
                f"{', '.join(m.text for m in legal) or 'none'}",
                legal)
        table = self.proof.annotations[self.current_line]
        assert isinstance(table, EnvChoiceTable)
        proof_path, proof_i = self.bridge.remap(move.path, move.component)
        entry = table.entries[(proof_path, proof_i)]
        self._step(Move(Role.ENVIRONMENT, move.path, move.component),
                   proof_path, proof_i, entry.premise, entry.witness)
        self._machine_turn()
        self._refresh_status()
        return self

    def stop(self) -> "GameSession":
        """End the session; the current position's outcome is frozen."""
        if self.status is not Status.FINISHED:
            self._final_outcome = self.outcome()
            self.status = Status.FINISHED
        return self

    # -- internals ------------------------------------------------------------

    def _machine_turn(self):
        """Replay recorded machine choices until the proof waits on a rule-a line."""
        while True:
            annotation = self.proof.annotations[self.current_line]
            if not isinstance(annotation, MachineChoice):
                return
            back = self.bridge.inverse()
            play_path, play_i = back.remap(annotation.path, annotation.component)
            self._step(Move(Role.MACHINE, play_path, play_i),
                       annotation.path, annotation.component,
                       annotation.premise, annotation.witness)

    def _step(self, move: Move, proof_path: Path, proof_i: int,
              premise: int, stored: IsoWitness):
        """Apply one move on both sides of the bridge and rebase it on the premise."""
        previous_line = self.current_line
        line_formula = self.line().formula
        new_formula = substitute(self.current_formula, move.path, move.component)
        proof_side = substitute(line_formula, proof_path, proof_i)
        self.run.append(move)
        self.current_formula = new_formula
        self.current_line = premise
        self.bridge = witness(new_formula, proof_side).compose(stored)
        self._check_invariants(previous_line)

    def _check_invariants(self, previous_line: int):
        # The loop invariant of the play: the position is still a well-formed
        # formula, the bridge really maps it onto the tracked proof line, and
        # the walk through the proof strictly descends.
        if self.current_line >= previous_line:
            raise InvariantViolation(
                f"line numbers must decrease ({previous_line} -> {self.current_line})")
        if parse_formula(render(self.current_formula)) != self.current_formula:
            raise InvariantViolation(
                f"current formula does not round-trip: {self.current_formula!r}")
        if self.bridge.source != self.current_formula or not self.bridge.verify():
            raise InvariantViolation("bridge does not map the position onto its proof line")
        if self.bridge.target != self.line().formula:
            raise InvariantViolation("bridge target is not the current proof line")

    def _refresh_status(self):
        if self.status is Status.FINISHED:
            return
        annotation = self.proof.annotations[self.current_line]
        if isinstance(annotation, EnvChoiceTable) and len(annotation) == 0:
            self.status = Status.QUIESCENT
        else:
            self.status = Status.AWAITING_ENVIRONMENT


def new_session(
    proof: CheckedProof,
    interpretation: Interpretation | None = None,
    illegal_move_policy: str = "reject",
    max_atoms: int = classical.DEFAULT_MAX_ATOMS,
) -> GameSession:
    return GameSession(proof, interpretation, illegal_move_policy, max_atoms)


def legal_env_moves(session: GameSession) -> list[Move]:
    return session.legal_env_moves()


def apply_env_move(session: GameSession, move: Move) -> GameSession:
    return session.apply_env_move(move)


def machine_turn(session: GameSession) -> GameSession:
    session._machine_turn()
    session._refresh_status()
    return session


def outcome(session: GameSession) -> Outcome:
    return session.outcome()


def stop_session(session: GameSession) -> GameSession:
    return session.stop()


# ---------------------------------------------------------------------------
# Strategy export
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StrategyEdge:
    src: int
    dst: int
    role: Role
    path: Path
    component: int


@dataclass
class StrategyGraph:
    """The proof's reachable lines with their recorded choices as edges."""

    nodes: list[ProofLine]
    edges: list[StrategyEdge]

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {"line": n.number, "formula": render(n.formula), "rule": n.rule}
                for n in self.nodes
            ],
            "edges": [
                {
                    "from": e.src,
                    "to": e.dst,
                    "role": e.role.value,
                    "path": path_str(e.path),
                    "component": e.component,
                }
                for e in self.edges
            ],
        }

    def to_dot(self) -> str:
        out = ["digraph strategy {"]
        for n in self.nodes:
            shape = "box" if n.rule == "a" else "ellipse"
            label = f"{n.number}: {render(n.formula)}"
            out.append(f'  n{n.number} [shape={shape}, label="{label}"];')
        for e in self.edges:
            style = "solid" if e.role is Role.MACHINE else "dashed"
            move = f"{path_str(e.path)}.{e.component}" if e.path else str(e.component)
            out.append(
                f'  n{e.src} -> n{e.dst} [style={style}, '
                f'label="{e.role.value} {move}"];')
        out.append("}")
        return "\n".join(out)


def export_strategy(proof: CheckedProof) -> StrategyGraph:
    """Lines reachable from the conclusion, with their choice edges."""
    if not proof.valid:
        raise InvalidProof("cannot export a strategy from an invalid proof")
    reachable: set[int] = set()
    edges: list[StrategyEdge] = []
    stack = [proof.conclusion.number]
    while stack:
        number = stack.pop()
        if number in reachable:
            continue
        reachable.add(number)
        annotation = proof.annotations[number]
        if isinstance(annotation, MachineChoice):
            edges.append(StrategyEdge(
                number, annotation.premise, Role.MACHINE,
                annotation.path, annotation.component))
            stack.append(annotation.premise)
        else:
            for (path, i), entry in annotation.entries.items():
                edges.append(StrategyEdge(
                    number, entry.premise, Role.ENVIRONMENT, path, i))
                stack.append(entry.premise)
    nodes = [ln for ln in proof.lines if ln.number in reachable]
    edges.sort(key=lambda e: (-e.src, e.path, e.component))
    return StrategyGraph(nodes, edges)
