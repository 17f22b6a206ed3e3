"""Proof scripts: the line format, rule checking, and choice tables.

A proof file is one step per line:

    linenumber. formula, rule a, no premise
    linenumber. formula, rule a, 4 6
    linenumber. formula, rule b, 3

Rule a concludes a stable formula and must list, for every component of
every environment-choice occurrence, a premise matching the formula
with that component chosen.  Rule b concludes a formula from the single
premise obtained by one machine choice.  Checking a proof records those
matches as choice tables; the game engine later replays them.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import classical
from .formulas import (
    CL1Error, Formula, FormulaSyntaxError, Path, parse_formula, path_str,
    env_choice_occurrences, machine_choice_occurrences, substitute, arity,
)
from .isomorphism import IsoWitness, Mode, isomorphic, witness


@dataclass(frozen=True)
class ProofLine:
    number: int
    formula: Formula
    rule: str  # "a" | "b"
    premises: tuple[int, ...]


@dataclass(frozen=True)
class Diagnostic:
    line: int
    severity: str  # "error" | "warning"
    code: str
    message: str
    path: str | None = None

    def to_dict(self) -> dict:
        out = {"line": self.line, "severity": self.severity,
               "code": self.code, "message": self.message}
        if self.path is not None:
            out["path"] = self.path
        return out

    def __str__(self) -> str:
        where = f"line {self.line}"
        if self.path is not None:
            where += f", path {self.path!r}"
        return f"{self.severity}[{self.code}] {where}: {self.message}"


class ProofSyntaxError(CL1Error):
    """Structurally broken proof file; checking cannot proceed."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


@dataclass(frozen=True)
class EnvChoiceEntry:
    path: Path
    component: int
    premise: int
    witness: IsoWitness  # from the substituted conclusion to the premise formula


@dataclass
class EnvChoiceTable:
    """Rule-a annotation: premise serving each (occurrence, component) pair."""

    entries: dict[tuple[Path, int], EnvChoiceEntry] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class MachineChoice:
    """Rule-b annotation: the one move that turns the formula into its premise."""

    path: Path
    component: int
    premise: int
    witness: IsoWitness


@dataclass
class CheckedProof:
    lines: tuple[ProofLine, ...]
    annotations: dict[int, EnvChoiceTable | MachineChoice]
    diagnostics: list[Diagnostic]
    mode: Mode = "iso"

    @property
    def valid(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)

    @property
    def conclusion(self) -> ProofLine:
        return self.lines[-1]

    def line(self, number: int) -> ProofLine:
        return self._by_number[number]

    @property
    def _by_number(self) -> dict[int, ProofLine]:
        return {ln.number: ln for ln in self.lines}

    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == "error"]

    def warnings(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == "warning"]


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_LINE_RE = re.compile(
    r"^\s*(?P<num>\d+)\s*\.\s*(?P<formula>[^,]*?)\s*,\s*rule\s+(?P<rule>[ab])\s*,\s*(?P<just>.+?)\s*$"
)


def _fatal(line: int, code: str, message: str) -> ProofSyntaxError:
    return ProofSyntaxError(Diagnostic(line, "error", code, message))


def parse_proof(text: str) -> list[ProofLine]:
    """Parse a proof script; raises ProofSyntaxError on structural faults.

    Blank lines and '#' comments are skipped.  Line numbers must be
    strictly increasing and premises must reference earlier lines; rule
    b takes exactly one premise.
    """
    lines: list[ProofLine] = []
    seen: set[int] = set()
    last_number = 0
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        m = _LINE_RE.match(stripped)
        if not m:
            lead = re.match(r"(\d+)", stripped)
            guess = int(lead.group(1)) if lead else last_number + 1
            raise _fatal(guess, "malformed-line",
                         f"cannot parse proof line {stripped!r}")
        number = int(m.group("num"))
        if number <= last_number:
            raise _fatal(number, "bad-numbering",
                         f"line numbers must strictly increase ({number} after {last_number})")
        try:
            formula = parse_formula(m.group("formula"))
        except FormulaSyntaxError as exc:
            raise _fatal(number, "bad-formula", str(exc)) from exc
        just = m.group("just")
        if just == "no premise":
            premises: tuple[int, ...] = ()
        else:
            if not re.fullmatch(r"\d+(\s+\d+)*", just):
                raise _fatal(number, "malformed-line",
                             f"bad justification {just!r}")
            premises = tuple(int(p) for p in just.split())
        rule = m.group("rule")
        for p in premises:
            if p not in seen:
                raise _fatal(number, "bad-premise-ref",
                             f"premise {p} does not refer to an earlier line")
        if rule == "b" and len(premises) != 1:
            raise _fatal(number, "bad-premise-count",
                         f"rule b takes exactly one premise, got {len(premises)}")
        lines.append(ProofLine(number, formula, rule, premises))
        seen.add(number)
        last_number = number
    if not lines:
        raise _fatal(0, "empty-proof", "proof contains no lines")
    return lines


# ---------------------------------------------------------------------------
# Rule checking
# ---------------------------------------------------------------------------

def check_line_a(
    line: ProofLine,
    premises: list[tuple[int, Formula]],
    mode: Mode = "iso",
    max_atoms: int = classical.DEFAULT_MAX_ATOMS,
) -> tuple[EnvChoiceTable, list[Diagnostic]]:
    """Verify a rule-a step: stability plus full environment-choice coverage."""
    diags: list[Diagnostic] = []
    table = EnvChoiceTable()
    try:
        if not classical.is_stable(line.formula, max_atoms=max_atoms):
            diags.append(Diagnostic(
                line.number, "error", "instability",
                f"rule a needs a stable formula; elementarization of "
                f"{line.formula} is not classically valid"))
    except classical.AtomLimitExceeded as exc:
        diags.append(Diagnostic(line.number, "error", "atom-limit", str(exc)))

    used: set[int] = set()
    for occ in env_choice_occurrences(line.formula):
        n = arity(occ.subformula)
        for i in range(1, n + 1):
            required = substitute(line.formula, occ.path, i)
            for number, premise_formula in premises:
                if isomorphic(required, premise_formula, mode):
                    table.entries[(occ.path, i)] = EnvChoiceEntry(
                        occ.path, i, number,
                        witness(required, premise_formula))
                    used.add(number)
                    break
            else:
                diags.append(Diagnostic(
                    line.number, "error", "missing-premise",
                    f"no listed premise matches component {i} of the choice at "
                    f"{path_str(occ.path)!r} (need {required})",
                    path=path_str(occ.path)))
    for number, _ in premises:
        if number not in used:
            diags.append(Diagnostic(
                line.number, "warning", "unused-premise",
                f"listed premise {number} matches no environment choice"))
    return table, diags


def check_line_b(
    line: ProofLine,
    premise: tuple[int, Formula],
    mode: Mode = "iso",
) -> tuple[MachineChoice | None, list[Diagnostic]]:
    """Verify a rule-b step: some machine choice turns the formula into the premise.

    Occurrences are scanned from the right (reverse pre-order) with
    components ascending; the first match is the move the extracted
    strategy will play.
    """
    number, premise_formula = premise
    for occ in reversed(machine_choice_occurrences(line.formula)):
        for i in range(1, arity(occ.subformula) + 1):
            candidate = substitute(line.formula, occ.path, i)
            if isomorphic(candidate, premise_formula, mode):
                return MachineChoice(
                    occ.path, i, number,
                    witness(candidate, premise_formula)), []
    return None, [Diagnostic(
        line.number, "error", "no-machine-choice",
        f"no machine choice in {line.formula} yields premise {number} "
        f"({premise_formula})")]


def check_proof(
    lines: list[ProofLine],
    mode: Mode = "iso",
    max_atoms: int = classical.DEFAULT_MAX_ATOMS,
) -> CheckedProof:
    """Check every line against its rule and assemble the choice tables."""
    by_number: dict[int, Formula] = {}
    annotations: dict[int, EnvChoiceTable | MachineChoice] = {}
    diagnostics: list[Diagnostic] = []
    for line in lines:
        resolved: list[tuple[int, Formula]] = []
        missing = False
        for p in line.premises:
            if p in by_number:
                resolved.append((p, by_number[p]))
            else:
                diagnostics.append(Diagnostic(
                    line.number, "error", "unresolved-premise",
                    f"premise {p} is not a known line"))
                missing = True
        if line.rule == "a":
            table, diags = check_line_a(line, resolved, mode, max_atoms)
            annotations[line.number] = table
            diagnostics.extend(diags)
        else:
            if not missing and resolved:
                choice, diags = check_line_b(line, resolved[0], mode)
                diagnostics.extend(diags)
                if choice is not None:
                    annotations[line.number] = choice
        by_number[line.number] = line.formula
    return CheckedProof(tuple(lines), annotations, diagnostics, mode)


def check_text(
    text: str,
    mode: Mode = "iso",
    max_atoms: int = classical.DEFAULT_MAX_ATOMS,
) -> CheckedProof:
    """Parse then check; structural faults come back as a single-error result."""
    try:
        lines = parse_proof(text)
    except ProofSyntaxError as exc:
        return CheckedProof((), {}, [exc.diagnostic], mode)
    return check_proof(lines, mode, max_atoms)
