"""Check CL1 proofs and play the games they solve.

The package splits into layers: ``formulas`` (the formula tree and its
syntax), ``isomorphism`` (matching up to commutative reordering),
``classical`` (validity and stability), ``proofs`` (the proof-script
checker), ``engine`` (interactive play of a checked proof), plus a CLI
and an HTTP service on top.
"""

from .formulas import (
    And, Atom, Bot, Cand, CL1Error, Cor, Formula, FormulaSyntaxError, Impl,
    Neg, Or, Path, PathError, Polarity, SurfaceOccurrence, Top,
    elementarize, evaluate, is_elementary, parse_formula, parse_path,
    path_str, render, resolve, substitute, surface_occurrences,
)
from .isomorphism import IsoWitness, NotIsomorphic, canonical_key, isomorphic, remap_move, witness
from .classical import AtomLimitExceeded, is_stable, is_valid
from .proofs import (
    CheckedProof, Diagnostic, MachineChoice, EnvChoiceTable, ProofLine,
    ProofSyntaxError, check_proof, check_text, parse_proof,
)
from .engine import (
    GameSession, IllegalMove, InvalidProof, Move, Outcome, Role, Status,
    StrategyGraph, export_strategy, new_session, parse_move, stop_session,
)

__version__ = "0.1.0"
