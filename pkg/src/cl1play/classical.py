"""Classical propositional validity and the stability test.

Validity is decided by a truth-table sweep, guarded by an atom cap so a
malformed input cannot silently take exponential time.
"""
from __future__ import annotations

from itertools import product

from .formulas import (
    CL1Error, Formula, atoms, elementarize, evaluate, is_elementary,
)

DEFAULT_MAX_ATOMS = 20


class AtomLimitExceeded(CL1Error):
    def __init__(self, count: int, limit: int):
        super().__init__(
            f"formula has {count} distinct atoms, over the configured limit of {limit}")
        self.count = count
        self.limit = limit


class NotElementary(CL1Error):
    pass


def is_valid(f: Formula, max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    """True iff the elementary formula is true under every interpretation."""
    if not is_elementary(f):
        raise NotElementary(f"validity is defined for elementary formulas, got {f}")
    names = sorted(atoms(f))
    if len(names) > max_atoms:
        raise AtomLimitExceeded(len(names), max_atoms)
    for values in product((False, True), repeat=len(names)):
        if not evaluate(f, dict(zip(names, values))):
            return False
    return True


def is_stable(f: Formula, max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    """True iff the formula's elementarization is classically valid."""
    return is_valid(elementarize(f), max_atoms=max_atoms)
