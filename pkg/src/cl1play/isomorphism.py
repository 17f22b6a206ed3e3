"""Formula isomorphism via canonical forms, plus permutation witnesses.

Two formulas are isomorphic when one can be turned into the other by
permuting children of the commutative connectives (&, |, ?&, ?|) only;
negation and implication keep their children in place.  The decision is
made by comparing canonical keys (children of commutative nodes sorted
by key).  A witness records, per node, which child-permutation lines
the two trees up, so that moves addressed against one formula can be
replayed against the other.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Mapping

from .formulas import (
    And, Atom, Bot, Cand, CL1Error, Cor, Formula, Impl, Neg, Or, Path, Top,
    arity, children, path_str, with_children,
)

Mode = Literal["strict", "iso"]

_COMMUTATIVE = (And, Or, Cand, Cor)

_KIND_TAG = {And: "&", Or: "|", Cand: "c&", Cor: "c|", Impl: ">", Neg: "~"}


class NotIsomorphic(CL1Error):
    pass


# Keys are cached on the (immutable) nodes and interned, so rebuilding a key
# after a substitution only touches the changed spine and equal keys compare
# by identity.
_interned_keys: dict[str, str] = {}


def canonical_key(f: Formula) -> str:
    """A string equal for two formulas iff they are isomorphic."""
    cached = getattr(f, "_canonical_key", None)
    if cached is not None:
        return cached
    if isinstance(f, Atom):
        key = f.name
    elif isinstance(f, Top):
        key = "#T"
    elif isinstance(f, Bot):
        key = "#F"
    else:
        keys = [canonical_key(c) for c in children(f)]
        if isinstance(f, _COMMUTATIVE):
            keys.sort()
        key = _KIND_TAG[type(f)] + "(" + ",".join(keys) + ")"
    key = _interned_keys.setdefault(key, key)
    object.__setattr__(f, "_canonical_key", key)
    return key


def isomorphic(a: Formula, b: Formula, mode: Mode = "iso") -> bool:
    """Equality up to commutative reordering ('iso') or structural ('strict')."""
    if mode == "strict":
        return a == b
    return canonical_key(a) == canonical_key(b)


@dataclass(frozen=True)
class IsoWitness:
    """Node-by-node child-permutation mapping from ``source`` onto ``target``.

    ``perms[p]`` is the permutation at the source node addressed by
    path ``p``: child k of that node corresponds to child
    ``perms[p][k-1]`` of the matching target node.  Only commutative
    nodes carry non-identity permutations.
    """

    source: Formula
    target: Formula
    perms: Mapping[Path, tuple[int, ...]]

    def perm_at(self, path: Path) -> tuple[int, ...]:
        try:
            return self.perms[path]
        except KeyError:
            raise NotIsomorphic(f"path {path_str(path)!r} not in witness domain") from None

    def target_path(self, path: Path) -> Path:
        """The target-side path corresponding to a source-side path."""
        out = []
        cur: Path = ()
        for step in path:
            perm = self.perm_at(cur)
            if not 1 <= step <= len(perm):
                raise NotIsomorphic(f"path {path_str(path)!r} not in witness domain")
            out.append(perm[step - 1])
            cur = cur + (step,)
        return tuple(out)

    def remap(self, path: Path, i: int) -> tuple[Path, int]:
        """Carry a move (choice path, component) over to the target formula."""
        tpath = self.target_path(path)
        perm = self.perm_at(path)
        if not 1 <= i <= len(perm):
            raise NotIsomorphic(f"component {i} out of range at {path_str(path)!r}")
        return tpath, perm[i - 1]

    def inverse(self) -> "IsoWitness":
        perms: dict[Path, tuple[int, ...]] = {}

        def walk(node: Formula, spath: Path, tpath: Path):
            sigma = self.perms[spath]
            inv = [0] * len(sigma)
            for k, j in enumerate(sigma, start=1):
                inv[j - 1] = k
            perms[tpath] = tuple(inv)
            for k, child in enumerate(children(node), start=1):
                walk(child, spath + (k,), tpath + (sigma[k - 1],))

        walk(self.source, (), ())
        return IsoWitness(self.target, self.source, perms)

    def compose(self, other: "IsoWitness") -> "IsoWitness":
        """self maps A onto B, other maps B onto C; result maps A onto C."""
        perms: dict[Path, tuple[int, ...]] = {}

        def walk(node: Formula, apath: Path, bpath: Path):
            sigma = self.perms[apath]
            tau = other.perms[bpath]
            perms[apath] = tuple(tau[sigma[k] - 1] for k in range(len(sigma)))
            for k, child in enumerate(children(node), start=1):
                walk(child, apath + (k,), bpath + (sigma[k - 1],))

        walk(self.source, (), ())
        return IsoWitness(self.source, other.target, perms)

    def apply(self) -> Formula:
        """Rebuild the source with every stored permutation applied."""

        def walk(node: Formula, path: Path) -> Formula:
            kids = children(node)
            if not kids:
                return node
            sigma = self.perms[path]
            rebuilt: list[Formula] = [node] * len(kids)
            for k, child in enumerate(kids, start=1):
                rebuilt[sigma[k - 1] - 1] = walk(child, path + (k,))
            return with_children(node, tuple(rebuilt))

        return walk(self.source, ())

    def verify(self) -> bool:
        """Soundness check: applying the permutations reproduces the target."""
        return self.apply() == self.target


def identity_witness(f: Formula) -> IsoWitness:
    perms: dict[Path, tuple[int, ...]] = {}

    def walk(node: Formula, path: Path):
        n = arity(node)
        perms[path] = tuple(range(1, n + 1))
        for k, child in enumerate(children(node), start=1):
            walk(child, path + (k,))

    walk(f, ())
    return IsoWitness(f, f, perms)


def witness(a: Formula, b: Formula) -> IsoWitness:
    """A deterministic witness from ``a`` onto ``b``.

    At commutative nodes, children with equal canonical keys are paired
    in their original order, so witness(f, f) is the identity.
    """
    perms: dict[Path, tuple[int, ...]] = {}

    def walk(na: Formula, nb: Formula, path: Path):
        if type(na) is not type(nb) or canonical_key(na) != canonical_key(nb):
            raise NotIsomorphic(
                f"nodes differ at {path_str(path)!r}: {na!r} vs {nb!r}")
        ka = children(na)
        kb = children(nb)
        if isinstance(na, _COMMUTATIVE):
            # Stable pairing: walk b-children grouped by key, in order.
            unused: dict[str, list[int]] = {}
            for j, child in enumerate(kb, start=1):
                unused.setdefault(canonical_key(child), []).append(j)
            sigma = []
            for child in ka:
                slots = unused.get(canonical_key(child))
                if not slots:
                    raise NotIsomorphic(
                        f"children at {path_str(path)!r} do not match up")
                sigma.append(slots.pop(0))
        else:
            sigma = list(range(1, len(ka) + 1))
        perms[path] = tuple(sigma)
        for k, child in enumerate(ka, start=1):
            walk(child, kb[sigma[k - 1] - 1], path + (k,))

    walk(a, b, ())
    return IsoWitness(a, b, perms)


def remap_move(w: IsoWitness, path: Path, i: int) -> tuple[Path, int]:
    """Module-level convenience for :meth:`IsoWitness.remap`."""
    return w.remap(path, i)
