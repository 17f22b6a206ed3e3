"""CL1 formulas: data model, concrete syntax, and the purely syntactic operations.

A CL1 formula is classical propositional logic plus the two choice
connectives ``?&`` (the environment or the machine picks one conjunct)
and ``?|`` (same for disjuncts).  Formulas are immutable trees; every
operation here is a pure function over them.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping


class CL1Error(Exception):
    """Base class for every error this package raises on purpose."""


class FormulaSyntaxError(CL1Error):
    """Bad formula text. ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.message = message
        self.position = position


class PathError(CL1Error):
    """A path does not address the kind of occurrence the operation needs."""


class EvaluationError(CL1Error):
    """Evaluation reached something the interpretation cannot answer."""


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

Path = tuple[int, ...]


def parse_path(text: str) -> Path:
    """Parse a dot-separated 1-based index string; '' is the root."""
    if text == "":
        return ()
    parts = text.split(".")
    path = []
    for part in parts:
        if not part.isdigit() or int(part) < 1:
            raise PathError(f"bad path component {part!r} in {text!r}")
        path.append(int(part))
    return tuple(path)


def path_str(path: Path) -> str:
    return ".".join(str(i) for i in path)


# ---------------------------------------------------------------------------
# Formula tree
# ---------------------------------------------------------------------------

ATOM_NAME = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class Formula:
    """Base class for formula nodes. Instances are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not ATOM_NAME.match(self.name):
            raise ValueError(f"bad atom name {self.name!r}")

    def __repr__(self):
        return f"Atom({self.name})"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self):
        return "Top"


@dataclass(frozen=True, repr=False)
class Bot(Formula):
    def __repr__(self):
        return "Bot"


@dataclass(frozen=True, repr=False)
class Neg(Formula):
    child: Formula

    def __repr__(self):
        return f"Neg({self.child!r})"


@dataclass(frozen=True, repr=False)
class Impl(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Impl({self.left!r}, {self.right!r})"


class _Nary(Formula):
    """Shared arity check: every n-ary connective needs at least two operands."""

    __slots__ = ()

    def _check(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError(f"{type(self).__name__} needs at least 2 children")


@dataclass(frozen=True, repr=False)
class And(_Nary):
    children: tuple[Formula, ...]

    def __post_init__(self):
        self._check()

    def __repr__(self):
        return f"And{self.children!r}"


@dataclass(frozen=True, repr=False)
class Or(_Nary):
    children: tuple[Formula, ...]

    def __post_init__(self):
        self._check()

    def __repr__(self):
        return f"Or{self.children!r}"


@dataclass(frozen=True, repr=False)
class Cand(_Nary):
    """Choice conjunction: one conjunct gets picked by whoever owns it."""

    children: tuple[Formula, ...]

    def __post_init__(self):
        self._check()

    def __repr__(self):
        return f"Cand{self.children!r}"


@dataclass(frozen=True, repr=False)
class Cor(_Nary):
    """Choice disjunction."""

    children: tuple[Formula, ...]

    def __post_init__(self):
        self._check()

    def __repr__(self):
        return f"Cor{self.children!r}"


TOP = Top()
BOT = Bot()

CHOICE = (Cand, Cor)
NARY = (And, Or, Cand, Cor)


def children(f: Formula) -> tuple[Formula, ...]:
    """Uniform child access for any node kind."""
    if isinstance(f, Neg):
        return (f.child,)
    if isinstance(f, Impl):
        return (f.left, f.right)
    if isinstance(f, NARY):
        return f.children
    return ()


def arity(f: Formula) -> int:
    return len(children(f))


def with_children(f: Formula, new: tuple[Formula, ...]) -> Formula:
    """Rebuild a node of the same kind around new children."""
    if isinstance(f, Neg):
        (c,) = new
        return Neg(c)
    if isinstance(f, Impl):
        left, right = new
        return Impl(left, right)
    if isinstance(f, NARY):
        return type(f)(new)
    if new:
        raise ValueError(f"{f!r} takes no children")
    return f


def node_count(f: Formula) -> int:
    return 1 + sum(node_count(c) for c in children(f))


def atoms(f: Formula) -> set[str]:
    """Names of all atoms occurring anywhere in the formula."""
    if isinstance(f, Atom):
        return {f.name}
    out: set[str] = set()
    for c in children(f):
        out |= atoms(c)
    return out


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str  # LPAREN RPAREN NOT AND OR CAND COR IMPL CONST ATOM EOF
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"(?P<WS>\s+)"
    r"|(?P<IMPL>->|\u2192)"
    r"|(?P<CAND>\?&|\u2293)"
    r"|(?P<COR>\?\||\u2294)"
    r"|(?P<LPAREN>\()"
    r"|(?P<RPAREN>\))"
    r"|(?P<NOT>~|\u00ac)"
    r"|(?P<AND>&|\u2227)"
    r"|(?P<OR>\||\u2228)"
    r"|(?P<TOP>\u22a4)"
    r"|(?P<BOT>\u22a5)"
    r"|(?P<WORD>[A-Za-z][A-Za-z0-9_]*)"
)


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise FormulaSyntaxError(f"unknown token {text[i]!r}", i)
        kind = m.lastgroup
        word = m.group(0)
        if kind == "WS":
            pass
        elif kind == "WORD":
            if word in ("T", "F"):
                tokens.append(_Token("CONST", word, i))
            elif ATOM_NAME.match(word):
                tokens.append(_Token("ATOM", word, i))
            else:
                raise FormulaSyntaxError(f"unknown token {word!r}", i)
        elif kind == "TOP":
            tokens.append(_Token("CONST", "T", i))
        elif kind == "BOT":
            tokens.append(_Token("CONST", "F", i))
        else:
            tokens.append(_Token(kind, word, i))
        i = m.end()
    tokens.append(_Token("EOF", "", n))
    return tokens


class _Parser:
    """Recursive descent over: impl > orlvl > andlvl > unary.

    Same-operator runs flatten into one n-ary node; mixing the two
    operators of one precedence level without parentheses is an error
    because the grouping would silently change the game.
    """

    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.impl()
        tok = self.peek()
        if tok.kind == "RPAREN":
            raise FormulaSyntaxError("unbalanced parentheses", tok.pos)
        if tok.kind != "EOF":
            raise FormulaSyntaxError(f"unexpected {tok.text!r}", tok.pos)
        return f

    def impl(self) -> Formula:
        left = self.orlvl()
        if self.peek().kind == "IMPL":
            self.next()
            right = self.impl()  # right-associative
            return Impl(left, right)
        return left

    def orlvl(self) -> Formula:
        first = self.andlvl()
        kind = self.peek().kind
        if kind not in ("OR", "COR"):
            return first
        parts = [first]
        while True:
            tok = self.peek()
            if tok.kind in ("OR", "COR"):
                if tok.kind != kind:
                    raise FormulaSyntaxError(
                        "cannot mix '|' and '?|' without parentheses", tok.pos)
                self.next()
                parts.append(self.andlvl())
            else:
                break
        cls = Or if kind == "OR" else Cor
        return cls(tuple(parts))

    def andlvl(self) -> Formula:
        first = self.unary()
        kind = self.peek().kind
        if kind not in ("AND", "CAND"):
            return first
        parts = [first]
        while True:
            tok = self.peek()
            if tok.kind in ("AND", "CAND"):
                if tok.kind != kind:
                    raise FormulaSyntaxError(
                        "cannot mix '&' and '?&' without parentheses", tok.pos)
                self.next()
                parts.append(self.unary())
            else:
                break
        cls = And if kind == "AND" else Cand
        return cls(tuple(parts))

    def unary(self) -> Formula:
        tok = self.next()
        if tok.kind == "NOT":
            return Neg(self.unary())
        if tok.kind == "LPAREN":
            f = self.impl()
            closing = self.next()
            if closing.kind != "RPAREN":
                raise FormulaSyntaxError("unbalanced parentheses", closing.pos)
            return f
        if tok.kind == "CONST":
            return TOP if tok.text == "T" else BOT
        if tok.kind == "ATOM":
            return Atom(tok.text)
        if tok.kind == "EOF":
            raise FormulaSyntaxError("unexpected end of input", tok.pos)
        raise FormulaSyntaxError(f"unexpected {tok.text!r}", tok.pos)


def parse_formula(text: str) -> Formula:
    """Parse concrete syntax into a Formula.

    Operators: ``~ & | -> ?& ?|`` with constants ``T``/``F``; the
    Unicode forms of all of these are accepted as aliases.  Precedence
    is ``~`` over ``&``/``?&`` over ``|``/``?|`` over ``->`` (the last
    right-associative).
    """
    return _Parser(_tokenize(text)).parse()


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

_LEVEL_IMPL = 1
_LEVEL_OR = 2
_LEVEL_AND = 3
_LEVEL_UNARY = 4


def _level(f: Formula) -> int:
    if isinstance(f, Impl):
        return _LEVEL_IMPL
    if isinstance(f, (Or, Cor)):
        return _LEVEL_OR
    if isinstance(f, (And, Cand)):
        return _LEVEL_AND
    return _LEVEL_UNARY


def render(f: Formula) -> str:
    """Canonical text with minimal parentheses; parse(render(f)) == f.

    A same-level child is always parenthesized: without parentheses an
    equal operator would flatten into the parent and a sibling operator
    of the same precedence would be a parse error.
    """
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, Neg):
        inner = render(f.child)
        if _level(f.child) < _LEVEL_UNARY:
            inner = f"({inner})"
        return "~" + inner
    if isinstance(f, Impl):
        left = render(f.left)
        if _level(f.left) <= _LEVEL_IMPL:
            left = f"({left})"
        return f"{left}->{render(f.right)}"
    op = {And: "&", Or: "|", Cand: "?&", Cor: "?|"}[type(f)]
    own = _level(f)
    parts = []
    for c in f.children:
        text = render(c)
        if _level(c) <= own:
            text = f"({text})"
        parts.append(text)
    return op.join(parts)


# ---------------------------------------------------------------------------
# Occurrences, polarity, substitution
# ---------------------------------------------------------------------------

class Polarity(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    def flip(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE


@dataclass(frozen=True)
class SurfaceOccurrence:
    path: Path
    subformula: Formula
    polarity: Polarity


def surface_occurrences(f: Formula) -> list[SurfaceOccurrence]:
    """Every occurrence not inside a choice connective, in pre-order.

    The root is positive; crossing a negation or stepping into the left
    side of an implication flips polarity.  Choice nodes themselves are
    listed, their subtrees are not.
    """
    out: list[SurfaceOccurrence] = []

    def walk(node: Formula, path: Path, pol: Polarity):
        out.append(SurfaceOccurrence(path, node, pol))
        if isinstance(node, CHOICE):
            return
        if isinstance(node, Neg):
            walk(node.child, path + (1,), pol.flip())
        elif isinstance(node, Impl):
            walk(node.left, path + (1,), pol.flip())
            walk(node.right, path + (2,), pol)
        elif isinstance(node, NARY):
            for i, c in enumerate(node.children, start=1):
                walk(c, path + (i,), pol)

    walk(f, (), Polarity.POSITIVE)
    return out


def env_choice_occurrences(f: Formula) -> list[SurfaceOccurrence]:
    """Surface occurrences where the environment picks: positive ?&, negative ?|."""
    return [
        o for o in surface_occurrences(f)
        if (isinstance(o.subformula, Cand) and o.polarity is Polarity.POSITIVE)
        or (isinstance(o.subformula, Cor) and o.polarity is Polarity.NEGATIVE)
    ]


def machine_choice_occurrences(f: Formula) -> list[SurfaceOccurrence]:
    """Surface occurrences where the machine picks: negative ?&, positive ?|."""
    return [
        o for o in surface_occurrences(f)
        if (isinstance(o.subformula, Cand) and o.polarity is Polarity.NEGATIVE)
        or (isinstance(o.subformula, Cor) and o.polarity is Polarity.POSITIVE)
    ]


def resolve(f: Formula, path: Path) -> Formula:
    """The subformula addressed by ``path`` ('' addresses f itself)."""
    node = f
    for depth, step in enumerate(path):
        kids = children(node)
        if not 1 <= step <= len(kids):
            raise PathError(
                f"path {path_str(path)} does not resolve: index {step} at depth {depth}"
            )
        node = kids[step - 1]
    return node


def substitute(f: Formula, path: Path, i: int) -> Formula:
    """Replace the choice occurrence at ``path`` by its i-th component.

    The occurrence must be a surface ?&/?| node; everything else in the
    tree is left untouched.
    """
    target = resolve(f, path)
    if not isinstance(target, CHOICE):
        raise PathError(f"path {path_str(path)!r} does not address a choice node")
    node = f
    for step in path:
        if isinstance(node, CHOICE):
            raise PathError(
                f"occurrence at {path_str(path)!r} is inside a choice operator")
        node = children(node)[step - 1]
    if not 1 <= i <= arity(target):
        raise PathError(
            f"component {i} out of range 1..{arity(target)} at {path_str(path)!r}")

    def rebuild(node: Formula, rest: Path) -> Formula:
        if not rest:
            return children(node)[i - 1]
        step = rest[0]
        kids = list(children(node))
        kids[step - 1] = rebuild(kids[step - 1], rest[1:])
        return with_children(node, tuple(kids))

    return rebuild(f, path)


# ---------------------------------------------------------------------------
# Elementary formulas and evaluation
# ---------------------------------------------------------------------------

def is_elementary(f: Formula) -> bool:
    """True iff no choice connective occurs anywhere, surface or not."""
    if isinstance(f, CHOICE):
        return False
    return all(is_elementary(c) for c in children(f))


def elementarize(f: Formula) -> Formula:
    """Replace each surface ?&-occurrence by T and ?|-occurrence by F.

    Models the position where nobody ever resolves a choice: an
    unresolved ?& is the owner's free win, an unresolved ?| a loss.
    """
    if isinstance(f, Cand):
        return TOP
    if isinstance(f, Cor):
        return BOT
    kids = children(f)
    if not kids:
        return f
    return with_children(f, tuple(elementarize(c) for c in kids))


Interpretation = Mapping[str, bool]


def evaluate(f: Formula, interpretation: Interpretation) -> bool:
    """Classical truth value of an elementary formula."""
    if isinstance(f, Atom):
        try:
            return bool(interpretation[f.name])
        except KeyError:
            raise EvaluationError(f"interpretation missing atom {f.name!r}") from None
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Neg):
        return not evaluate(f.child, interpretation)
    if isinstance(f, Impl):
        return (not evaluate(f.left, interpretation)) or evaluate(f.right, interpretation)
    if isinstance(f, And):
        return all(evaluate(c, interpretation) for c in f.children)
    if isinstance(f, Or):
        return any(evaluate(c, interpretation) for c in f.children)
    raise EvaluationError(f"cannot evaluate non-elementary formula {render(f)!r}")
