"""Abstract syntax of first-order terms and formulas with de Bruijn indices.

Variables carry no names: ``Var(0)`` refers to the nearest enclosing ``Exi``
or ``Uni`` binder, ``Var(1)`` to the next one out, and so on.  Indices that
exceed the number of enclosing binders are free.  Only the seven formula
constructors below exist; truth, negation and biimplication are macros that
expand at construction time and never appear in a syntax tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

Identifier = str


def check_identifier(name: str) -> str:
    """Reject identifiers that cannot survive quoting in the text format."""
    if not isinstance(name, str) or not name:
        raise ValueError("identifier must be a nonempty string")
    for ch in name:
        if ch == '"' or ord(ch) < 0x20 or ord(ch) == 0x7F:
            raise ValueError(f"identifier contains forbidden character: {ch!r}")
    return name


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("de Bruijn index must be a natural number")


@dataclass(frozen=True)
class Fun:
    id: Identifier
    args: tuple["Term", ...] = ()

    def __post_init__(self):
        check_identifier(self.id)
        object.__setattr__(self, "args", tuple(self.args))


Term = Union[Var, Fun]


@dataclass(frozen=True)
class Falsity:
    pass


@dataclass(frozen=True)
class Pre:
    id: Identifier
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        check_identifier(self.id)
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Imp:
    p: "Formula"
    q: "Formula"


@dataclass(frozen=True)
class Dis:
    p: "Formula"
    q: "Formula"


@dataclass(frozen=True)
class Con:
    p: "Formula"
    q: "Formula"


@dataclass(frozen=True)
class Exi:
    body: "Formula"


@dataclass(frozen=True)
class Uni:
    body: "Formula"


Formula = Union[Falsity, Pre, Imp, Dis, Con, Exi, Uni]

FALSITY = Falsity()


def truth() -> Formula:
    """The provable formula with no symbols: an implication from absurdity to itself."""
    return Imp(FALSITY, FALSITY)


def neg(p: Formula) -> Formula:
    return Imp(p, FALSITY)


def iff(p: Formula, q: Formula) -> Formula:
    return Con(Imp(p, q), Imp(q, p))


def _max_free_term(t: Term, depth: int) -> Optional[int]:
    match t:
        case Var(v):
            return v - depth if v >= depth else None
        case Fun(_, args):
            return _max_free_list(args, depth)
    raise TypeError(f"not a term: {t!r}")


def _max_free_list(ts: Iterable[Term], depth: int) -> Optional[int]:
    best: Optional[int] = None
    for t in ts:
        m = _max_free_term(t, depth)
        if m is not None and (best is None or m > best):
            best = m
    return best


def _max_free(p: Formula, depth: int) -> Optional[int]:
    match p:
        case Falsity():
            return None
        case Pre(_, args):
            return _max_free_list(args, depth)
        case Imp(a, b) | Dis(a, b) | Con(a, b):
            l, r = _max_free(a, depth), _max_free(b, depth)
            if l is None:
                return r
            if r is None:
                return l
            return max(l, r)
        case Exi(body) | Uni(body):
            return _max_free(body, depth + 1)
    raise TypeError(f"not a formula: {p!r}")


def max_var_index(p: Formula) -> Optional[int]:
    """Largest free de Bruijn index in ``p``, or None when ``p`` is closed.

    An index under k binders counts as free only when it is >= k and is then
    reported as index - k (its value as seen from outside the formula).
    """
    return _max_free(p, 0)


def max_var_index_term(t: Term) -> Optional[int]:
    """Largest variable index in a term (terms have no binders)."""
    return _max_free_term(t, 0)
