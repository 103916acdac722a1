"""List membership, identifier freshness, index shifting and substitution.

These are the auxiliary primitive recursions the inference rules depend on.
All of them are total; there is no occurs-check and no capture error.
"""

from __future__ import annotations

from typing import Sequence

from .syntax import Con, Dis, Exi, Falsity, Formula, Fun, Identifier, Imp, Pre, Term, Uni, Var


def member(p: Formula, a: Sequence[Formula]) -> bool:
    """True iff ``p`` is structurally equal to some element of ``a``."""
    return any(p == q for q in a)


def new_term(c: Identifier, t: Term) -> bool:
    """True iff ``c`` occurs nowhere as a function symbol in ``t``.

    Variables never block freshness; only function symbols are inspected.
    """
    match t:
        case Var(_):
            return True
        case Fun(i, args):
            return False if i == c else new_list(c, args)
    raise TypeError(f"not a term: {t!r}")


def new_list(c: Identifier, ts: Sequence[Term]) -> bool:
    return all(new_term(c, t) for t in ts)


def new(c: Identifier, p: Formula) -> bool:
    """True iff ``c`` occurs in no term of ``p``.

    Predicate symbols are not terms, so ``new("P", Pre("P", ()))`` holds:
    freshness tracks the function-symbol namespace only.
    """
    match p:
        case Falsity():
            return True
        case Pre(_, args):
            return new_list(c, args)
        case Imp(a, b) | Dis(a, b) | Con(a, b):
            return new(c, a) and new(c, b)
        case Exi(body) | Uni(body):
            return new(c, body)
    raise TypeError(f"not a formula: {p!r}")


def news(c: Identifier, a: Sequence[Formula]) -> bool:
    """``new`` lifted over a list of formulas; vacuously true on []."""
    return all(new(c, p) for p in a)


def inc_term(t: Term) -> Term:
    """Every variable index incremented by one; structure otherwise unchanged."""
    match t:
        case Var(v):
            return Var(v + 1)
        case Fun(i, args):
            return Fun(i, inc_list(args))
    raise TypeError(f"not a term: {t!r}")


def inc_list(ts: Sequence[Term]) -> tuple[Term, ...]:
    return tuple(inc_term(t) for t in ts)


def sub_term(n: int, s: Term, t: Term) -> Term:
    match t:
        case Var(v):
            if v == n:
                return s
            if v > n:
                return Var(v - 1)
            return t
        case Fun(i, args):
            return Fun(i, sub_list(n, s, args))
    raise TypeError(f"not a term: {t!r}")


def sub_list(n: int, s: Term, ts: Sequence[Term]) -> tuple[Term, ...]:
    return tuple(sub_term(n, s, t) for t in ts)


def sub(n: int, s: Term, p: Formula) -> Formula:
    """Substitute ``s`` for index ``n`` in ``p`` and unbind that index.

    Warning: this is a simultaneous substitute-and-unbind.  Indices above
    ``n`` are decremented, so the operation is meant for instantiating the
    outermost binder (as in the quantifier rules), not for general rewriting
    under intact binders.  Under each quantifier the target index grows by
    one and the substituted term is shifted with ``inc_term``.
    """
    match p:
        case Falsity():
            return p
        case Pre(i, args):
            return Pre(i, sub_list(n, s, args))
        case Imp(a, b):
            return Imp(sub(n, s, a), sub(n, s, b))
        case Dis(a, b):
            return Dis(sub(n, s, a), sub(n, s, b))
        case Con(a, b):
            return Con(sub(n, s, a), sub(n, s, b))
        case Exi(body):
            return Exi(sub(n + 1, inc_term(s), body))
        case Uni(body):
            return Uni(sub(n + 1, inc_term(s), body))
    raise TypeError(f"not a formula: {p!r}")
