"""Finite-model semantics and bounded validity checking.

An interpretation fixes a universe {0..size-1}, an environment for the free
variable indices (finite prefix plus a default element), and total tables
for every function and predicate symbol.  Tables are stored flattened in
row-major argument order, so enumerating them lexicographically is just
``itertools.product`` over outputs.

Validity up to a bound is a falsification search, never a proof: the verdict
says "no countermodel among the interpretations examined", exhaustively when
they all fit in the budget and by seeded sampling otherwise.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .syntax import (
    Con,
    Dis,
    Exi,
    Falsity,
    Formula,
    Fun,
    Imp,
    Pre,
    Term,
    Uni,
    Var,
    max_var_index,
)

SymbolKey = tuple[str, int]  # (identifier, arity)


class UnknownSymbol(Exception):
    code = "UnknownSymbol"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class BudgetZero(Exception):
    code = "BudgetZero"


@dataclass
class Interpretation:
    universe_size: int
    env: tuple[int, ...] = ()
    env_default: int = 0
    funcs: dict[SymbolKey, tuple[int, ...]] = field(default_factory=dict)
    preds: dict[SymbolKey, tuple[bool, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.universe_size < 1:
            raise ValueError("universe must be nonempty")
        self.env = tuple(self.env)


def _table_index(args: Sequence[int], size: int) -> int:
    idx = 0
    for a in args:
        idx = idx * size + a
    return idx


def _eval_term(m: Interpretation, env: tuple[int, ...], t: Term) -> int:
    match t:
        case Var(v):
            return env[v] if v < len(env) else m.env_default
        case Fun(i, args):
            key = (i, len(args))
            table = m.funcs.get(key)
            if table is None:
                raise UnknownSymbol(f"no table for function {i!r}/{len(args)}")
            vals = [_eval_term(m, env, a) for a in args]
            return table[_table_index(vals, m.universe_size)]
    raise TypeError(f"not a term: {t!r}")


def _eval(m: Interpretation, env: tuple[int, ...], p: Formula) -> bool:
    match p:
        case Falsity():
            return False
        case Pre(i, args):
            key = (i, len(args))
            table = m.preds.get(key)
            if table is None:
                raise UnknownSymbol(f"no table for predicate {i!r}/{len(args)}")
            vals = [_eval_term(m, env, a) for a in args]
            return table[_table_index(vals, m.universe_size)]
        case Imp(a, b):
            return _eval(m, env, b) if _eval(m, env, a) else True
        case Dis(a, b):
            return True if _eval(m, env, a) else _eval(m, env, b)
        case Con(a, b):
            return _eval(m, env, b) if _eval(m, env, a) else False
        case Exi(body):
            return any(
                _eval(m, (x,) + env, body) for x in range(m.universe_size)
            )
        case Uni(body):
            return all(
                _eval(m, (x,) + env, body) for x in range(m.universe_size)
            )
    raise TypeError(f"not a formula: {p!r}")


def eval_term(m: Interpretation, t: Term) -> int:
    return _eval_term(m, m.env, t)


def eval_list(m: Interpretation, ts: Sequence[Term]) -> list[int]:
    return [_eval_term(m, m.env, t) for t in ts]


def eval_formula(m: Interpretation, p: Formula) -> bool:
    return _eval(m, m.env, p)


def shift_env(m: Interpretation, value: int) -> Interpretation:
    """The interpretation whose environment is ``m``'s with ``value`` prepended."""
    return Interpretation(
        m.universe_size, (value,) + m.env, m.env_default, m.funcs, m.preds
    )


def signature(formulas: Iterable[Formula]) -> tuple[set[SymbolKey], set[SymbolKey]]:
    """Function and predicate symbols, keyed by (identifier, arity)."""
    funcs: set[SymbolKey] = set()
    preds: set[SymbolKey] = set()

    def walk_term(t: Term) -> None:
        if isinstance(t, Fun):
            funcs.add((t.id, len(t.args)))
            for a in t.args:
                walk_term(a)

    def walk(p: Formula) -> None:
        match p:
            case Falsity():
                pass
            case Pre(i, args):
                preds.add((i, len(args)))
                for a in args:
                    walk_term(a)
            case Imp(a, b) | Dis(a, b) | Con(a, b):
                walk(a)
                walk(b)
            case Exi(body) | Uni(body):
                walk(body)

    for p in formulas:
        walk(p)
    return funcs, preds


@dataclass(frozen=True)
class Verdict:
    valid: bool
    bound: int
    exhaustive: bool
    seed: int
    checked: int
    countermodel: Optional[Interpretation] = None


def _free_prefix_length(formulas: Sequence[Formula]) -> int:
    best = -1
    for p in formulas:
        m = max_var_index(p)
        if m is not None and m > best:
            best = m
    return best + 1


def _count_for_size(size: int, nfree: int, funcs: list[SymbolKey], preds: list[SymbolKey]) -> int:
    count = size**nfree
    for _, arity in funcs:
        count *= size ** (size**arity)
    for _, arity in preds:
        count *= 2 ** (size**arity)
    return count


def _enumerate_size(
    size: int, nfree: int, funcs: list[SymbolKey], preds: list[SymbolKey]
) -> Iterator[Interpretation]:
    # Lexicographic order: environment first, then function tables, then
    # predicate tables, each symbol's table flattened row-major.
    env_choices = itertools.product(range(size), repeat=nfree)
    func_choices = [
        itertools.product(range(size), repeat=size**arity) for _, arity in funcs
    ]
    pred_choices = [
        itertools.product((False, True), repeat=size**arity) for _, arity in preds
    ]
    for combo in itertools.product(env_choices, *func_choices, *pred_choices):
        env = combo[0]
        ftables = combo[1 : 1 + len(funcs)]
        ptables = combo[1 + len(funcs) :]
        yield Interpretation(
            size,
            env,
            0,
            {key: table for key, table in zip(funcs, ftables)},
            {key: table for key, table in zip(preds, ptables)},
        )


def _corner_interpretations(
    size: int, nfree: int, funcs: list[SymbolKey], preds: list[SymbolKey]
) -> Iterator[Interpretation]:
    # Low corner: everything collapses to element 0, predicates all false.
    yield Interpretation(
        size,
        (0,) * nfree,
        0,
        {(i, k): (0,) * (size**k) for i, k in funcs},
        {(i, k): (False,) * (size**k) for i, k in preds},
    )
    # High corner: predicates all true, functions return their first argument
    # (the top element for constants), environment at the top element.
    high_funcs = {}
    for i, k in funcs:
        if k == 0:
            high_funcs[(i, k)] = (size - 1,)
        else:
            high_funcs[(i, k)] = tuple(
                args[0] for args in itertools.product(range(size), repeat=k)
            )
    yield Interpretation(
        size,
        (size - 1,) * nfree,
        size - 1,
        high_funcs,
        {(i, k): (True,) * (size**k) for i, k in preds},
    )


def _random_interpretation(
    rng: random.Random, size: int, nfree: int, funcs: list[SymbolKey], preds: list[SymbolKey]
) -> Interpretation:
    return Interpretation(
        size,
        tuple(rng.randrange(size) for _ in range(nfree)),
        rng.randrange(size),
        {
            (i, k): tuple(rng.randrange(size) for _ in range(size**k))
            for i, k in funcs
        },
        {
            (i, k): tuple(rng.random() < 0.5 for _ in range(size**k))
            for i, k in preds
        },
    )


def entails_up_to(
    assumptions: Sequence[Formula],
    conclusion: Formula,
    max_size: int,
    budget: int,
    seed: int = 0,
) -> Verdict:
    """Search universe sizes 1..max_size for an interpretation satisfying all
    assumptions and falsifying the conclusion.

    Exhaustive when the full space fits in ``budget``; otherwise the two
    corner interpretations per size plus ``budget`` seeded random samples.
    The first countermodel in enumeration order is reported.
    """
    if budget < 1:
        raise BudgetZero("interpretation budget must be positive")
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    formulas = list(assumptions) + [conclusion]
    funcset, predset = signature(formulas)
    funcs = sorted(funcset)
    preds = sorted(predset)
    nfree = _free_prefix_length(formulas)

    def falsifies(m: Interpretation) -> bool:
        return all(eval_formula(m, a) for a in assumptions) and not eval_formula(
            m, conclusion
        )

    total = sum(
        _count_for_size(size, nfree, funcs, preds)
        for size in range(1, max_size + 1)
    )
    checked = 0
    if total <= budget:
        for size in range(1, max_size + 1):
            for m in _enumerate_size(size, nfree, funcs, preds):
                checked += 1
                if falsifies(m):
                    return Verdict(False, max_size, True, seed, checked, m)
        return Verdict(True, max_size, True, seed, checked)

    rng = random.Random(seed)
    for size in range(1, max_size + 1):
        for m in _corner_interpretations(size, nfree, funcs, preds):
            checked += 1
            if falsifies(m):
                return Verdict(False, max_size, False, seed, checked, m)
    for _ in range(budget):
        size = rng.randint(1, max_size)
        m = _random_interpretation(rng, size, nfree, funcs, preds)
        checked += 1
        if falsifies(m):
            return Verdict(False, max_size, False, seed, checked, m)
    return Verdict(True, max_size, False, seed, checked)


def valid_up_to(p: Formula, max_size: int, budget: int, seed: int = 0) -> Verdict:
    """Bounded validity of a single formula: ``entails_up_to`` with no assumptions."""
    return entails_up_to((), p, max_size, budget, seed)
