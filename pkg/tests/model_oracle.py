"""Independent finite-model evaluator and enumerator for cross-checks.

Environments and symbol tables are plain callables over dicts, nothing is
shared with the package's table-based representation.  Enumeration covers
every raw variable index occurring in the formulas (a superset of the free
ones), so quantifying over these interpretations is sound for "true in all
interpretations up to size n" style oracles.
"""

import itertools

from natded.syntax import Con, Dis, Exi, Falsity, Imp, Pre, Uni, Var


def eval_term(e, f, t):
    if isinstance(t, Var):
        return e(t.index)
    return f(t.id, tuple(eval_term(e, f, a) for a in t.args))


def eval_formula(size, e, f, g, p):
    if isinstance(p, Falsity):
        return False
    if isinstance(p, Pre):
        return g(p.id, tuple(eval_term(e, f, a) for a in p.args))
    if isinstance(p, Imp):
        return (not eval_formula(size, e, f, g, p.p)) or eval_formula(size, e, f, g, p.q)
    if isinstance(p, Dis):
        return eval_formula(size, e, f, g, p.p) or eval_formula(size, e, f, g, p.q)
    if isinstance(p, Con):
        return eval_formula(size, e, f, g, p.p) and eval_formula(size, e, f, g, p.q)
    shifted = lambda x: (lambda n: x if n == 0 else e(n - 1))  # noqa: E731
    if isinstance(p, Exi):
        return any(eval_formula(size, shifted(x), f, g, p.body) for x in range(size))
    if isinstance(p, Uni):
        return all(eval_formula(size, shifted(x), f, g, p.body) for x in range(size))
    raise TypeError(p)


def _symbols(formulas):
    funcs, preds, max_index = set(), set(), -1

    def walk_term(t):
        nonlocal max_index
        if isinstance(t, Var):
            max_index = max(max_index, t.index)
        else:
            funcs.add((t.id, len(t.args)))
            for a in t.args:
                walk_term(a)

    def walk(p):
        if isinstance(p, Pre):
            preds.add((p.id, len(p.args)))
            for a in p.args:
                walk_term(a)
        elif isinstance(p, (Imp, Dis, Con)):
            walk(p.p)
            walk(p.q)
        elif isinstance(p, (Exi, Uni)):
            walk(p.body)

    for p in formulas:
        walk(p)
    return funcs, preds, max_index


def interpretations(formulas, size):
    """Yield (e, f, g) triples covering all tables and environments."""
    funcs, preds, max_index = _symbols(formulas)
    funcs, preds = sorted(funcs), sorted(preds)
    arg_space = {
        key: list(itertools.product(range(size), repeat=key[1]))
        for key in funcs + preds
    }
    func_tables = [
        [dict(zip(arg_space[key], outs))
         for outs in itertools.product(range(size), repeat=len(arg_space[key]))]
        for key in funcs
    ]
    pred_tables = [
        [dict(zip(arg_space[key], outs))
         for outs in itertools.product((False, True), repeat=len(arg_space[key]))]
        for key in preds
    ]
    envs = itertools.product(range(size), repeat=max_index + 1)
    for combo in itertools.product(envs, *func_tables, *pred_tables):
        env = combo[0]
        fdicts = dict(zip(funcs, combo[1 : 1 + len(funcs)]))
        pdicts = dict(zip(preds, combo[1 + len(funcs) :]))

        def e(n, _env=env):
            return _env[n] if n < len(_env) else 0

        def f(name, vals, _fd=fdicts):
            return _fd[(name, len(vals))][tuple(vals)]

        def g(name, vals, _pd=pdicts):
            return _pd[(name, len(vals))][tuple(vals)]

        yield e, f, g


def count_interpretations(formulas, size):
    funcs, preds, max_index = _symbols(formulas)
    total = size ** (max_index + 1)
    for _, arity in funcs:
        total *= size ** (size**arity)
    for _, arity in preds:
        total *= 2 ** (size**arity)
    return total


def holds_everywhere(p, max_size):
    """True iff ``p`` evaluates true under every interpretation up to the bound."""
    for size in range(1, max_size + 1):
        for e, f, g in interpretations([p], size):
            if not eval_formula(size, e, f, g, p):
                return False
    return True


def fails_everywhere(p, max_size):
    for size in range(1, max_size + 1):
        for e, f, g in interpretations([p], size):
            if eval_formula(size, e, f, g, p):
                return False
    return True
