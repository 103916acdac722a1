"""Independent reference implementations used as test oracles.

Direct recursive transliterations of the defining equations, one clause per
line, kept deliberately separate in style and structure from the package
implementations they are checked against.  Do not import package helpers
here beyond the shared AST constructors.
"""

from natded.syntax import Con, Dis, Exi, Falsity, Fun, Imp, Pre, Uni, Var


def member(p, a):
    if len(a) == 0:
        return False
    q = a[0]
    if p == q:
        return True
    return member(p, a[1:])


def new_term(c, t):
    if isinstance(t, Var):
        return True
    if t.id == c:
        return False
    return new_list(c, t.args)


def new_list(c, l):
    if len(l) == 0:
        return True
    if new_term(c, l[0]):
        return new_list(c, l[1:])
    return False


def new(c, p):
    if isinstance(p, Falsity):
        return True
    if isinstance(p, Pre):
        return new_list(c, p.args)
    if isinstance(p, Imp):
        return new(c, p.q) if new(c, p.p) else False
    if isinstance(p, Dis):
        return new(c, p.q) if new(c, p.p) else False
    if isinstance(p, Con):
        return new(c, p.q) if new(c, p.p) else False
    if isinstance(p, Exi):
        return new(c, p.body)
    if isinstance(p, Uni):
        return new(c, p.body)
    raise TypeError(p)


def news(c, a):
    if len(a) == 0:
        return True
    if new(c, a[0]):
        return news(c, a[1:])
    return False


def inc_term(t):
    if isinstance(t, Var):
        return Var(t.index + 1)
    return Fun(t.id, inc_list(t.args))


def inc_list(l):
    if len(l) == 0:
        return ()
    return (inc_term(l[0]),) + inc_list(l[1:])


def sub_term(n, s, t):
    if isinstance(t, Var):
        v = t.index
        if v == n:
            return s
        if v > n:
            return Var(v - 1)
        return Var(v)
    return Fun(t.id, sub_list(n, s, t.args))


def sub_list(n, s, l):
    if len(l) == 0:
        return ()
    return (sub_term(n, s, l[0]),) + sub_list(n, s, l[1:])


def sub(n, s, p):
    if isinstance(p, Falsity):
        return Falsity()
    if isinstance(p, Pre):
        return Pre(p.id, sub_list(n, s, p.args))
    if isinstance(p, Imp):
        return Imp(sub(n, s, p.p), sub(n, s, p.q))
    if isinstance(p, Dis):
        return Dis(sub(n, s, p.p), sub(n, s, p.q))
    if isinstance(p, Con):
        return Con(sub(n, s, p.p), sub(n, s, p.q))
    if isinstance(p, Exi):
        return Exi(sub(n + 1, inc_term(s), p.body))
    if isinstance(p, Uni):
        return Uni(sub(n + 1, inc_term(s), p.body))
    raise TypeError(p)
