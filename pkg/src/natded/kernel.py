"""The trusted proof kernel: rule schemas of the ``OK`` judgment.

``expand`` is the single place rule semantics live.  Applied backward it
turns a goal into the rule's premises; ``check`` replays it forward over a
finished tree and accepts only when every node's children are exactly the
premises the rule produces.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .subst import member, news, sub
from .syntax import (
    Con,
    Dis,
    Exi,
    Falsity,
    Formula,
    Fun,
    Identifier,
    Imp,
    Term,
    Uni,
    check_identifier,
)


class KernelError(Exception):
    """Base for rule-application failures; ``code`` is the wire-format name."""

    code = "KernelError"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ShapeMismatch(KernelError):
    code = "ShapeMismatch"


class WitnessMismatch(KernelError):
    code = "WitnessMismatch"


class FreshnessViolation(KernelError):
    code = "FreshnessViolation"


class NotAnAssumption(KernelError):
    code = "NotAnAssumption"


@dataclass(frozen=True)
class Goal:
    """A formula together with the ordered assumption list it must follow from."""

    formula: Formula
    assumptions: tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "assumptions", tuple(self.assumptions))


class Rule(enum.Enum):
    Assume = "Assume"
    Boole = "Boole"
    Imp_E = "Imp_E"
    Imp_I = "Imp_I"
    Dis_E = "Dis_E"
    Dis_I1 = "Dis_I1"
    Dis_I2 = "Dis_I2"
    Con_E1 = "Con_E1"
    Con_E2 = "Con_E2"
    Con_I = "Con_I"
    Exi_E = "Exi_E"
    Exi_I = "Exi_I"
    Uni_E = "Uni_E"
    Uni_I = "Uni_I"

    def __str__(self) -> str:
        return self.value


# Witness fields each rule requires, beyond what its conclusion determines.
# p/q are formulas, t a term, c an identifier (used as a fresh constant).
RULE_ARG_FIELDS: dict[Rule, tuple[str, ...]] = {
    Rule.Assume: (),
    Rule.Boole: (),
    Rule.Imp_E: ("p",),
    Rule.Imp_I: (),
    Rule.Dis_E: ("p", "q"),
    Rule.Dis_I1: (),
    Rule.Dis_I2: (),
    Rule.Con_E1: ("q",),
    Rule.Con_E2: ("p",),
    Rule.Con_I: (),
    Rule.Exi_E: ("p", "c"),
    Rule.Exi_I: ("p", "t"),
    Rule.Uni_E: ("p", "t"),
    Rule.Uni_I: ("c",),
}

ARG_KINDS = {"p": "formula", "q": "formula", "t": "term", "c": "identifier"}

# Premise count per rule; Exi_E's freshness obligation is a checked side
# condition, not a subtree, so it contributes no child.
PREMISE_COUNT: dict[Rule, int] = {
    Rule.Assume: 0,
    Rule.Boole: 1,
    Rule.Imp_E: 2,
    Rule.Imp_I: 1,
    Rule.Dis_E: 3,
    Rule.Dis_I1: 1,
    Rule.Dis_I2: 1,
    Rule.Con_E1: 1,
    Rule.Con_E2: 1,
    Rule.Con_I: 2,
    Rule.Exi_E: 2,
    Rule.Exi_I: 1,
    Rule.Uni_E: 1,
    Rule.Uni_I: 1,
}


@dataclass(frozen=True)
class RuleArgs:
    p: Optional[Formula] = None
    q: Optional[Formula] = None
    t: Optional[Term] = None
    c: Optional[Identifier] = None

    def __post_init__(self):
        if self.c is not None:
            check_identifier(self.c)


NO_ARGS = RuleArgs()


def _require_args(rule: Rule, args: RuleArgs) -> None:
    wanted = RULE_ARG_FIELDS[rule]
    for name in ("p", "q", "t", "c"):
        have = getattr(args, name) is not None
        if have and name not in wanted:
            raise WitnessMismatch(f"{rule} takes no argument {name!r}")
        if not have and name in wanted:
            raise WitnessMismatch(f"{rule} requires argument {name!r}")


def expand(goal: Goal, rule: Rule, args: RuleArgs = NO_ARGS) -> list[Goal]:
    """Premises of ``rule`` read backward from ``goal``, in figure order.

    Raises ShapeMismatch when the conclusion pattern does not match,
    WitnessMismatch when supplied witnesses do not reproduce the goal,
    FreshnessViolation when a ``news`` side condition fails, and
    NotAnAssumption for Assume on a non-assumption.
    """
    _require_args(rule, args)
    f, a = goal.formula, goal.assumptions

    if rule is Rule.Assume:
        if not member(f, a):
            raise NotAnAssumption("goal formula is not among the assumptions")
        return []

    if rule is Rule.Boole:
        return [Goal(Falsity(), (Imp(f, Falsity()),) + a)]

    if rule is Rule.Imp_E:
        return [Goal(Imp(args.p, f), a), Goal(args.p, a)]

    if rule is Rule.Imp_I:
        if not isinstance(f, Imp):
            raise ShapeMismatch("Imp_I concludes an implication")
        return [Goal(f.q, (f.p,) + a)]

    if rule is Rule.Dis_E:
        return [
            Goal(Dis(args.p, args.q), a),
            Goal(f, (args.p,) + a),
            Goal(f, (args.q,) + a),
        ]

    if rule is Rule.Dis_I1:
        if not isinstance(f, Dis):
            raise ShapeMismatch("Dis_I1 concludes a disjunction")
        return [Goal(f.p, a)]

    if rule is Rule.Dis_I2:
        if not isinstance(f, Dis):
            raise ShapeMismatch("Dis_I2 concludes a disjunction")
        return [Goal(f.q, a)]

    if rule is Rule.Con_E1:
        return [Goal(Con(f, args.q), a)]

    if rule is Rule.Con_E2:
        return [Goal(Con(args.p, f), a)]

    if rule is Rule.Con_I:
        if not isinstance(f, Con):
            raise ShapeMismatch("Con_I concludes a conjunction")
        return [Goal(f.p, a), Goal(f.q, a)]

    if rule is Rule.Exi_E:
        if not news(args.c, (args.p, f) + a):
            raise FreshnessViolation(f"identifier {args.c!r} is not fresh")
        inst = sub(0, Fun(args.c, ()), args.p)
        return [Goal(Exi(args.p), a), Goal(f, (inst,) + a)]

    if rule is Rule.Exi_I:
        if not isinstance(f, Exi):
            raise ShapeMismatch("Exi_I concludes an existential")
        if f != Exi(args.p):
            raise WitnessMismatch("argument p does not match the quantified body")
        return [Goal(sub(0, args.t, args.p), a)]

    if rule is Rule.Uni_E:
        if f != sub(0, args.t, args.p):
            raise WitnessMismatch("goal is not sub 0 t p for the supplied p and t")
        return [Goal(Uni(args.p), a)]

    if rule is Rule.Uni_I:
        if not isinstance(f, Uni):
            raise ShapeMismatch("Uni_I concludes a universal")
        if not news(args.c, (f.body,) + a):
            raise FreshnessViolation(f"identifier {args.c!r} is not fresh")
        return [Goal(sub(0, Fun(args.c, ()), f.body), a)]

    raise ValueError(f"unknown rule: {rule!r}")


@dataclass(frozen=True)
class ProofNode:
    goal: Goal
    rule: Rule
    args: RuleArgs = NO_ARGS
    children: tuple["ProofNode", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class CheckReport:
    accepted: bool
    failure_path: Optional[tuple[int, ...]] = None
    failure_code: Optional[str] = None
    failure_message: Optional[str] = None

    def __bool__(self) -> bool:
        return self.accepted


ACCEPTED = CheckReport(True)


def _check_node(node: ProofNode, path: tuple[int, ...]) -> CheckReport:
    # Bottom-up: a defect inside a subtree is reported at its own node, not
    # at the ancestor whose premise list it no longer matches.
    for i, child in enumerate(node.children):
        report = _check_node(child, path + (i,))
        if not report.accepted:
            return report
    try:
        premises = expand(node.goal, node.rule, node.args)
    except KernelError as err:
        return CheckReport(False, path, err.code, err.message)
    actual = [child.goal for child in node.children]
    if premises != actual:
        return CheckReport(
            False,
            path,
            "PremiseMismatch",
            f"{node.rule} requires premises {len(premises)}, found children {len(actual)}"
            if len(premises) != len(actual)
            else f"children do not match the premises of {node.rule}",
        )
    return ACCEPTED


def check(root: ProofNode) -> CheckReport:
    """Validate a complete proof tree; failures are report values, never raises."""
    return _check_node(root, ())


def applicable_rules(goal: Goal) -> list[Rule]:
    """Rules whose conclusion pattern can match ``goal`` for some arguments.

    Assume appears only when the goal is an assumption.  Witness-taking
    elimination rules and Boole always appear; Uni_E always appears because
    any formula is an instance of some universal body.
    """
    f = goal.formula
    rules = []
    for rule in Rule:
        if rule is Rule.Assume:
            ok = member(f, goal.assumptions)
        elif rule is Rule.Imp_I:
            ok = isinstance(f, Imp)
        elif rule in (Rule.Dis_I1, Rule.Dis_I2):
            ok = isinstance(f, Dis)
        elif rule is Rule.Con_I:
            ok = isinstance(f, Con)
        elif rule is Rule.Exi_I:
            ok = isinstance(f, Exi)
        elif rule is Rule.Uni_I:
            ok = isinstance(f, Uni)
        else:
            ok = True
        if ok:
            rules.append(rule)
    return rules
