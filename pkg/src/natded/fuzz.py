"""Random generation of accepted proofs and the soundness stress harness.

Generation strategy (fixed so runs are reproducible given a seed):

* signature: predicates P/0, Q/0, R/1, S/2; witness terms are drawn from a
  pool built over the three constants a, b, c and the unary function f;
* fresh constants for Uni_I and Exi_E are k0, k1, ... numbered per proof,
  which never occur in generated formulas;
* proofs are grown backward from a random root goal (random formula over a
  random assumption list) with a depth cap of 6 and a per-proof expansion
  budget; subgoals close with Assume whenever possible, other moves are
  either directed by a matching assumption or introduction steps; attempts
  that fail to close are discarded.

Every surviving tree is re-validated by the kernel and then attacked with
the finite-model checker; a countermodel would disprove soundness.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from . import kernel
from .kernel import NO_ARGS, Goal, ProofNode, Rule, RuleArgs
from .semantics import Verdict, entails_up_to
from .subst import member, sub
from .syntax import Con, Dis, Exi, Falsity, Formula, Fun, Imp, Pre, Term, Uni, Var

WITNESS_CONSTANTS = ("a", "b", "c")
WITNESS_UNARY = "f"
PREDICATES = (("P", 0), ("Q", 0), ("R", 1), ("S", 2))

WITNESS_POOL: tuple[Term, ...] = tuple(
    [Fun(c, ()) for c in WITNESS_CONSTANTS]
    + [Fun(WITNESS_UNARY, (Fun(c, ()),)) for c in WITNESS_CONSTANTS]
)

DEPTH_CAP = 6
EXPANSION_BUDGET = 200


def random_term(rng: random.Random, depth: int = 2) -> Term:
    roll = rng.random()
    if depth > 0 and roll < 0.25:
        return Fun(WITNESS_UNARY, (random_term(rng, depth - 1),))
    if roll < 0.55:
        return Var(rng.randrange(3))
    return Fun(rng.choice(WITNESS_CONSTANTS), ())


def random_formula(rng: random.Random, depth: int = 3) -> Formula:
    if depth <= 0 or rng.random() < 0.35:
        if rng.random() < 0.08:
            return Falsity()
        name, arity = rng.choice(PREDICATES)
        return Pre(name, tuple(random_term(rng) for _ in range(arity)))
    kind = rng.randrange(6)
    if kind == 0:
        return Imp(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 1:
        return Dis(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 2:
        return Con(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 3:
        return Exi(random_formula(rng, depth - 1))
    if kind == 4:
        return Uni(random_formula(rng, depth - 1))
    return Imp(random_formula(rng, depth - 1), Falsity())


class _Budget:
    def __init__(self, limit: int):
        self.left = limit

    def spend(self) -> bool:
        self.left -= 1
        return self.left >= 0


class _FreshNames:
    def __init__(self):
        self.counter = 0

    def next(self) -> str:
        name = f"k{self.counter}"
        self.counter += 1
        return name


def candidate_moves(
    goal: Goal, rng: random.Random, fresh: Optional[_FreshNames] = None
) -> list[tuple[Rule, RuleArgs]]:
    """Plausible (rule, args) moves for a goal: assumption-directed eliminations,
    shape-directed introductions, and an occasional proof by contradiction."""
    if fresh is None:
        fresh = _FreshNames()
    f, a = goal.formula, goal.assumptions
    intro: list[tuple[Rule, RuleArgs]] = []
    if isinstance(f, Imp):
        intro.append((Rule.Imp_I, NO_ARGS))
    if isinstance(f, Con):
        intro.append((Rule.Con_I, NO_ARGS))
    if isinstance(f, Dis):
        intro.append((Rule.Dis_I1, NO_ARGS))
        intro.append((Rule.Dis_I2, NO_ARGS))
    if isinstance(f, Exi):
        intro.append((Rule.Exi_I, RuleArgs(p=f.body, t=rng.choice(WITNESS_POOL))))
    if isinstance(f, Uni):
        intro.append((Rule.Uni_I, RuleArgs(c=fresh.next())))

    directed: list[tuple[Rule, RuleArgs]] = []
    for h in a:
        if isinstance(h, Imp) and h.q == f:
            directed.append((Rule.Imp_E, RuleArgs(p=h.p)))
        if isinstance(h, Con):
            if h.p == f:
                directed.append((Rule.Con_E1, RuleArgs(q=h.q)))
            if h.q == f:
                directed.append((Rule.Con_E2, RuleArgs(p=h.p)))
        if isinstance(h, Dis):
            directed.append((Rule.Dis_E, RuleArgs(p=h.p, q=h.q)))
        if isinstance(h, Uni):
            for t in WITNESS_POOL:
                if sub(0, t, h.body) == f:
                    directed.append((Rule.Uni_E, RuleArgs(p=h.body, t=t)))
                    break
        if isinstance(h, Exi):
            directed.append((Rule.Exi_E, RuleArgs(p=h.body, c=fresh.next())))

    moves = directed + intro
    rng.shuffle(moves)
    if rng.random() < 0.15:
        moves.append((Rule.Boole, NO_ARGS))
    return moves


def _prove(
    goal: Goal, depth: int, rng: random.Random, fresh: _FreshNames, budget: _Budget
) -> Optional[ProofNode]:
    if not budget.spend():
        return None
    can_assume = member(goal.formula, goal.assumptions)
    if can_assume and (depth <= 0 or rng.random() < 0.85):
        return ProofNode(goal, Rule.Assume, NO_ARGS, ())
    if depth <= 0:
        return None
    for rule, args in candidate_moves(goal, rng, fresh):
        try:
            subgoals = kernel.expand(goal, rule, args)
        except kernel.KernelError:
            continue
        children = []
        for sub_goal in subgoals:
            child = _prove(sub_goal, depth - 1, rng, fresh, budget)
            if child is None:
                break
            children.append(child)
        else:
            return ProofNode(goal, rule, args, tuple(children))
    if can_assume:
        return ProofNode(goal, Rule.Assume, NO_ARGS, ())
    return None


def _root_goal(rng: random.Random) -> Goal:
    assumptions = tuple(
        random_formula(rng, 2) for _ in range(rng.randrange(4))
    )
    roll = rng.random()
    if assumptions and roll < 0.35:
        formula = rng.choice(assumptions)
    elif assumptions and roll < 0.55:
        h = rng.choice(assumptions)
        formula = rng.choice(
            [Dis(h, random_formula(rng, 2)), Dis(random_formula(rng, 2), h)]
        )
    elif assumptions and roll < 0.65 and len(assumptions) >= 2:
        formula = Con(rng.choice(assumptions), rng.choice(assumptions))
    elif roll < 0.8:
        h = random_formula(rng, 2)
        formula = Imp(h, h) if rng.random() < 0.5 else Imp(random_formula(rng, 2), Imp(h, h))
    else:
        formula = random_formula(rng, 3)
    return Goal(formula, assumptions)


def random_accepted_proof(rng: random.Random, max_depth: int = DEPTH_CAP) -> Optional[ProofNode]:
    """One attempt at a random kernel-accepted proof; None when it fizzles."""
    goal = _root_goal(rng)
    fresh = _FreshNames()
    tree = _prove(goal, max_depth, rng, fresh, _Budget(EXPANSION_BUDGET))
    if tree is None:
        return None
    report = kernel.check(tree)
    if not report.accepted:  # would be a generator bug, not a discardable miss
        raise AssertionError(f"generated tree rejected: {report}")
    return tree


@dataclass
class FuzzReport:
    requested: int
    generated: int = 0
    attempts: int = 0
    discarded: int = 0
    rule_counts: Counter = field(default_factory=Counter)
    countermodels: list[tuple[ProofNode, Verdict]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def sound(self) -> bool:
        return not self.countermodels

    def summary(self) -> str:
        # Deterministic given the seed; wall-clock time is reported separately.
        rules = ", ".join(f"{r}={n}" for r, n in sorted(self.rule_counts.items()))
        lines = [
            f"proofs generated: {self.generated}/{self.requested} "
            f"({self.attempts} attempts, {self.discarded} discarded)",
            f"rule applications: {rules}",
            f"countermodels: {len(self.countermodels)}",
        ]
        return "\n".join(lines)


def _count_rules(node: ProofNode, counts: Counter) -> None:
    counts[node.rule.value] += 1
    for child in node.children:
        _count_rules(child, counts)


def fuzz_soundness(
    count: int,
    max_size: int,
    seed: int,
    model_budget: int = 2000,
    max_depth: int = DEPTH_CAP,
) -> FuzzReport:
    """Generate ``count`` accepted proofs and model-check each conclusion.

    Returns a report whose ``sound`` flag is False iff some accepted proof
    admitted a countermodel (all assumptions true, conclusion false).
    """
    rng = random.Random(seed)
    report = FuzzReport(requested=count)
    start = time.perf_counter()
    while report.generated < count:
        report.attempts += 1
        tree = random_accepted_proof(rng, max_depth)
        if tree is None:
            report.discarded += 1
            continue
        report.generated += 1
        _count_rules(tree, report.rule_counts)
        verdict = entails_up_to(
            tree.goal.assumptions,
            tree.goal.formula,
            max_size,
            model_budget,
            seed=seed + report.generated,
        )
        if not verdict.valid:
            report.countermodels.append((tree, verdict))
    report.elapsed = time.perf_counter() - start
    return report
