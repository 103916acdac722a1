"""Natural-deduction assistant for first-order logic with de Bruijn indices."""

from .kernel import (
    Goal,
    ProofNode,
    Rule,
    RuleArgs,
    applicable_rules,
    check,
    expand,
)
from .prover import Session, new_session
from .semantics import Interpretation, entails_up_to, eval_formula, valid_up_to
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
    iff,
    neg,
    truth,
)

__all__ = [
    "Con", "Dis", "Exi", "Falsity", "Formula", "Fun", "Goal", "Imp",
    "Interpretation", "Pre", "ProofNode", "Rule", "RuleArgs", "Session",
    "Term", "Uni", "Var", "applicable_rules", "check", "entails_up_to",
    "eval_formula", "expand", "iff", "neg", "new_session", "truth",
    "valid_up_to",
]

__version__ = "0.1.0"
