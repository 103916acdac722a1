"""Bundled goals and proofs for loading into sessions and regression tests.

Every complete proof is stored as a transcript of backward rule applications
and replayed through a session, so the shipped trees are kernel-coherent by
construction.  Entries without a proof are exercises (or the blank goal) and
are not treated as established theorems.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .formats import FORMULA_EXTENSION, PROOF_EXTENSION, load_formula_file, load_proof_file
from .kernel import NO_ARGS, ProofNode, Rule, RuleArgs
from .prover import replay
from .syntax import Con, Dis, Exi, Falsity, Formula, Fun, Imp, Pre, Uni, Var, neg

Step = tuple[tuple[int, ...], Rule, RuleArgs]

_P = Pre("P", ())
_Q = Pre("Q", ())
_P0 = Pre("P", (Var(0),))
_Q0 = Pre("Q", (Var(0),))
_PQ = Imp(_P, _Q)
_CONJ = Con(_P0, _Q0)
_C = Fun("c", ())


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    goal: Formula
    proof: Optional[ProofNode]
    description: str

    @property
    def has_proof(self) -> bool:
        return self.proof is not None


# The classroom example: conjunction plus modus ponens under one discharge.
EXAMPLE_GOAL = Imp(Con(_P, _PQ), _Q)
EXAMPLE_TRANSCRIPT: tuple[Step, ...] = (
    ((), Rule.Imp_I, NO_ARGS),
    ((0,), Rule.Imp_E, RuleArgs(p=_P)),
    ((0, 0), Rule.Con_E2, RuleArgs(p=_P)),
    ((0, 1), Rule.Con_E1, RuleArgs(q=_PQ)),
)

# Peirce's law is classical: both detours go through Boole.
PIERCE_GOAL = Imp(Imp(_PQ, _P), _P)
PIERCE_TRANSCRIPT: tuple[Step, ...] = (
    ((), Rule.Imp_I, NO_ARGS),
    ((0,), Rule.Boole, NO_ARGS),
    ((0, 0), Rule.Imp_E, RuleArgs(p=_P)),
    ((0, 0, 1), Rule.Imp_E, RuleArgs(p=_PQ)),
    ((0, 0, 1, 1), Rule.Imp_I, NO_ARGS),
    ((0, 0, 1, 1, 0), Rule.Boole, NO_ARGS),
    ((0, 0, 1, 1, 0, 0), Rule.Imp_E, RuleArgs(p=_P)),
)

_EXCLUDED_MIDDLE_GOAL = Dis(_P, neg(_P))
_EXCLUDED_MIDDLE_TRANSCRIPT: tuple[Step, ...] = (
    ((), Rule.Boole, NO_ARGS),
    ((0,), Rule.Imp_E, RuleArgs(p=_EXCLUDED_MIDDLE_GOAL)),
    ((0, 1), Rule.Dis_I2, NO_ARGS),
    ((0, 1, 0), Rule.Imp_I, NO_ARGS),
    ((0, 1, 0, 0), Rule.Imp_E, RuleArgs(p=_EXCLUDED_MIDDLE_GOAL)),
    ((0, 1, 0, 0, 1), Rule.Dis_I1, NO_ARGS),
)

UNI_TO_EXI_GOAL = Imp(Uni(_P0), Exi(_P0))
UNI_TO_EXI_TRANSCRIPT: tuple[Step, ...] = (
    ((), Rule.Imp_I, NO_ARGS),
    ((0,), Rule.Exi_I, RuleArgs(p=_P0, t=Fun("a", ()))),
    ((0, 0), Rule.Uni_E, RuleArgs(p=_P0, t=Fun("a", ()))),
)

_CON_COMMUTE_TRANSCRIPT: tuple[Step, ...] = (
    ((), Rule.Imp_I, NO_ARGS),
    ((0,), Rule.Con_I, NO_ARGS),
    ((0, 0), Rule.Con_E2, RuleArgs(p=_P)),
    ((0, 1), Rule.Con_E1, RuleArgs(q=_Q)),
)

_DIS_COMMUTE_TRANSCRIPT: tuple[Step, ...] = (
    ((), Rule.Imp_I, NO_ARGS),
    ((0,), Rule.Dis_E, RuleArgs(p=_P, q=_Q)),
    ((0, 1), Rule.Dis_I2, NO_ARGS),
    ((0, 2), Rule.Dis_I1, NO_ARGS),
)

_EXI_CONJUNCT_TRANSCRIPT: tuple[Step, ...] = (
    ((), Rule.Imp_I, NO_ARGS),
    ((0,), Rule.Exi_E, RuleArgs(p=_CONJ, c="c")),
    ((0, 1), Rule.Exi_I, RuleArgs(p=_P0, t=_C)),
    ((0, 1, 0), Rule.Con_E1, RuleArgs(q=Pre("Q", (_C,)))),
)

_UNI_CONJUNCT_TRANSCRIPT: tuple[Step, ...] = (
    ((), Rule.Imp_I, NO_ARGS),
    ((0,), Rule.Uni_I, RuleArgs(c="c")),
    ((0, 0), Rule.Con_E1, RuleArgs(q=Pre("Q", (_C,)))),
    ((0, 0, 0), Rule.Uni_E, RuleArgs(p=_CONJ, t=_C)),
)

TRANSCRIPTS: dict[str, tuple[Formula, tuple[Step, ...]]] = {
    "huth_ryan_example": (EXAMPLE_GOAL, EXAMPLE_TRANSCRIPT),
    "pierce": (PIERCE_GOAL, PIERCE_TRANSCRIPT),
    "excluded_middle": (_EXCLUDED_MIDDLE_GOAL, _EXCLUDED_MIDDLE_TRANSCRIPT),
    "uni_to_exi": (UNI_TO_EXI_GOAL, UNI_TO_EXI_TRANSCRIPT),
    "con_commute": (Imp(Con(_P, _Q), Con(_Q, _P)), _CON_COMMUTE_TRANSCRIPT),
    "dis_commute": (Imp(Dis(_P, _Q), Dis(_Q, _P)), _DIS_COMMUTE_TRANSCRIPT),
    "exi_conjunct": (Imp(Exi(_CONJ), Exi(_P0)), _EXI_CONJUNCT_TRANSCRIPT),
    "uni_conjunct": (Imp(Uni(_CONJ), Uni(_P0)), _UNI_CONJUNCT_TRANSCRIPT),
    "truth_is_provable": (Imp(Falsity(), Falsity()), (((), Rule.Imp_I, NO_ARGS),)),
    "identity": (Imp(_P, _P), (((), Rule.Imp_I, NO_ARGS),)),
}

_DESCRIPTIONS = {
    "huth_ryan_example": "conjunction and modus ponens under a discharged assumption",
    "pierce": "Peirce's law; needs proof by contradiction twice",
    "excluded_middle": "law of excluded middle; classical",
    "uni_to_exi": "from a universal to an existential via a constant witness",
    "con_commute": "conjunction commutes",
    "dis_commute": "disjunction commutes, by case split",
    "exi_conjunct": "drop a conjunct under an existential; fresh-constant elimination",
    "uni_conjunct": "drop a conjunct under a universal; fresh-constant introduction",
    "truth_is_provable": "the empty-signature tautology",
    "identity": "implication from a formula to itself",
}


def build_proof(name: str) -> ProofNode:
    goal, steps = TRANSCRIPTS[name]
    return replay(goal, steps).export()


@functools.lru_cache(maxsize=1)
def corpus() -> tuple[CorpusEntry, ...]:
    entries = [
        CorpusEntry(name, goal, build_proof(name), _DESCRIPTIONS[name])
        for name, (goal, _) in TRANSCRIPTS.items()
    ]
    entries.append(
        CorpusEntry(
            "contraposition_exercise",
            Imp(_PQ, Imp(neg(_Q), neg(_P))),
            None,
            "left as an exercise",
        )
    )
    entries.append(CorpusEntry("blank", Falsity(), None, "empty starting point"))
    return tuple(entries)


def lookup(name: str) -> Optional[CorpusEntry]:
    for entry in corpus():
        if entry.name == name:
            return entry
    return None


def load_corpus_dir(path: Path | str) -> tuple[CorpusEntry, ...]:
    """Corpus entries from a directory of ``.fol`` goals and optional proofs.

    Each ``<name>.fol`` file contributes one entry; a sibling
    ``<name>.ndproof`` supplies its proof.
    """
    root = Path(path)
    entries = []
    for goal_file in sorted(root.glob(f"*{FORMULA_EXTENSION}")):
        name = goal_file.stem
        proof_file = root / f"{name}{PROOF_EXTENSION}"
        proof = load_proof_file(proof_file) if proof_file.exists() else None
        entries.append(CorpusEntry(name, load_formula_file(goal_file), proof, "from directory"))
    return tuple(entries)
