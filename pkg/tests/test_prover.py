import random

import pytest

from natded.corpus import EXAMPLE_GOAL, EXAMPLE_TRANSCRIPT, build_proof
from natded.fuzz import candidate_moves
from natded.kernel import NO_ARGS, Goal, Rule, RuleArgs, ShapeMismatch, check
from natded.prover import (
    Node,
    NotOpen,
    NothingToRedo,
    NothingToUndo,
    ProofIncomplete,
    new_session,
    replay,
)
from natded.subst import member
from natded.syntax import Con, Dis, Falsity, Imp, Pre, truth
P = Pre("P", ())
Q = Pre("Q", ())
C = Con(P, Imp(P, Q))


class TestNewSession:
    def test_smallest_start(self):
        s = new_session(Falsity())
        assert s.current == Node(Goal(Falsity(), ()))
        assert s.open_goal_paths() == [()]

    def test_example_goal(self):
        s = new_session(EXAMPLE_GOAL)
        assert s.current.goal == Goal(EXAMPLE_GOAL, ())
        assert s.current.is_open

    def test_truth_stays_open_at_start(self):
        s = new_session(truth())
        assert s.current.goal.formula == Imp(Falsity(), Falsity())
        assert s.current.is_open


class TestApply:
    def test_example_first_step(self):
        s = new_session(EXAMPLE_GOAL)
        s.apply((), Rule.Imp_I)
        assert s.open_goal_paths() == [(0,)]
        assert s.current.children[0].goal == Goal(Q, (C,))

    def test_auto_assume_on_new_subgoals(self):
        s = new_session(EXAMPLE_GOAL)
        s.apply((), Rule.Imp_I)
        s.apply((0,), Rule.Imp_E, RuleArgs(p=P))
        s.apply((0, 0), Rule.Con_E2, RuleArgs(p=P))
        # The Con_E2 premise is the assumption itself: closed without a step.
        closed = s.current.children[0].children[0].children[0]
        assert closed.rule is Rule.Assume
        assert closed.goal == Goal(C, (C,))

    def test_failed_apply_leaves_session_unchanged(self):
        s = new_session(Falsity())
        before = s.current
        with pytest.raises(ShapeMismatch):
            s.apply((), Rule.Imp_I)
        assert s.current == before
        assert len(s.history) == 1

    def test_not_open_for_closed_node(self):
        s = new_session(Imp(P, P))
        s.apply((), Rule.Imp_I)
        with pytest.raises(NotOpen):
            s.apply((0,), Rule.Assume)

    def test_not_open_for_bad_path(self):
        s = new_session(Falsity())
        with pytest.raises(NotOpen):
            s.apply((3,), Rule.Boole)

    def test_auto_assume_never_fires_without_membership(self):
        s = new_session(EXAMPLE_GOAL)
        s.apply((), Rule.Imp_I)
        for path in s.open_goal_paths():
            node = s.current
            for i in path:
                node = node.children[i]
            assert not member(node.goal.formula, node.goal.assumptions)


class TestUndoRedo:
    def test_undo_restores_initial_state(self):
        s = new_session(EXAMPLE_GOAL)
        initial = s.current
        s.apply((), Rule.Imp_I)
        s.undo()
        assert s.current == initial

    def test_redo_round_trip(self):
        s = new_session(EXAMPLE_GOAL)
        s.apply((), Rule.Imp_I)
        after = s.current
        s.undo()
        s.redo()
        assert s.current == after

    def test_errors_at_the_ends(self):
        s = new_session(Falsity())
        with pytest.raises(NothingToUndo):
            s.undo()
        s.apply((), Rule.Boole)
        with pytest.raises(NothingToRedo):
            s.redo()

    def test_new_edit_truncates_redo_tail(self):
        s = new_session(Imp(P, Dis(P, Q)))
        s.apply((), Rule.Imp_I)
        s.apply((0,), Rule.Dis_I1)
        s.undo()
        s.apply((0,), Rule.Dis_I1)
        assert not s.can_redo
        assert len(s.history) == 3

    def test_hundred_applies_then_hundred_undos(self):
        rng = random.Random(5)
        s = new_session(Imp(P, P))
        initial = s.current
        applied = 0
        while applied < 100:
            paths = s.open_goal_paths()
            if not paths:
                break
            path = rng.choice(paths)
            node = s.current
            for i in path:
                node = node.children[i]
            moves = candidate_moves(node.goal, rng) + [(Rule.Boole, NO_ARGS)]
            rule, args = rng.choice(moves)
            try:
                s.apply(path, rule, args)
            except Exception:
                continue
            applied += 1
        for _ in range(applied):
            s.undo()
        assert s.current == initial
        assert not s.can_undo


class TestExport:
    def test_finished_example_session(self):
        session = replay(EXAMPLE_GOAL, EXAMPLE_TRANSCRIPT)
        proof = session.export()
        assert proof == build_proof("huth_ryan_example")
        assert check(proof).accepted

    def test_fresh_session_incomplete(self):
        s = new_session(Falsity())
        with pytest.raises(ProofIncomplete) as err:
            s.export()
        assert err.value.open_paths == [[]]

    def test_single_assume_subproof(self):
        s = new_session(Imp(P, P))
        s.apply((), Rule.Imp_I)
        proof = s.export()
        assert proof.children[0].rule is Rule.Assume
        assert proof.children[0].children == ()

    def test_history_length_tracks_applies(self):
        s = new_session(Imp(P, Imp(Q, P)))
        s.apply((), Rule.Imp_I)
        s.apply((0,), Rule.Imp_I)
        assert len(s.history) == 3
        assert s.cursor == 2
