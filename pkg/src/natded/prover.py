"""Backward-chaining proof sessions with automatic Assume and unlimited undo.

A session holds a linear history of immutable tree snapshots and a cursor.
Applying a rule at an open goal appends a snapshot (discarding any redo
tail); undo and redo only move the cursor.  Whenever a rule application
creates a subgoal whose formula already sits in its assumption list, the
subgoal closes immediately with Assume.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass
from typing import Optional, Sequence

from . import kernel
from .kernel import NO_ARGS, Goal, ProofNode, Rule, RuleArgs
from .subst import member
from .syntax import Formula


class SessionError(Exception):
    code = "SessionError"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class NotOpen(SessionError):
    code = "NotOpen"


class NothingToUndo(SessionError):
    code = "NothingToUndo"


class NothingToRedo(SessionError):
    code = "NothingToRedo"


class ProofIncomplete(SessionError):
    code = "ProofIncomplete"

    def __init__(self, open_paths: Sequence[tuple[int, ...]]):
        super().__init__(f"{len(open_paths)} goal(s) still open")
        self.open_paths = [list(p) for p in open_paths]


@dataclass(frozen=True)
class Node:
    """A proof-tree node; open while ``rule`` is None."""

    goal: Goal
    rule: Optional[Rule] = None
    args: Optional[RuleArgs] = None
    children: tuple["Node", ...] = ()

    @property
    def is_open(self) -> bool:
        return self.rule is None


def open_paths(node: Node, prefix: tuple[int, ...] = ()) -> list[tuple[int, ...]]:
    """Paths of all open goals, in depth-first premise order."""
    if node.is_open:
        return [prefix]
    found = []
    for i, child in enumerate(node.children):
        found.extend(open_paths(child, prefix + (i,)))
    return found


def node_at(root: Node, path: Sequence[int]) -> Node:
    node = root
    for i in path:
        if not 0 <= i < len(node.children):
            raise NotOpen(f"no node at path {list(path)}")
        node = node.children[i]
    return node


def _replace(root: Node, path: Sequence[int], new_node: Node) -> Node:
    if not path:
        return new_node
    head, rest = path[0], path[1:]
    children = list(root.children)
    children[head] = _replace(children[head], rest, new_node)
    return Node(root.goal, root.rule, root.args, tuple(children))


def _close(goal: Goal, rule: Rule, args: RuleArgs) -> Node:
    subgoals = kernel.expand(goal, rule, args)
    children = []
    for sub in subgoals:
        if member(sub.formula, sub.assumptions):
            children.append(Node(sub, Rule.Assume, NO_ARGS, ()))
        else:
            children.append(Node(sub))
    return Node(goal, rule, args, tuple(children))


def _to_proof(node: Node) -> ProofNode:
    return ProofNode(node.goal, node.rule, node.args, tuple(_to_proof(c) for c in node.children))


class Session:
    """Single-writer proof editor; snapshots are immutable and shareable."""

    def __init__(self, goal_formula: Formula, session_id: Optional[str] = None):
        self.id = session_id if session_id is not None else secrets.token_urlsafe(16)
        self.history: list[Node] = [Node(Goal(goal_formula, ()))]
        self.cursor = 0

    @property
    def current(self) -> Node:
        return self.history[self.cursor]

    @property
    def can_undo(self) -> bool:
        return self.cursor > 0

    @property
    def can_redo(self) -> bool:
        return self.cursor < len(self.history) - 1

    @property
    def is_finished(self) -> bool:
        return not open_paths(self.current)

    def open_goal_paths(self) -> list[tuple[int, ...]]:
        return open_paths(self.current)

    def apply(self, path: Sequence[int], rule: Rule, args: RuleArgs = NO_ARGS) -> Node:
        """Close the open goal at ``path`` with ``rule``; returns the new snapshot.

        Raises NotOpen for a bad path and lets kernel errors propagate; the
        session is unchanged unless the application succeeds.
        """
        target = node_at(self.current, path)
        if not target.is_open:
            raise NotOpen(f"goal at path {list(path)} is already closed")
        closed = _close(target.goal, rule, args)
        new_root = _replace(self.current, path, closed)
        del self.history[self.cursor + 1 :]
        self.history.append(new_root)
        self.cursor += 1
        return new_root

    def undo(self) -> Node:
        if not self.can_undo:
            raise NothingToUndo("already at the initial state")
        self.cursor -= 1
        return self.current

    def redo(self) -> Node:
        if not self.can_redo:
            raise NothingToRedo("already at the latest state")
        self.cursor += 1
        return self.current

    def export(self) -> ProofNode:
        """The finished tree as a checkable proof; requires no open goals."""
        remaining = open_paths(self.current)
        if remaining:
            raise ProofIncomplete(remaining)
        return _to_proof(self.current)


def new_session(goal_formula: Formula, session_id: Optional[str] = None) -> Session:
    return Session(goal_formula, session_id)


def replay(goal_formula: Formula, steps: Sequence[tuple[Sequence[int], Rule, RuleArgs]]) -> Session:
    """Run a recorded transcript of (path, rule, args) against a fresh session."""
    session = Session(goal_formula)
    for path, rule, args in steps:
        session.apply(path, rule, args)
    return session
