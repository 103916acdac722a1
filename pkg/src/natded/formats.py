"""Textual formula grammar, proof interchange documents, and renderings.

Grammar (whitespace-insensitive between tokens):

    term     := "Var" NAT | "Fun" STRING termlist | "(" term ")"
    termlist := "[" ( term ("," term)* )? "]"
    formula  := "Falsity" | "Pre" STRING termlist
              | ("Imp"|"Dis"|"Con") arg arg | ("Exi"|"Uni") arg
              | "(" formula ")"
    arg      := "Falsity" | "Pre" STRING termlist | "(" formula ")"
    STRING   := double-quoted, no escapes;  NAT := decimal digits

The canonical printer emits no outer parentheses, wraps every constructor
argument except the bare keyword ``Falsity``, and never parenthesizes terms
inside term lists.  ``parse ∘ print`` is the identity on all values and
``print ∘ parse`` the identity on canonical text.

Proof documents are JSON trees: terms ``{"var": n}`` / ``{"fun": [id, [...]]}``,
formulas ``{"falsity": null}`` / ``{"pre": [id, [...]]}`` / ``{"imp": [p, q]}`` /
``{"dis": [p, q]}`` / ``{"con": [p, q]}`` / ``{"exi": p}`` / ``{"uni": p}``,
wrapped as ``{"format_version": 1, "root": <node>}``.  Unknown fields are
rejected and every structural invariant of a proof node is re-validated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Sequence

from .kernel import (
    NO_ARGS,
    PREMISE_COUNT,
    RULE_ARG_FIELDS,
    Goal,
    ProofNode,
    Rule,
    RuleArgs,
)
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
    check_identifier,
)

FORMAT_VERSION = 1
FORMULA_EXTENSION = ".fol"
PROOF_EXTENSION = ".ndproof"


# --- Lexing -----------------------------------------------------------------


class ParseError(ValueError):
    """Syntax error with the byte offset and the token kinds that could follow."""

    def __init__(self, offset: int, expected: Sequence[str], found: str):
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        wanted = ", ".join(sorted(self.expected))
        super().__init__(f"at byte {offset}: expected one of {wanted}, found {found}")


@dataclass(frozen=True)
class _Token:
    kind: str  # one of ( ) [ ] , nat string word eof
    value: Any
    offset: int  # byte offset into the UTF-8 encoding of the input


_KEYWORDS = {"Var", "Fun", "Falsity", "Pre", "Imp", "Dis", "Con", "Exi", "Uni"}


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    byte = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            byte += len(ch.encode("utf-8"))
            i += 1
            continue
        if ch in "()[],":
            tokens.append(_Token(ch, ch, byte))
            byte += 1
            i += 1
            continue
        if ch.isdigit():
            start, start_byte = i, byte
            while i < n and text[i].isdigit():
                i += 1
            byte += i - start
            tokens.append(_Token("nat", int(text[start:i]), start_byte))
            continue
        if ch == '"':
            start_byte = byte
            i += 1
            byte += 1
            chars = []
            while i < n and text[i] != '"':
                c = text[i]
                if ord(c) < 0x20 or ord(c) == 0x7F:
                    raise ParseError(byte, ["string character"], repr(c))
                chars.append(c)
                byte += len(c.encode("utf-8"))
                i += 1
            if i >= n:
                raise ParseError(byte, ['"'], "end of input")
            if not chars:
                raise ParseError(start_byte, ["nonempty string"], '""')
            i += 1
            byte += 1
            tokens.append(_Token("string", "".join(chars), start_byte))
            continue
        if ch.isalpha() or ch == "_":
            start, start_byte = i, byte
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            word = text[start:i]
            byte += len(word.encode("utf-8"))
            if word not in _KEYWORDS:
                raise ParseError(start_byte, sorted(_KEYWORDS), word)
            tokens.append(_Token(word, word, start_byte))
            continue
        raise ParseError(byte, ["token"], repr(ch))
    tokens.append(_Token("eof", None, byte))
    return tokens


# --- Parsing ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.pos = 0

    @property
    def head(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _fail(self, expected: Sequence[str]) -> ParseError:
        tok = self.head
        found = "end of input" if tok.kind == "eof" else str(tok.value)
        return ParseError(tok.offset, expected, found)

    def _expect(self, kind: str) -> _Token:
        if self.head.kind != kind:
            raise self._fail([kind])
        return self._advance()

    def term(self) -> Term:
        tok = self.head
        if tok.kind == "Var":
            self._advance()
            return Var(self._expect("nat").value)
        if tok.kind == "Fun":
            self._advance()
            name = self._expect("string").value
            return Fun(name, self.termlist())
        if tok.kind == "(":
            self._advance()
            t = self.term()
            self._expect(")")
            return t
        raise self._fail(["Var", "Fun", "("])

    def termlist(self) -> tuple[Term, ...]:
        self._expect("[")
        items: list[Term] = []
        if self.head.kind != "]":
            items.append(self.term())
            while self.head.kind == ",":
                self._advance()
                items.append(self.term())
        self._expect("]")
        return tuple(items)

    def formula(self) -> Formula:
        tok = self.head
        if tok.kind == "(":
            self._advance()
            p = self.formula()
            self._expect(")")
            return p
        if tok.kind in ("Imp", "Dis", "Con"):
            self._advance()
            left = self.arg()
            right = self.arg()
            ctor = {"Imp": Imp, "Dis": Dis, "Con": Con}[tok.kind]
            return ctor(left, right)
        if tok.kind in ("Exi", "Uni"):
            self._advance()
            body = self.arg()
            return Exi(body) if tok.kind == "Exi" else Uni(body)
        return self.atom()

    def arg(self) -> Formula:
        # Compound arguments must be parenthesized; atoms may appear bare.
        tok = self.head
        if tok.kind == "(":
            self._advance()
            p = self.formula()
            self._expect(")")
            return p
        return self.atom()

    def atom(self) -> Formula:
        tok = self.head
        if tok.kind == "Falsity":
            self._advance()
            return Falsity()
        if tok.kind == "Pre":
            self._advance()
            name = self._expect("string").value
            return Pre(name, self.termlist())
        raise self._fail(["Falsity", "Pre", "("])


def parse_term(text: str) -> Term:
    parser = _Parser(text)
    t = parser.term()
    parser._expect("eof")
    return t


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    p = parser.formula()
    parser._expect("eof")
    return p


# --- Printing ---------------------------------------------------------------


def print_term(t: Term) -> str:
    match t:
        case Var(v):
            return f"Var {v}"
        case Fun(i, args):
            return f'Fun "{i}" [{", ".join(print_term(a) for a in args)}]'
    raise TypeError(f"not a term: {t!r}")


def print_formula(p: Formula) -> str:
    match p:
        case Falsity():
            return "Falsity"
        case Pre(i, args):
            return f'Pre "{i}" [{", ".join(print_term(a) for a in args)}]'
        case Imp(a, b):
            return f"Imp {_group(a)} {_group(b)}"
        case Dis(a, b):
            return f"Dis {_group(a)} {_group(b)}"
        case Con(a, b):
            return f"Con {_group(a)} {_group(b)}"
        case Exi(body):
            return f"Exi {_group(body)}"
        case Uni(body):
            return f"Uni {_group(body)}"
    raise TypeError(f"not a formula: {p!r}")


def _group(p: Formula) -> str:
    # Falsity is a lone keyword and never needs parentheses.
    if isinstance(p, Falsity):
        return "Falsity"
    return f"({print_formula(p)})"


# --- Proof documents ---------------------------------------------------------


class DecodeError(ValueError):
    """Malformed proof document; ``path`` locates the offending field."""

    def __init__(self, path: Sequence[Any], message: str):
        self.path = tuple(path)
        self.message = message
        where = "/".join(str(seg) for seg in self.path) or "<root>"
        super().__init__(f"{where}: {message}")


def term_to_doc(t: Term) -> dict:
    match t:
        case Var(v):
            return {"var": v}
        case Fun(i, args):
            return {"fun": [i, [term_to_doc(a) for a in args]]}
    raise TypeError(f"not a term: {t!r}")


def formula_to_doc(p: Formula) -> dict:
    match p:
        case Falsity():
            return {"falsity": None}
        case Pre(i, args):
            return {"pre": [i, [term_to_doc(a) for a in args]]}
        case Imp(a, b):
            return {"imp": [formula_to_doc(a), formula_to_doc(b)]}
        case Dis(a, b):
            return {"dis": [formula_to_doc(a), formula_to_doc(b)]}
        case Con(a, b):
            return {"con": [formula_to_doc(a), formula_to_doc(b)]}
        case Exi(body):
            return {"exi": formula_to_doc(body)}
        case Uni(body):
            return {"uni": formula_to_doc(body)}
    raise TypeError(f"not a formula: {p!r}")


def goal_to_doc(goal: Goal) -> dict:
    return {
        "formula": formula_to_doc(goal.formula),
        "assumptions": [formula_to_doc(a) for a in goal.assumptions],
    }


def args_to_doc(rule: Rule, args: RuleArgs) -> dict:
    doc: dict[str, Any] = {}
    for name in RULE_ARG_FIELDS[rule]:
        value = getattr(args, name)
        if name in ("p", "q"):
            doc[name] = formula_to_doc(value)
        elif name == "t":
            doc[name] = term_to_doc(value)
        else:
            doc[name] = value
    return doc


def node_to_doc(node: ProofNode) -> dict:
    return {
        "goal": goal_to_doc(node.goal),
        "rule": node.rule.value,
        "args": args_to_doc(node.rule, node.args),
        "children": [node_to_doc(child) for child in node.children],
    }


def encode_proof(root: ProofNode) -> dict:
    return {"format_version": FORMAT_VERSION, "root": node_to_doc(root)}


def _want(doc: Any, kind: type, path: tuple) -> Any:
    if not isinstance(doc, kind):
        raise DecodeError(path, f"expected {kind.__name__}, found {type(doc).__name__}")
    return doc


def _pair(value: Any, path: tuple) -> tuple:
    seq = _want(value, list, path)
    if len(seq) != 2:
        raise DecodeError(path, f"expected a pair, found {len(seq)} entries")
    return seq[0], seq[1]


def term_from_doc(doc: Any, path: tuple = ()) -> Term:
    _want(doc, dict, path)
    if len(doc) != 1:
        raise DecodeError(path, "term object must have exactly one key")
    key, value = next(iter(doc.items()))
    if key == "var":
        v = _want(value, int, path + ("var",))
        if isinstance(value, bool) or v < 0:
            raise DecodeError(path + ("var",), "index must be a natural number")
        return Var(v)
    if key == "fun":
        name, raw_args = _pair(value, path + ("fun",))
        _want(name, str, path + ("fun", 0))
        args = _want(raw_args, list, path + ("fun", 1))
        try:
            check_identifier(name)
        except ValueError as err:
            raise DecodeError(path + ("fun", 0), str(err)) from err
        return Fun(name, tuple(
            term_from_doc(a, path + ("fun", 1, i)) for i, a in enumerate(args)
        ))
    raise DecodeError(path, f"unknown term constructor {key!r}")


_BINARY = {"imp": Imp, "dis": Dis, "con": Con}
_UNARY = {"exi": Exi, "uni": Uni}


def formula_from_doc(doc: Any, path: tuple = ()) -> Formula:
    _want(doc, dict, path)
    if len(doc) != 1:
        raise DecodeError(path, "formula object must have exactly one key")
    key, value = next(iter(doc.items()))
    if key == "falsity":
        if value is not None:
            raise DecodeError(path + ("falsity",), "falsity carries no payload")
        return Falsity()
    if key == "pre":
        name, raw_args = _pair(value, path + ("pre",))
        _want(name, str, path + ("pre", 0))
        args = _want(raw_args, list, path + ("pre", 1))
        try:
            check_identifier(name)
        except ValueError as err:
            raise DecodeError(path + ("pre", 0), str(err)) from err
        return Pre(name, tuple(
            term_from_doc(a, path + ("pre", 1, i)) for i, a in enumerate(args)
        ))
    if key in _BINARY:
        left, right = _pair(value, path + (key,))
        return _BINARY[key](
            formula_from_doc(left, path + (key, 0)),
            formula_from_doc(right, path + (key, 1)),
        )
    if key in _UNARY:
        return _UNARY[key](formula_from_doc(value, path + (key,)))
    raise DecodeError(path, f"unknown formula constructor {key!r}")


def goal_from_doc(doc: Any, path: tuple = ()) -> Goal:
    _want(doc, dict, path)
    unknown = set(doc) - {"formula", "assumptions"}
    if unknown:
        raise DecodeError(path, f"unknown goal fields: {sorted(unknown)}")
    if "formula" not in doc:
        raise DecodeError(path, "goal is missing its formula")
    formula = formula_from_doc(doc["formula"], path + ("formula",))
    raw = doc.get("assumptions", [])
    _want(raw, list, path + ("assumptions",))
    assumptions = tuple(
        formula_from_doc(a, path + ("assumptions", i)) for i, a in enumerate(raw)
    )
    return Goal(formula, assumptions)


def rule_from_name(name: Any, path: tuple = ()) -> Rule:
    _want(name, str, path)
    try:
        return Rule(name)
    except ValueError:
        raise DecodeError(path, f"{name!r} is not a rule of the calculus") from None


def args_from_doc(rule: Rule, doc: Any, path: tuple = ()) -> RuleArgs:
    _want(doc, dict, path)
    wanted = RULE_ARG_FIELDS[rule]
    unknown = set(doc) - set(wanted)
    if unknown:
        raise DecodeError(path, f"{rule} takes no arguments {sorted(unknown)}")
    missing = set(wanted) - set(doc)
    if missing:
        raise DecodeError(path, f"{rule} requires arguments {sorted(missing)}")
    fields: dict[str, Any] = {}
    for name in wanted:
        value = doc[name]
        if name in ("p", "q"):
            fields[name] = formula_from_doc(value, path + (name,))
        elif name == "t":
            fields[name] = term_from_doc(value, path + (name,))
        else:
            _want(value, str, path + (name,))
            try:
                check_identifier(value)
            except ValueError as err:
                raise DecodeError(path + (name,), str(err)) from err
            fields[name] = value
    return RuleArgs(**fields) if fields else NO_ARGS


def node_from_doc(doc: Any, path: tuple = ()) -> ProofNode:
    _want(doc, dict, path)
    unknown = set(doc) - {"goal", "rule", "args", "children"}
    if unknown:
        raise DecodeError(path, f"unknown proof node fields: {sorted(unknown)}")
    if "goal" not in doc:
        raise DecodeError(path, "proof node is missing its goal")
    if "rule" not in doc:
        raise DecodeError(path, "proof node is missing its rule")
    goal = goal_from_doc(doc["goal"], path + ("goal",))
    rule = rule_from_name(doc["rule"], path + ("rule",))
    args = args_from_doc(rule, doc.get("args", {}), path + ("args",))
    raw_children = doc.get("children", [])
    _want(raw_children, list, path + ("children",))
    if len(raw_children) != PREMISE_COUNT[rule]:
        raise DecodeError(
            path + ("children",),
            f"{rule} has {PREMISE_COUNT[rule]} premises, found {len(raw_children)}",
        )
    children = tuple(
        node_from_doc(c, path + ("children", i)) for i, c in enumerate(raw_children)
    )
    return ProofNode(goal, rule, args, children)


def decode_proof(doc: Any) -> ProofNode:
    _want(doc, dict, ())
    unknown = set(doc) - {"format_version", "root"}
    if unknown:
        raise DecodeError((), f"unknown document fields: {sorted(unknown)}")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise DecodeError(("format_version",), f"unsupported version {version!r}")
    if "root" not in doc:
        raise DecodeError((), "document is missing its root proof node")
    return node_from_doc(doc["root"], ("root",))


# --- Renderings ---------------------------------------------------------------

OPEN_MARKER = "open"


def _walk(node, depth: int, out: list):
    # Works on kernel.ProofNode and on prover nodes, where rule is None while
    # the goal is still open.
    out.append((depth, node))
    for child in node.children or ():
        _walk(child, depth + 1, out)


def _rule_label(node) -> str:
    return node.rule.value if node.rule is not None else OPEN_MARKER


def _ok_line(goal: Goal) -> str:
    inner = ", ".join(_group(a) for a in goal.assumptions)
    return f"OK {_group(goal.formula)} [{inner}]"


def render_ok_listing(root) -> str:
    """One numbered line per node, premises indented two spaces per level."""
    nodes: list = []
    _walk(root, 0, nodes)
    width = len(str(len(nodes)))
    lines = [
        f"{num:>{width}} {'  ' * depth}{_ok_line(node.goal)}  {_rule_label(node)}"
        for num, (depth, node) in enumerate(nodes, start=1)
    ]
    return "\n".join(lines)


def _args_label(node) -> str:
    if node.rule is None or node.args is None:
        return ""
    parts = []
    for name in RULE_ARG_FIELDS[node.rule]:
        value = getattr(node.args, name)
        if name in ("p", "q"):
            parts.append(f"{name} := {print_formula(value)}")
        elif name == "t":
            parts.append(f"{name} := {print_term(value)}")
        else:
            parts.append(f'{name} := "{value}"')
    return f" ({', '.join(parts)})" if parts else ""


def render_tree(root) -> str:
    """Indented bullet tree showing each rule with its witnesses and goal."""
    nodes: list = []
    _walk(root, 0, nodes)
    lines = [
        f"{'  ' * depth}- {_rule_label(node)}{_args_label(node)} {_ok_line(node.goal)}"
        for depth, node in nodes
    ]
    return "\n".join(lines)


# --- Files --------------------------------------------------------------------


def load_formula_file(path) -> Formula:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_formula(handle.read())


def save_formula_file(path, p: Formula) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(print_formula(p) + "\n")


def load_proof_file(path) -> ProofNode:
    with open(path, "r", encoding="utf-8") as handle:
        return decode_proof(json.load(handle))


def save_proof_file(path, root: ProofNode) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(encode_proof(root), handle, indent=2)
        handle.write("\n")
