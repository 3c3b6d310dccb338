"""Parser and evaluator for the selector expression language.

Grammar:

    expr    := zero | id | socle | star
             | trace(NAME[;S=vecs]) | tom(NAME[;S=vecs])
             | mul(NAME) | ann(NAME) | h0(NAME) | adic(NAME)
             | tto(NAME) | dv(NAME)
             | smile(expr) | fin(expr[,INT]) | join(expr,expr) | meet(expr,expr)
    vecs    := vec ('|' vec)*
    vec     := '(' INT (',' INT)* ')'

NAME is resolved in an environment mapping names to modules, ideals or
multiplicative sets.  All diagnostics carry a character position.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Ideal, MultSet
from .modrep import ModuleRep
from . import selectors as sel


class SelectorSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"at position {pos}: {message}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][\w.\-]*)|(?P<punct>[(),;|=]))")


@dataclass(frozen=True)
class Token:
    kind: str   # num | name | punct | end
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    out, i = [], 0
    while i < len(src):
        m = _TOKEN.match(src, i)
        if not m or m.end() == m.start():
            stripped = src[i:].lstrip()
            if not stripped:
                break
            bad_pos = len(src) - len(stripped)
            raise SelectorSyntaxError(f"unexpected character {stripped[0]!r}", bad_pos)
        for kind in ("num", "name", "punct"):
            text = m.group(kind)
            if text is not None:
                out.append(Token(kind, text, m.start(kind)))
                break
        i = m.end()
    out.append(Token("end", "", len(src)))
    return out


# AST nodes: ("atom", head, pos), ("named", head, name, vecs|None, pos),
# ("smile", expr, pos), ("fin", expr, cap|None, pos),
# ("join"/"meet", left, right, pos)

_NULLARY = {"zero", "id", "socle", "star"}
_NAMED = {"trace", "tom", "mul", "ann", "h0", "adic", "tto", "dv"}
_VEC_OK = {"trace", "tom"}


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.take()
        if t.text != text:
            got = t.text or "end of input"
            raise SelectorSyntaxError(f"expected {text!r}, got {got!r}", t.pos)
        return t

    def parse(self):
        e = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise SelectorSyntaxError(f"trailing input {t.text!r}", t.pos)
        return e

    def expr(self):
        t = self.take()
        if t.kind != "name":
            got = t.text or "end of input"
            raise SelectorSyntaxError(f"expected a selector, got {got!r}", t.pos)
        head = t.text
        if head in _NULLARY:
            if self.peek().text == "(":
                raise SelectorSyntaxError(f"{head} takes no arguments", self.peek().pos)
            return ("atom", head, t.pos)
        if head in _NAMED:
            self.expect("(")
            name_tok = self.take()
            if name_tok.kind != "name":
                raise SelectorSyntaxError(
                    f"{head} needs a bound name", name_tok.pos
                )
            vecs = None
            if self.peek().text == ";":
                if head not in _VEC_OK:
                    raise SelectorSyntaxError(
                        f"{head} does not accept an anchor list", self.peek().pos
                    )
                self.take()
                s_tok = self.take()
                if s_tok.text != "S":
                    raise SelectorSyntaxError("expected S=", s_tok.pos)
                self.expect("=")
                vecs = self.veclist()
            self.expect(")")
            return ("named", head, name_tok.text, vecs, name_tok.pos)
        if head == "smile":
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return ("smile", inner, t.pos)
        if head == "fin":
            self.expect("(")
            inner = self.expr()
            cap = None
            if self.peek().text == ",":
                self.take()
                cap_tok = self.take()
                if cap_tok.kind != "num":
                    raise SelectorSyntaxError("fin cap must be an integer", cap_tok.pos)
                cap = int(cap_tok.text)
            self.expect(")")
            return ("fin", inner, cap, t.pos)
        if head in ("join", "meet"):
            self.expect("(")
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(")")
            return (head, left, right, t.pos)
        raise SelectorSyntaxError(f"unknown selector {head!r}", t.pos)

    def veclist(self) -> list[tuple[int, ...]]:
        vecs = [self.vec()]
        while self.peek().text == "|":
            self.take()
            vecs.append(self.vec())
        return vecs

    def vec(self) -> tuple[int, ...]:
        self.expect("(")
        entries = [self.int_entry()]
        while self.peek().text == ",":
            self.take()
            entries.append(self.int_entry())
        self.expect(")")
        return tuple(entries)

    def int_entry(self) -> int:
        t = self.take()
        if t.kind != "num":
            raise SelectorSyntaxError("expected an integer entry", t.pos)
        return int(t.text)


def parse(src: str):
    return _Parser(src).parse()


def _lookup(env: dict, name: str, want, head: str, pos: int):
    if name not in env:
        raise SelectorSyntaxError(f"unbound name {name!r}", pos)
    obj = env[name]
    if not isinstance(obj, want):
        raise SelectorSyntaxError(
            f"{head} needs a {want.__name__}, but {name!r} is {type(obj).__name__}",
            pos,
        )
    return obj


def eval_ast(node, algebra: Algebra, env: dict, budget: int = 4096) -> sel.Selector:
    kind = node[0]
    if kind == "atom":
        head = node[1]
        if head == "zero":
            return sel.zero_selector()
        if head == "id":
            return sel.identity_selector()
        if head == "socle":
            return sel.socle_selector()
        return sel.frobenius_star_selector(algebra)
    if kind == "named":
        _, head, name, vecs, pos = node
        if head in ("trace", "tom"):
            mod = _lookup(env, name, ModuleRep, head, pos)
            anchors = None
            if vecs is not None:
                for v in vecs:
                    if len(v) != mod.dim:
                        raise SelectorSyntaxError(
                            f"anchor length {len(v)} != dim {mod.dim} of {name!r}",
                            pos,
                        )
                anchors = [np.array(v, dtype=np.int64) for v in vecs]
            label = f"{head}({name})" if vecs is None else f"{head}({name};S)"
            maker = sel.trace_selector if head == "trace" else sel.tom_selector
            return maker(mod, anchors, name=label)
        if head in ("mul", "ann", "h0", "adic"):
            ideal = _lookup(env, name, Ideal, head, pos)
            maker = {
                "mul": sel.mul_selector,
                "ann": sel.ann_selector,
                "h0": sel.h0_selector,
                "adic": sel.adic_kernel_selector,
            }[head]
            return maker(ideal, name=f"{head}({name})")
        w = _lookup(env, name, MultSet, head, pos)
        maker = sel.torsion_selector if head == "tto" else sel.divisible_selector
        return maker(w, name=f"{head}({name})")
    if kind == "smile":
        return sel.smile(eval_ast(node[1], algebra, env, budget))
    if kind == "fin":
        _, inner, cap, pos = node
        if cap is None:
            cap = max(algebra.dim, 1)
        if cap < 1:
            raise SelectorSyntaxError("fin cap must be positive", pos)
        return sel.finitistic(eval_ast(inner, algebra, env, budget), cap, budget)
    if kind in ("join", "meet"):
        _, left, right, _ = node
        maker = sel.join if kind == "join" else sel.meet
        return maker(
            eval_ast(left, algebra, env, budget),
            eval_ast(right, algebra, env, budget),
        )
    raise AssertionError(f"unreachable node kind {kind}")


def compile_selector(
    src: str, algebra: Algebra, env: dict, budget: int = 4096
) -> sel.Selector:
    return eval_ast(parse(src), algebra, env, budget)
