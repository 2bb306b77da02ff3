"""Textual formats: .zxd diagram files and .zxp derivation scripts.

Diagram grammar (whitespace-insensitive, `#` comments):

    diagram N -> M {
        n0 = Z(2)            # green spider, phase in units of pi/2 (mod 4)
        n1 = X | H | Star    # X(0) may drop its phase, like Z
        n0 - n1              # edges; repeat for parallel edges, a - a loops
        n1 - out0            # boundary ports are in0..  /  out0..
        loops: 1             # closed-loop counter, optional
    }

Derivation grammar:

    derivation <name>
    ruleset fig3
    uses <lemma> <lemma>     # optional, previously verified derivations
    diagram N -> M { ... }   # initial
    steps:
        apply S1 L2R at n0,n1
        apply H.cs R2L
        apply S1 R2L at n2 with b=1
    final N -> M { ... }

`at` anchors name host node ids; `with` supplies values for variables a
reverse (splitting) application leaves undetermined.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .diagram import Diagram, HBox, NodeKind, Star, XSpider, ZSpider
from .ring import Phase


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} (line {line}, column {col})")
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<comment>#[^\n]*)|(?P<arrow>->)|(?P<num>-?\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9']*)|(?P<punct>[{}()=,:;.|-])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup or ""
        s = m.group()
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Stream:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text!r}", t.line, t.col)
        return t

    def error(self, msg: str):
        t = self.peek()
        raise ParseError(msg, t.line, t.col)


_PORT_RE = re.compile(r"^(in|out)(\d+)$")


def _parse_diagram_body(s: _Stream, keyword: str) -> tuple[Diagram, dict[str, int]]:
    s.expect(keyword)
    tn = s.next()
    if tn.kind != "num" or int(tn.text) < 0:
        raise ParseError("expected input arity", tn.line, tn.col)
    n_in = int(tn.text)
    s.expect("->")
    tm = s.next()
    if tm.kind != "num" or int(tm.text) < 0:
        raise ParseError("expected output arity", tm.line, tm.col)
    n_out = int(tm.text)
    s.expect("{")

    d = Diagram()
    for _ in range(n_in):
        d.add_input()
    for _ in range(n_out):
        d.add_output()
    names: dict[str, int] = {}
    port_used: dict[int, _Tok] = {}

    def endpoint(t: _Tok):
        pm = _PORT_RE.match(t.text)
        if pm:
            which, k = pm.group(1), int(pm.group(2))
            lst = d.inputs if which == "in" else d.outputs
            if k >= len(lst):
                raise ParseError(f"port {t.text} out of range", t.line, t.col)
            p = lst[k]
            if p in port_used:
                raise ParseError(f"port {t.text} used more than once", t.line, t.col)
            port_used[p] = t
            return ("b", p)
        if t.text not in names:
            raise ParseError(f"undeclared node {t.text!r}", t.line, t.col)
        return ("n", names[t.text])

    while True:
        t = s.peek()
        if t.text == "}":
            s.next()
            break
        if t.text == ";":
            s.next()
            continue
        if t.text == "loops":
            s.next()
            s.expect(":")
            tv = s.next()
            if tv.kind != "num" or int(tv.text) < 0:
                raise ParseError("expected loop count", tv.line, tv.col)
            d.loops = int(tv.text)
            continue
        if t.kind not in ("name",):
            s.error(f"expected statement, found {t.text!r}")
        first = s.next()
        nxt = s.peek()
        if nxt.text == "=":
            s.next()
            kt = s.next()
            kind = _parse_kind(s, kt)
            if first.text in names or _PORT_RE.match(first.text):
                raise ParseError(
                    f"node name {first.text!r} already used or reserved",
                    first.line,
                    first.col,
                )
            names[first.text] = d.add_node(kind)
        elif nxt.text == "-":
            s.next()
            second = s.next()
            if second.kind != "name":
                raise ParseError("expected edge endpoint", second.line, second.col)
            d.add_edge(endpoint(first), endpoint(second))
        else:
            s.error(f"expected '=' or '-' after {first.text!r}")

    try:
        d.validate()
    except ValueError as ex:
        raise ParseError(str(ex), tn.line, tn.col) from None
    return d, names


def _parse_kind(s: _Stream, kt: _Tok) -> NodeKind:
    name = kt.text
    if name in ("Z", "X"):
        phase = 0
        if s.peek().text == "(":
            s.next()
            tv = s.next()
            if tv.kind != "num":
                raise ParseError("expected integer phase", tv.line, tv.col)
            phase = int(tv.text)
            s.expect(")")
        return ZSpider(Phase(phase)) if name == "Z" else XSpider(Phase(phase))
    if name == "H":
        return HBox()
    if name == "Star":
        return Star()
    raise ParseError(f"unknown node kind {name!r}", kt.line, kt.col)


def parse_diagram(text: str) -> Diagram:
    s = _Stream(_tokenize(text))
    d, _ = _parse_diagram_body(s, "diagram")
    t = s.peek()
    if t.kind != "eof":
        raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    return d


def print_diagram(d: Diagram, keyword: str = "diagram") -> str:
    """Canonical text for a diagram; node ids are compacted to n0, n1, ...

    parse(print(D)) is isomorphic to D (ids may be relabelled).
    """
    lines = [f"{keyword} {len(d.inputs)} -> {len(d.outputs)} {{"]
    order = sorted(d.nodes)
    rename = {v: i for i, v in enumerate(order)}
    for v in order:
        kind = d.nodes[v]
        if isinstance(kind, ZSpider):
            t = "Z" if kind.phase.value == 0 else f"Z({kind.phase.value})"
        elif isinstance(kind, XSpider):
            t = "X" if kind.phase.value == 0 else f"X({kind.phase.value})"
        elif isinstance(kind, HBox):
            t = "H"
        else:
            t = "Star"
        lines.append(f"    n{rename[v]} = {t}")
    pname = {}
    for k, p in enumerate(d.inputs):
        pname[p] = f"in{k}"
    for k, p in enumerate(d.outputs):
        pname[p] = f"out{k}"

    def endtext(e) -> str:
        return f"n{rename[e[1]]}" if e[0] == "n" else pname[e[1]]

    for x, y in d.edges:
        lines.append(f"    {endtext(x)} - {endtext(y)}")
    if d.loops:
        lines.append(f"    loops: {d.loops}")
    lines.append("}")
    return "\n".join(lines)


def compact(d: Diagram) -> Diagram:
    """Relabel node ids to 0..k-1 (sorted order) and port ids canonically."""
    return parse_diagram(print_diagram(d))


# -- derivation scripts ---------------------------------------------------------


@dataclass
class Step:
    rule: str
    variant: str = "plain"
    direction: str = "L2R"
    # node ids (ints) or boundary port names ("in0", "out1")
    anchor: Optional[list] = None
    # phase variables bind to ints; ellipsis variables to lists of endpoint
    # names ("n3", "in0", "out1") giving the far ends of the legs they take
    bindings: Optional[dict[str, object]] = None

    def __str__(self) -> str:
        name = self.rule if self.variant == "plain" else f"{self.rule}.{self.variant}"
        out = f"apply {name} {self.direction}"
        if self.anchor:
            out += " at " + ",".join(
                f"n{a}" if isinstance(a, int) else str(a) for a in self.anchor
            )
        if self.bindings:
            parts = []
            for k, v in sorted(self.bindings.items()):
                parts.append(f"{k}={v}" if isinstance(v, int) else f"{k}={'+'.join(v)}")
            out += " with " + ",".join(parts)
        return out


@dataclass
class Derivation:
    name: str
    ruleset: str
    initial: Diagram
    steps: list[Step]
    final: Diagram
    uses: list[str] = field(default_factory=list)

    def __str__(self) -> str:
        out = [f"derivation {self.name}", f"ruleset {self.ruleset}"]
        if self.uses:
            out.append("uses " + " ".join(self.uses))
        out.append(print_diagram(self.initial))
        out.append("steps:")
        for st in self.steps:
            out.append(f"    {st}")
        out.append(print_diagram(self.final, keyword="final"))
        return "\n".join(out) + "\n"


_RULESETS = {"fig1", "fig1-iv", "fig3", "fig3+lemmas"}
_RULESET_ALIASES = {
    "fig1-starfree-iv": "fig1-iv",
    "fig3+proved-lemmas": "fig3+lemmas",
}


def parse_derivation(text: str) -> Derivation:
    s = _Stream(_tokenize(text))
    s.expect("derivation")
    tname = s.next()
    if tname.kind != "name":
        raise ParseError("expected derivation name", tname.line, tname.col)
    s.expect("ruleset")
    rtok = s.next()
    rs = rtok.text
    # ruleset ids may contain '-' / '+' which tokenize separately
    while s.peek().text in ("-", "+", "iv", "lemmas", "starfree", "proved") and s.peek().line == rtok.line:
        rs += s.next().text
    rs = _RULESET_ALIASES.get(rs, rs)
    if rs not in _RULESETS:
        raise ParseError(f"unknown ruleset {rs!r}", rtok.line, rtok.col)

    uses: list[str] = []
    if s.peek().text == "uses":
        s.next()
        ln = s.toks[s.i - 1].line
        while s.peek().kind == "name" and s.peek().line == ln and s.peek().text != "diagram":
            uses.append(s.next().text)

    initial, _ = _parse_diagram_body(s, "diagram")
    s.expect("steps")
    s.expect(":")
    steps: list[Step] = []
    while s.peek().text == "apply":
        s.next()
        rt = s.next()
        if rt.kind != "name":
            raise ParseError("expected rule name", rt.line, rt.col)
        rule = rt.text
        variant = "plain"
        while s.peek().text == ".":
            s.next()
            vt = s.next()
            if vt.text not in ("cs", "ud"):
                raise ParseError(f"unknown variant tag {vt.text!r}", vt.line, vt.col)
            variant = vt.text if variant == "plain" else "cs.ud"
        dt = s.next()
        if dt.text not in ("L2R", "R2L"):
            raise ParseError("expected direction L2R or R2L", dt.line, dt.col)
        anchor = None
        bindings = None
        if s.peek().text == "at":
            s.next()
            anchor = []
            while True:
                at = s.next()
                m = re.match(r"^n(\d+)$", at.text)
                if m:
                    anchor.append(int(m.group(1)))
                elif _PORT_RE.match(at.text):
                    anchor.append(at.text)
                else:
                    raise ParseError(
                        "anchors must be node ids (n3) or ports (in0/out0)",
                        at.line,
                        at.col,
                    )
                if s.peek().text == ",":
                    s.next()
                    continue
                break
        if s.peek().text == "with":
            s.next()
            bindings = {}
            while True:
                kt = s.next()
                if kt.kind != "name":
                    raise ParseError("expected binding name", kt.line, kt.col)
                s.expect("=")
                vt = s.next()
                if vt.kind == "num":
                    bindings[kt.text] = int(vt.text)
                elif vt.kind == "name":
                    ends = [vt.text]
                    while s.peek().text == "+":
                        s.next()
                        et = s.next()
                        if et.kind != "name":
                            raise ParseError("expected endpoint name", et.line, et.col)
                        ends.append(et.text)
                    bindings[kt.text] = ends
                else:
                    raise ParseError("expected binding value", vt.line, vt.col)
                if s.peek().text == ",":
                    s.next()
                    continue
                break
        steps.append(Step(rule, variant, dt.text, anchor, bindings))

    final, _ = _parse_diagram_body(s, "final")
    t = s.peek()
    if t.kind != "eof":
        raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    return Derivation(tname.text, rs, initial, steps, final, uses)
