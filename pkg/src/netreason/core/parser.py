"""Structural gate-level Verilog parser.

Accepts the post-synthesis subset: a module header (ANSI or non-ANSI port
declarations), input/output/wire declarations with optional bit ranges, and
cell instances with named port connections. Comments are ignored; the
original text is preserved in Netlist.source_text. Multi-bit declarations
are bit-blasted into `name[i]` nets at parse time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from netreason.core.library import CellLibrary
from netreason.core.netlist import CONST_NETS, Gate, Netlist, Port, strip_comments
from netreason.errors import (
    MultipleDrivers,
    UndeclaredNet,
    UnknownCell,
    VerilogSyntaxError,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<sized>\d+'[bdh][0-9a-fA-F_xXzZ]+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_$]*)
  | (?P<num>\d+)
  | (?P<sym>[()\[\],;.:])
    """,
    re.VERBOSE,
)

_KEYWORDS = {"module", "endmodule", "input", "output", "inout", "wire"}


@dataclass(frozen=True)
class _Tok:
    kind: str  # id | num | sized | sym | eof
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise VerilogSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        lexeme = m.group(0)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text:
            raise VerilogSyntaxError(f"expected {text!r}, got {tok.text!r}", tok.line, tok.col)
        return tok

    def expect_id(self) -> _Tok:
        tok = self.next()
        if tok.kind != "id" or tok.text in _KEYWORDS:
            raise VerilogSyntaxError(f"expected identifier, got {tok.text!r}", tok.line, tok.col)
        return tok

    def fail(self, msg: str) -> VerilogSyntaxError:
        tok = self.peek()
        return VerilogSyntaxError(msg, tok.line, tok.col)


def _parse_range(p: _Parser) -> tuple[int, int]:
    p.expect("[")
    msb_tok = p.next()
    if msb_tok.kind != "num":
        raise VerilogSyntaxError("expected msb index", msb_tok.line, msb_tok.col)
    p.expect(":")
    lsb_tok = p.next()
    if lsb_tok.kind != "num":
        raise VerilogSyntaxError("expected lsb index", lsb_tok.line, lsb_tok.col)
    p.expect("]")
    msb, lsb = int(msb_tok.text), int(lsb_tok.text)
    if msb < lsb:
        raise VerilogSyntaxError(f"ascending ranges not supported: [{msb}:{lsb}]", msb_tok.line, msb_tok.col)
    return msb, lsb


def parse_netlist(text: str, lib: CellLibrary) -> Netlist:
    """Parse structural Verilog into a validated Netlist.

    Raises VerilogSyntaxError on grammar violations, UnknownCell /
    UndeclaredNet / MultipleDrivers on structural ones.
    """
    p = _Parser(_tokenize(strip_comments(text)))
    p.expect("module")
    name = p.expect_id().text
    header_ports: list[str] = []  # names only, non-ANSI style
    ports: list[Port] = []
    directions: dict[str, str] = {}

    p.expect("(")
    if p.peek().text != ")":
        if p.peek().text in ("input", "output", "inout"):
            _parse_ansi_ports(p, ports, directions)
        else:
            while True:
                header_ports.append(p.expect_id().text)
                tok = p.next()
                if tok.text == ")":
                    p.i -= 1
                    break
                if tok.text != ",":
                    raise VerilogSyntaxError(f"expected ',' or ')', got {tok.text!r}", tok.line, tok.col)
    p.expect(")")
    p.expect(";")

    wires: list[tuple[str, int, int, bool]] = []
    gates: list[Gate] = []
    while True:
        tok = p.peek()
        if tok.text == "endmodule":
            p.next()
            break
        if tok.kind == "eof":
            raise p.fail("missing endmodule")
        if tok.text in ("input", "output"):
            _parse_body_port_decl(p, ports, directions, header_ports)
        elif tok.text == "inout":
            raise VerilogSyntaxError("inout ports not supported", tok.line, tok.col)
        elif tok.text == "wire":
            _parse_wire_decl(p, wires)
        elif tok.kind == "id":
            gates.append(_parse_instance(p, lib))
        else:
            raise VerilogSyntaxError(f"unexpected token {tok.text!r}", tok.line, tok.col)

    # Non-ANSI headers must declare every listed port in the body.
    if header_ports:
        declared = {pt.name for pt in ports}
        undeclared = [h for h in header_ports if h not in declared]
        if undeclared:
            raise VerilogSyntaxError(f"header port {undeclared[0]!r} has no direction declaration", 1, 1)
        order = {h: i for i, h in enumerate(header_ports)}
        ports.sort(key=lambda pt: order[pt.name])

    net_names: list[str] = []
    seen: set[str] = set()
    for pt in ports:
        for b in pt.bits():
            if b in seen:
                raise VerilogSyntaxError(f"duplicate declaration of {b!r}", 1, 1)
            seen.add(b)
            net_names.append(b)
    port_names = {pt.name for pt in ports}
    for wname, msb, lsb, scalar in wires:
        if wname in port_names:
            # Synthesized output often redeclares ports as wires; tolerate.
            continue
        if scalar:
            bits = [wname]
        else:
            bits = [f"{wname}[{i}]" for i in range(msb, lsb - 1, -1)]
        for b in bits:
            if b in seen:
                raise VerilogSyntaxError(f"duplicate declaration of {b!r}", 1, 1)
            seen.add(b)
            net_names.append(b)

    n = Netlist(
        name=name,
        ports=tuple(ports),
        nets=tuple(net_names),
        gates=tuple(gates),
        source_text=text,
    )
    n.validate(lib)
    return n


def _parse_ansi_ports(p: _Parser, ports: list[Port], directions: dict[str, str]) -> None:
    direction = None
    msb = lsb = 0
    scalar = True
    while True:
        tok = p.peek()
        if tok.text in ("input", "output"):
            direction = p.next().text
            msb = lsb = 0
            scalar = True
            if p.peek().text == "[":
                msb, lsb = _parse_range(p)
                scalar = False
        elif tok.text == "inout":
            raise VerilogSyntaxError("inout ports not supported", tok.line, tok.col)
        if direction is None:
            raise p.fail("port direction expected")
        name_tok = p.expect_id()
        ports.append(Port(name_tok.text, direction, msb, lsb, scalar))
        directions[name_tok.text] = direction
        tok = p.peek()
        if tok.text == ",":
            p.next()
            continue
        break


def _parse_body_port_decl(p: _Parser, ports: list[Port], directions: dict[str, str],
                          header_ports: list[str]) -> None:
    direction = p.next().text
    msb = lsb = 0
    scalar = True
    if p.peek().text == "[":
        msb, lsb = _parse_range(p)
        scalar = False
    while True:
        name_tok = p.expect_id()
        if name_tok.text in directions:
            raise VerilogSyntaxError(f"port {name_tok.text!r} declared twice", name_tok.line, name_tok.col)
        if header_ports and name_tok.text not in header_ports:
            raise VerilogSyntaxError(
                f"declared port {name_tok.text!r} missing from module header", name_tok.line, name_tok.col
            )
        ports.append(Port(name_tok.text, direction, msb, lsb, scalar))
        directions[name_tok.text] = direction
        tok = p.next()
        if tok.text == ",":
            continue
        if tok.text == ";":
            return
        raise VerilogSyntaxError(f"expected ',' or ';', got {tok.text!r}", tok.line, tok.col)


def _parse_wire_decl(p: _Parser, wires: list[tuple[str, int, int, bool]]) -> None:
    p.expect("wire")
    msb = lsb = 0
    scalar = True
    if p.peek().text == "[":
        msb, lsb = _parse_range(p)
        scalar = False
    while True:
        name_tok = p.expect_id()
        wires.append((name_tok.text, msb, lsb, scalar))
        tok = p.next()
        if tok.text == ",":
            continue
        if tok.text == ";":
            return
        raise VerilogSyntaxError(f"expected ',' or ';', got {tok.text!r}", tok.line, tok.col)


def _parse_net_ref(p: _Parser) -> str:
    tok = p.next()
    if tok.kind == "sized":
        if tok.text in CONST_NETS:
            return tok.text
        raise VerilogSyntaxError(f"only 1'b0/1'b1 constants supported, got {tok.text!r}", tok.line, tok.col)
    if tok.kind != "id" or tok.text in _KEYWORDS:
        raise VerilogSyntaxError(f"expected net reference, got {tok.text!r}", tok.line, tok.col)
    name = tok.text
    if p.peek().text == "[":
        p.next()
        idx_tok = p.next()
        if idx_tok.kind != "num":
            raise VerilogSyntaxError("expected bit index", idx_tok.line, idx_tok.col)
        p.expect("]")
        name = f"{name}[{int(idx_tok.text)}]"
    return name


def _parse_instance(p: _Parser, lib: CellLibrary) -> Gate:
    cell_tok = p.expect_id()
    if cell_tok.text not in lib:
        raise UnknownCell(cell_tok.text)
    inst_tok = p.expect_id()
    p.expect("(")
    pin_map: dict[str, str] = {}
    while True:
        p.expect(".")
        pin_tok = p.expect_id()
        p.expect("(")
        net = _parse_net_ref(p)
        p.expect(")")
        if pin_tok.text in pin_map:
            raise VerilogSyntaxError(f"pin {pin_tok.text!r} connected twice", pin_tok.line, pin_tok.col)
        pin_map[pin_tok.text] = net
        tok = p.next()
        if tok.text == ",":
            continue
        if tok.text == ")":
            break
        raise VerilogSyntaxError(f"expected ',' or ')', got {tok.text!r}", tok.line, tok.col)
    p.expect(";")
    return Gate(instance_name=inst_tok.text, cell_type=cell_tok.text, pin_map=pin_map)
