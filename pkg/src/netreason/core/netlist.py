"""Netlist data model: ports, gates, nets, and structural validation.

All types are immutable after construction. Multi-bit ports are bit-blasted
into `name[i]` nets; the netlist's `nets` tuple lists every 1-bit signal
(port bits included).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from netreason.core.boolexpr import BoolExpr, Const, Var
from netreason.core.library import CellLibrary
from netreason.errors import (
    MultipleDrivers,
    NetlistError,
    PinMismatch,
    SequentialCell,
    UndeclaredNet,
    UnknownCell,
)

CONST_NETS = ("1'b0", "1'b1")


@dataclass(frozen=True)
class Port:
    name: str
    direction: str  # "input" | "output"
    msb: int = 0
    lsb: int = 0
    scalar: bool = True  # declared without a range ([0:0] is not scalar)

    @property
    def width(self) -> int:
        return 1 if self.scalar else self.msb - self.lsb + 1

    @property
    def is_scalar(self) -> bool:
        return self.scalar

    def bits(self) -> list[str]:
        """Bit nets in msb..lsb order; scalar ports use the bare name."""
        if self.scalar:
            return [self.name]
        return [f"{self.name}[{i}]" for i in range(self.msb, self.lsb - 1, -1)]


@dataclass(frozen=True)
class Gate:
    instance_name: str
    cell_type: str
    pin_map: dict[str, str] = field(default_factory=dict)  # formal port -> net

    def __hash__(self):
        return hash((self.instance_name, self.cell_type, tuple(sorted(self.pin_map.items()))))


@dataclass(frozen=True)
class Netlist:
    name: str
    ports: tuple[Port, ...]
    nets: tuple[str, ...]  # all declared 1-bit nets, port bits included
    gates: tuple[Gate, ...]
    source_text: str = ""

    def port(self, name: str) -> Port:
        for p in self.ports:
            if p.name == name:
                return p
        raise KeyError(name)

    def input_ports(self) -> list[Port]:
        return [p for p in self.ports if p.direction == "input"]

    def output_ports(self) -> list[Port]:
        return [p for p in self.ports if p.direction == "output"]

    def input_bits(self) -> list[str]:
        return [b for p in self.input_ports() for b in p.bits()]

    def output_bits(self) -> list[str]:
        return [b for p in self.output_ports() for b in p.bits()]

    def driver_map(self, lib: CellLibrary) -> dict[str, tuple[Gate, str]]:
        """net -> (driving gate, output pin). Input port bits have no entry."""
        drivers: dict[str, tuple[Gate, str]] = {}
        for g in self.gates:
            cell = lib[g.cell_type]
            net = g.pin_map[cell.output]
            if net in drivers:
                raise MultipleDrivers(net)
            drivers[net] = (g, cell.output)
        return drivers

    def sink_map(self, lib: CellLibrary) -> dict[str, list[tuple[Gate, str]]]:
        """net -> list of (gate, input pin) consuming it."""
        sinks: dict[str, list[tuple[Gate, str]]] = {}
        for g in self.gates:
            cell = lib[g.cell_type]
            for pin in cell.inputs:
                sinks.setdefault(g.pin_map[pin], []).append((g, pin))
        return sinks

    def validate(self, lib: CellLibrary) -> None:
        """Raise if any structural invariant is violated."""
        names = [p.name for p in self.ports]
        if len(set(names)) != len(names):
            raise NetlistError(f"{self.name}: duplicate port names")
        declared = set(self.nets) | set(CONST_NETS)
        port_bits = {b for p in self.ports for b in p.bits()}
        missing_bits = port_bits - set(self.nets)
        if missing_bits:
            raise NetlistError(f"{self.name}: port bits missing from net list: {sorted(missing_bits)[:4]}")
        instance_names = [g.instance_name for g in self.gates]
        if len(set(instance_names)) != len(instance_names):
            raise NetlistError(f"{self.name}: duplicate instance names")

        input_bits = set(self.input_bits())
        driven: set[str] = set()
        for g in self.gates:
            if g.cell_type not in lib:
                raise UnknownCell(g.cell_type)
            cell = lib[g.cell_type]
            if set(g.pin_map) != set(cell.ports):
                raise PinMismatch(
                    f"{g.instance_name}: pins {sorted(g.pin_map)} do not match "
                    f"{g.cell_type} ports {sorted(cell.ports)}"
                )
            for pin, net in g.pin_map.items():
                if net not in declared:
                    raise UndeclaredNet(net)
                if pin == cell.output:
                    if net in driven or net in input_bits or net in CONST_NETS:
                        raise MultipleDrivers(net)
                    driven.add(net)

    def structurally_equal(self, other: "Netlist") -> bool:
        """Equality of name, ports, gates and pin maps; ignores source text."""
        return (
            self.name == other.name
            and self.ports == other.ports
            and self.gates == other.gates
        )


def derive_gate_expr(gate: Gate, lib: CellLibrary) -> BoolExpr:
    """Instantiate the cell's expression template with the gate's input nets."""
    cell = lib[gate.cell_type]
    if cell.is_sequential:
        raise SequentialCell(f"{gate.instance_name} ({gate.cell_type}) is a register")
    mapping: dict[str, BoolExpr] = {}
    for pin in cell.inputs:
        net = gate.pin_map[pin]
        if net == "1'b0":
            mapping[pin] = Const(0)
        elif net == "1'b1":
            mapping[pin] = Const(1)
        else:
            mapping[pin] = Var(net)
    return cell.template.substitute(mapping)


def extract_io_signals(n: Netlist) -> str:
    """Signal-name listing of the interface, no gate content.

    Ports appear in declaration order; vector ports show their range, e.g.
    `inputs: a[3:0], cin; outputs: sum[3:0]`.
    """
    def fmt(p: Port) -> str:
        return p.name if p.is_scalar else f"{p.name}[{p.msb}:{p.lsb}]"

    ins = ", ".join(fmt(p) for p in n.input_ports())
    outs = ", ".join(fmt(p) for p in n.output_ports())
    return f"inputs: {ins}; outputs: {outs}"


_LINE_COMMENT_RE = re.compile(r"//[^\n]*")
_BLOCK_COMMENT_RE = re.compile(r"/\*.*?\*/", re.DOTALL)


def strip_comments(text: str) -> str:
    """Remove `//` and `/* */` comments, preserving line structure otherwise."""
    return _LINE_COMMENT_RE.sub("", _BLOCK_COMMENT_RE.sub("", text))
