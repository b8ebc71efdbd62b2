"""Canonical Verilog emission.

The output is a fixed point of parse/emit: ports in declaration order, one
declaration per line, internal wires grouped by base name and sorted, gates
in declaration order with pins in the cell's formal order.
"""

from __future__ import annotations

import re

from netreason.core.library import CellLibrary
from netreason.core.netlist import Netlist, Port

_BIT_RE = re.compile(r"^(.*)\[(\d+)\]$")


def emit_verilog(n: Netlist, lib: CellLibrary) -> str:
    lines = [f"module {n.name} ({', '.join(p.name for p in n.ports)});"]
    for p in n.ports:
        lines.append(f"  {p.direction} {_range_of(p)}{p.name};")

    port_bits = {b for p in n.ports for b in p.bits()}
    scalars: list[str] = []
    vectors: dict[str, list[int]] = {}
    for net in n.nets:
        if net in port_bits:
            continue
        m = _BIT_RE.match(net)
        if m:
            vectors.setdefault(m.group(1), []).append(int(m.group(2)))
        else:
            scalars.append(net)
    for base in sorted(vectors):
        idxs = vectors[base]
        lines.append(f"  wire [{max(idxs)}:{min(idxs)}] {base};")
    for net in sorted(scalars):
        lines.append(f"  wire {net};")

    if n.gates:
        lines.append("")
    for g in n.gates:
        cell = lib[g.cell_type]
        pins = ", ".join(f".{pin}({g.pin_map[pin]})" for pin in cell.ports)
        lines.append(f"  {g.cell_type} {g.instance_name} ({pins});")
    lines.append("endmodule")
    return "\n".join(lines) + "\n"


def _range_of(p: Port) -> str:
    return "" if p.is_scalar else f"[{p.msb}:{p.lsb}] "


def gate_line_index(n: Netlist) -> dict[str, int]:
    """Instance name -> 0-based line number of its instance line in emit_verilog output."""
    offset = 1 + len(n.ports)  # header + port declarations
    port_bits = {b for p in n.ports for b in p.bits()}
    wire_lines = 0
    bases: set[str] = set()
    for net in n.nets:
        if net in port_bits:
            continue
        m = _BIT_RE.match(net)
        if m:
            bases.add(m.group(1))
        else:
            wire_lines += 1
    offset += wire_lines + len(bases)
    if n.gates:
        offset += 1  # blank separator line
    return {g.instance_name: offset + i for i, g in enumerate(n.gates)}
