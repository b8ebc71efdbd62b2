"""Partition a netlist into register/PO-rooted fan-in cones.

Cones are extracted per primary-output bit and per register, truncated at
registers and primary inputs, then merged greedily in root order until the
gate-count cap is reached. Cut nets become ports of the subcircuit; bracketed
bit names are sanitized into scalar port identifiers.
"""

from __future__ import annotations

import logging
import re

from netreason.core.library import CellLibrary
from netreason.core.netlist import CONST_NETS, Gate, Netlist, Port

log = logging.getLogger(__name__)

_BRACKET_RE = re.compile(r"[\[\]]")


def split_subcircuits(n: Netlist, lib: CellLibrary, size_cap: int) -> list[Netlist]:
    """Split into subcircuits of at most `size_cap` gates (cones permitting)."""
    if size_cap < 1:
        raise ValueError("size_cap must be >= 1")
    if not n.gates:
        return [n]

    drivers = n.driver_map(lib)
    seq_outputs = {
        g.pin_map[lib[g.cell_type].output]
        for g in n.gates
        if lib[g.cell_type].is_sequential
    }
    input_bits = set(n.input_bits())

    def cone_from(start_nets: list[str], seed: Gate | None) -> list[Gate]:
        gates: dict[str, Gate] = {}
        if seed is not None:
            gates[seed.instance_name] = seed
        stack = list(start_nets)
        visited: set[str] = set()
        while stack:
            net = stack.pop()
            if net in visited or net in input_bits or net in CONST_NETS:
                continue
            visited.add(net)
            if net in seq_outputs:
                continue  # truncate at register boundary
            hit = drivers.get(net)
            if hit is None:
                continue
            g, _ = hit
            if g.instance_name not in gates:
                gates[g.instance_name] = g
                cell = lib[g.cell_type]
                stack.extend(g.pin_map[pin] for pin in cell.inputs)
        return list(gates.values())

    cones: list[list[Gate]] = []
    for bit in n.output_bits():
        cone = cone_from([bit], None)
        if cone:
            cones.append(cone)
    for g in n.gates:
        cell = lib[g.cell_type]
        if cell.is_sequential:
            cones.append(cone_from([g.pin_map[pin] for pin in cell.inputs], g))

    covered = {g.instance_name for cone in cones for g in cone}
    for g in n.gates:
        if g.instance_name not in covered:
            cell = lib[g.cell_type]
            cone = cone_from([g.pin_map[pin] for pin in cell.inputs], g)
            cones.append(cone)
            covered.update(x.instance_name for x in cone)

    groups: list[set[str]] = []
    current: set[str] = set()
    for cone in cones:
        names = {g.instance_name for g in cone}
        if len(names) > size_cap:
            if current:
                groups.append(current)
                current = set()
            log.warning(
                "%s: cone of %d gates exceeds cap %d; emitting as its own subcircuit",
                n.name, len(names), size_cap,
            )
            groups.append(names)
            continue
        merged = current | names
        if current and len(merged) > size_cap:
            groups.append(current)
            current = set(names)
        else:
            current = merged
    if current:
        groups.append(current)

    return [
        _extract(n, lib, group, f"{n.name}_sub{i}")
        for i, group in enumerate(groups)
    ]


def _extract(n: Netlist, lib: CellLibrary, instance_names: set[str], name: str) -> Netlist:
    gates = [g for g in n.gates if g.instance_name in instance_names]
    consumed: list[str] = []
    driven: dict[str, None] = {}
    for g in gates:
        cell = lib[g.cell_type]
        for pin in cell.inputs:
            consumed.append(g.pin_map[pin])
        driven[g.pin_map[cell.output]] = None

    outside_consumers: set[str] = set()
    for g in n.gates:
        if g.instance_name in instance_names:
            continue
        cell = lib[g.cell_type]
        for pin in cell.inputs:
            outside_consumers.add(g.pin_map[pin])

    po_bits = set(n.output_bits())
    in_ports: list[str] = []
    seen_in: set[str] = set()
    for net in consumed:
        if net in driven or net in CONST_NETS or net in seen_in:
            continue
        seen_in.add(net)
        in_ports.append(net)
    out_ports = [
        net for net in driven
        if net in po_bits or net in outside_consumers
    ]
    if not out_ports:
        # keep the subcircuit observable: expose the last cone root
        out_ports = [list(driven)[-1]]

    rename = _sanitize({*in_ports, *out_ports}, driven.keys() - set(out_ports))
    ports = (
        [Port(rename[net], "input") for net in in_ports]
        + [Port(rename[net], "output") for net in out_ports]
    )
    new_gates = [
        Gate(
            instance_name=g.instance_name,
            cell_type=g.cell_type,
            pin_map={pin: rename.get(net, net) for pin, net in g.pin_map.items()},
        )
        for g in gates
    ]
    internal = [rename.get(net, net) for net in driven if net not in set(out_ports)]
    nets = tuple([p.name for p in ports] + internal)
    sub = Netlist(name=name, ports=tuple(ports), nets=nets, gates=tuple(new_gates))
    sub.validate(lib)
    return sub


def _sanitize(port_nets: set[str], internal_nets) -> dict[str, str]:
    """Map cut nets to legal scalar port identifiers (brackets removed)."""
    taken = {net for net in internal_nets if "[" not in net}
    taken.update(net for net in port_nets if "[" not in net)
    rename: dict[str, str] = {}
    for net in sorted(port_nets):
        if "[" not in net:
            rename[net] = net
            continue
        candidate = _BRACKET_RE.sub("_", net).rstrip("_")
        while candidate in taken:
            candidate += "_"
        taken.add(candidate)
        rename[net] = candidate
    return rename
