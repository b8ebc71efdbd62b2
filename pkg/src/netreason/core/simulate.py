"""Combinational netlist simulation, vectorized over test vectors.

Nets are evaluated in topological order as uint8 numpy rows (one column per
test vector), which keeps exhaustive oracles over 2^k input assignments
cheap. Sequential cells are rejected; oracle users split at registers first.
"""

from __future__ import annotations

import numpy as np

from netreason.core.boolexpr import And, BoolExpr, Const, Not, Or, Var, Xor
from netreason.core.library import CellLibrary
from netreason.core.netlist import Netlist, derive_gate_expr
from netreason.core.taggraph import GATE, build_tag_graph
from netreason.errors import NetlistError, SequentialCell


def _eval_expr(expr: BoolExpr, values: dict[str, np.ndarray]) -> np.ndarray:
    if isinstance(expr, Var):
        return values[expr.name]
    if isinstance(expr, Const):
        width = len(next(iter(values.values()))) if values else 1
        return np.full(width, expr.value, dtype=np.uint8)
    if isinstance(expr, Not):
        return (1 - _eval_expr(expr.arg, values)).astype(np.uint8)
    left = _eval_expr(expr.left, values)
    right = _eval_expr(expr.right, values)
    if isinstance(expr, And):
        return left & right
    if isinstance(expr, Or):
        return left | right
    if isinstance(expr, Xor):
        return left ^ right
    raise TypeError(f"unknown expression node {type(expr).__name__}")


def simulate_bits(n: Netlist, lib: CellLibrary, inputs: dict[str, np.ndarray]) -> dict[str, np.ndarray]:
    """Evaluate every net given per-bit input rows (uint8 arrays, 0/1)."""
    for g in n.gates:
        if lib[g.cell_type].is_sequential:
            raise SequentialCell(f"{n.name}: cannot simulate sequential gate {g.instance_name}")
    missing = set(n.input_bits()) - set(inputs)
    if missing:
        raise NetlistError(f"missing input bits: {sorted(missing)[:4]}")

    graph = build_tag_graph(n, lib)
    values: dict[str, np.ndarray] = {k: np.asarray(v, dtype=np.uint8) for k, v in inputs.items()}
    gate_by_name = {g.instance_name: g for g in n.gates}
    for nid in graph.topological_order():
        node = graph.node(nid)
        if node.kind != GATE:
            continue
        gate = gate_by_name[node.instance]
        expr = derive_gate_expr(gate, lib)
        out_net = gate.pin_map[lib[gate.cell_type].output]
        values[out_net] = _eval_expr(expr, values)
    return values


def pack_words(values: dict[str, np.ndarray], port_bits: list[str]) -> np.ndarray:
    """Combine bit rows (msb first) into integer words per test vector."""
    acc = np.zeros(len(next(iter(values.values()))), dtype=np.int64)
    for bit in port_bits:
        acc = (acc << 1) | values[bit].astype(np.int64)
    return acc


def unpack_words(words: np.ndarray, n_bits: int) -> list[np.ndarray]:
    """Split integer words into bit rows, msb first."""
    words = np.asarray(words, dtype=np.int64)
    return [((words >> (n_bits - 1 - i)) & 1).astype(np.uint8) for i in range(n_bits)]


def simulate_words(n: Netlist, lib: CellLibrary, inputs: dict[str, np.ndarray]) -> dict[str, np.ndarray]:
    """Word-level wrapper: maps port-name -> integer array in, same out."""
    bit_inputs: dict[str, np.ndarray] = {}
    for p in n.input_ports():
        if p.name not in inputs:
            raise NetlistError(f"missing input port {p.name!r}")
        rows = unpack_words(inputs[p.name], p.width)
        for bit_name, row in zip(p.bits(), rows):
            bit_inputs[bit_name] = row
    values = simulate_bits(n, lib, bit_inputs)
    return {p.name: pack_words(values, p.bits()) for p in n.output_ports()}


def exhaustive_inputs(n: Netlist) -> dict[str, np.ndarray]:
    """All input assignments as word arrays (ports enumerated jointly)."""
    widths = [(p.name, p.width) for p in n.input_ports()]
    total = sum(w for _, w in widths)
    if total > 22:
        raise NetlistError(f"{n.name}: {total} input bits is too many for exhaustive enumeration")
    count = 1 << total
    idx = np.arange(count, dtype=np.int64)
    out: dict[str, np.ndarray] = {}
    shift = total
    for name, w in widths:
        shift -= w
        out[name] = (idx >> shift) & ((1 << w) - 1)
    return out
