"""Netlist parsing, graphs, expressions, splitting, and emission."""

from netreason.core.boolexpr import And, BoolExpr, Const, Not, Or, Var, Xor, parse_expr, truth_table
from netreason.core.emitter import emit_verilog
from netreason.core.library import CellDef, CellLibrary, builtin_library, load_library, parse_library
from netreason.core.netlist import (
    Gate,
    Netlist,
    Port,
    derive_gate_expr,
    extract_io_signals,
    strip_comments,
)
from netreason.core.parser import parse_netlist
from netreason.core.simulate import exhaustive_inputs, simulate_bits, simulate_words
from netreason.core.split import split_subcircuits
from netreason.core.taggraph import GATE, PI, PO, REG, TAGNode, TAGraph, build_tag_graph, dump_taggraph

__all__ = [
    "And", "BoolExpr", "Const", "Not", "Or", "Var", "Xor", "parse_expr", "truth_table",
    "emit_verilog",
    "CellDef", "CellLibrary", "builtin_library", "load_library", "parse_library",
    "Gate", "Netlist", "Port", "derive_gate_expr", "extract_io_signals", "strip_comments",
    "parse_netlist",
    "exhaustive_inputs", "simulate_bits", "simulate_words",
    "split_subcircuits",
    "GATE", "PI", "PO", "REG", "TAGNode", "TAGraph", "build_tag_graph", "dump_taggraph",
]
