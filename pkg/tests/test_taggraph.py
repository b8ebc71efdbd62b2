import random

import pytest

from netreason.core import (
    GATE,
    PI,
    PO,
    REG,
    build_tag_graph,
    dump_taggraph,
    emit_verilog,
    parse_netlist,
)
from netreason.errors import CombinationalLoop
from helpers import random_netlist_text, scan_counts


def test_single_and_gate_counts(lib):
    n = parse_netlist("module m(input a,b, output y); AND2 g1(.A(a),.B(b),.Y(y)); endmodule", lib)
    g = build_tag_graph(n, lib)
    assert len(g.nodes) == 4  # 2 PI + 1 gate + 1 PO
    assert len(g.edges) == 3
    kinds = [nd.kind for nd in g.nodes]
    assert kinds.count(PI) == 2 and kinds.count(GATE) == 1 and kinds.count(PO) == 1


def test_dff_feedback_becomes_acyclic(lib):
    text = """
module d (clk, q);
  input clk;
  output q;
  wire nq;
  DFF r1 (.D(nq), .CK(clk), .Q(q));
  INV i1 (.A(q), .Y(nq));
endmodule
"""
    n = parse_netlist(text, lib)
    g = build_tag_graph(n, lib)
    kinds = [nd.kind for nd in g.nodes]
    assert kinds.count(REG) == 1
    order = g.topological_order()  # must not raise
    assert len(order) == len(g.nodes)


def test_combinational_loop_rejected(lib):
    text = """
module loop (a, y);
  input a;
  output y;
  wire w1, w2;
  NAND2 g1 (.A(a), .B(w2), .Y(w1));
  INV   g2 (.A(w1), .Y(w2));
  BUF   g3 (.A(w2), .Y(y));
endmodule
"""
    n = parse_netlist(text, lib)
    with pytest.raises(CombinationalLoop) as exc:
        build_tag_graph(n, lib)
    assert len(exc.value.cycle) >= 2


def test_loop_through_register_is_fine(lib):
    text = """
module okloop (clk, a, y);
  input clk, a;
  output y;
  wire w1, q1;
  XOR2 g1 (.A(a), .B(q1), .Y(w1));
  DFF  r1 (.D(w1), .CK(clk), .Q(q1));
  BUF  g2 (.A(q1), .Y(y));
endmodule
"""
    g = build_tag_graph(parse_netlist(text, lib), lib)
    # gates: g1, r1, g2 -> 3; PIs: clk, a -> 2; PO: y; REG: r1.Q
    assert len(g.nodes) == 3 + 2 + 1 + 1


def test_counts_match_line_scan_oracle(lib):
    rng = random.Random(4242)
    for _ in range(25):
        text = random_netlist_text(rng, n_gates=rng.randint(1, 50))
        n = parse_netlist(text, lib)
        g = build_tag_graph(n, lib)
        expected = scan_counts(emit_verilog(n, lib))
        assert len(g.nodes) == expected["nodes"], text
        assert len(g.edges) == expected["edges"], text


def test_edge_set_matches_connectivity(lib):
    text = """
module conn (a, b, y);
  input a, b;
  output y;
  wire w;
  NAND2 g1 (.A(a), .B(b), .Y(w));
  INV   g2 (.A(w), .Y(y));
endmodule
"""
    g = build_tag_graph(parse_netlist(text, lib), lib)
    labels = {nd.node_id: nd.label for nd in g.nodes}
    edge_labels = {(labels[s], labels[d]) for s, d in g.edges}
    assert edge_labels == {
        ("a", "NAND2 g1"),
        ("b", "NAND2 g1"),
        ("NAND2 g1", "INV g2"),
        ("INV g2", "y"),
    }


def test_dump_taggraph_format(lib):
    n = parse_netlist("module m(input a, output y); INV g(.A(a),.Y(y)); endmodule", lib)
    g = build_tag_graph(n, lib)
    dump = dump_taggraph(g)
    lines = dump.strip().splitlines()
    assert lines[0].startswith("# taggraph m")
    assert any(line.startswith("1 gate INV") for line in lines)
    assert lines[-1] == "1 2"  # gate -> PO edge


def test_node_ids_are_dense_and_ordered(lib):
    rng = random.Random(9)
    text = random_netlist_text(rng, n_gates=12)
    g = build_tag_graph(parse_netlist(text, lib), lib)
    assert [nd.node_id for nd in g.nodes] == list(range(len(g.nodes)))
