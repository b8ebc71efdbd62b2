"""Text-attributed graph over a netlist.

Nodes are primary-input bits, gates, register boundaries and primary-output
bits; each carries a symbolic expression and a text label. Sequential cells
are cut: the gate node terminates the D/CK fan-in cone and a separate
register-boundary node sources the Q net, so the graph is acyclic whenever
every cycle crosses a register.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from netreason.core.boolexpr import BoolExpr, Var
from netreason.core.library import CellLibrary
from netreason.core.netlist import CONST_NETS, Netlist, derive_gate_expr
from netreason.errors import CombinationalLoop

PI = "primary-input"
GATE = "gate"
REG = "register-boundary"
PO = "primary-output"


@dataclass(frozen=True)
class TAGNode:
    node_id: int
    kind: str  # PI | GATE | REG | PO
    label: str  # text attribute: cell type + instance name, or net name
    expr: BoolExpr
    cell_type: str | None = None
    instance: str | None = None


@dataclass(frozen=True)
class TAGraph:
    nodes: tuple[TAGNode, ...]
    edges: tuple[tuple[int, int], ...]  # directed driver -> sink pairs
    name: str = ""
    out_adj: dict[int, tuple[int, ...]] = field(default_factory=dict, compare=False)
    in_adj: dict[int, tuple[int, ...]] = field(default_factory=dict, compare=False)

    def node(self, node_id: int) -> TAGNode:
        return self.nodes[node_id]

    def gate_nodes(self) -> list[TAGNode]:
        return [nd for nd in self.nodes if nd.kind == GATE]

    def topological_order(self) -> list[int]:
        """Kahn's algorithm; raises CombinationalLoop if a cycle remains."""
        indeg = {nd.node_id: 0 for nd in self.nodes}
        for _, dst in self.edges:
            indeg[dst] += 1
        frontier = [nid for nid, d in sorted(indeg.items()) if d == 0]
        order: list[int] = []
        while frontier:
            nid = frontier.pop(0)
            order.append(nid)
            for succ in self.out_adj.get(nid, ()):
                indeg[succ] -= 1
                if indeg[succ] == 0:
                    frontier.append(succ)
        if len(order) != len(self.nodes):
            raise CombinationalLoop(_find_cycle(self))
        return order


def _make_adj(n_nodes: int, edges) -> tuple[dict, dict]:
    out: dict[int, list[int]] = {}
    inn: dict[int, list[int]] = {}
    for src, dst in edges:
        out.setdefault(src, []).append(dst)
        inn.setdefault(dst, []).append(src)
    return (
        {k: tuple(v) for k, v in out.items()},
        {k: tuple(v) for k, v in inn.items()},
    )


def build_tag_graph(n: Netlist, lib: CellLibrary) -> TAGraph:
    """Construct the node/edge structure mirroring net connectivity.

    Node order: PI bits (port order), gates (declaration order), register
    boundaries (sequential-gate order), PO bits (port order).
    """
    nodes: list[TAGNode] = []
    net_source: dict[str, int] = {}  # net -> node id that sources it

    for bit in n.input_bits():
        nid = len(nodes)
        nodes.append(TAGNode(nid, PI, bit, Var(bit)))
        net_source[bit] = nid

    gate_ids: dict[str, int] = {}
    for g in n.gates:
        cell = lib[g.cell_type]
        nid = len(nodes)
        gate_ids[g.instance_name] = nid
        if cell.is_sequential:
            expr: BoolExpr = Var(g.pin_map[cell.data_port])
        else:
            expr = derive_gate_expr(g, lib)
        nodes.append(
            TAGNode(nid, GATE, f"{g.cell_type} {g.instance_name}", expr,
                    cell_type=g.cell_type, instance=g.instance_name)
        )
        if not cell.is_sequential:
            net_source[g.pin_map[cell.output]] = nid

    for g in n.gates:
        cell = lib[g.cell_type]
        if not cell.is_sequential:
            continue
        qnet = g.pin_map[cell.output]
        nid = len(nodes)
        nodes.append(
            TAGNode(nid, REG, f"{g.cell_type} {g.instance_name}.{cell.output}", Var(qnet),
                    cell_type=g.cell_type, instance=g.instance_name)
        )
        net_source[qnet] = nid

    po_ids: list[tuple[str, int]] = []
    for bit in n.output_bits():
        nid = len(nodes)
        nodes.append(TAGNode(nid, PO, bit, Var(bit)))
        po_ids.append((bit, nid))

    edges: list[tuple[int, int]] = []
    for g in n.gates:
        cell = lib[g.cell_type]
        sink = gate_ids[g.instance_name]
        for pin in cell.inputs:
            net = g.pin_map[pin]
            if net in CONST_NETS:
                continue
            src = net_source.get(net)
            if src is not None:
                edges.append((src, sink))
    for bit, nid in po_ids:
        src = net_source.get(bit)
        if src is not None:
            edges.append((src, nid))

    edges.sort()
    out_adj, in_adj = _make_adj(len(nodes), edges)
    g = TAGraph(nodes=tuple(nodes), edges=tuple(edges), name=n.name,
                out_adj=out_adj, in_adj=in_adj)
    g.topological_order()  # raises CombinationalLoop on unregistered cycles
    return g


def _find_cycle(g: TAGraph) -> list[str]:
    color: dict[int, int] = {}  # 0 unseen, 1 on stack, 2 done
    parent: dict[int, int] = {}

    for start in range(len(g.nodes)):
        if color.get(start):
            continue
        stack = [(start, iter(g.out_adj.get(start, ())))]
        color[start] = 1
        while stack:
            nid, it = stack[-1]
            advanced = False
            for succ in it:
                if color.get(succ, 0) == 1:
                    cycle = [succ, nid]
                    cur = nid
                    while cur != succ:
                        cur = parent[cur]
                        cycle.append(cur)
                    cycle.reverse()
                    return [g.nodes[x].label for x in cycle]
                if color.get(succ, 0) == 0:
                    color[succ] = 1
                    parent[succ] = nid
                    stack.append((succ, iter(g.out_adj.get(succ, ()))))
                    advanced = True
                    break
            if not advanced:
                color[nid] = 2
                stack.pop()
    return ["<no cycle found>"]


def dump_taggraph(g: TAGraph) -> str:
    """Edge-list text dump for debugging: node lines, then edge lines."""
    lines = [f"# taggraph {g.name}: {len(g.nodes)} nodes, {len(g.edges)} edges"]
    for nd in g.nodes:
        cell = nd.cell_type or "-"
        lines.append(f"{nd.node_id} {nd.kind} {cell} {nd.expr.to_text()}")
    lines.append("#")
    for src, dst in g.edges:
        lines.append(f"{src} {dst}")
    return "\n".join(lines) + "\n"
