"""Shared test utilities: random netlist text generation and independent
line-scan oracles. These deliberately avoid the package's parser/graph code
paths so they can serve as independent checks.
"""

from __future__ import annotations

import random
import re

# Output pin per cell, duplicated here on purpose (independent of the library
# module; update both if the built-in library changes).
OUTPUT_PIN = {
    "INV": "Y", "BUF": "Y",
    "AND2": "Y", "AND3": "Y", "AND4": "Y",
    "NAND2": "Y", "NAND3": "Y", "NAND4": "Y",
    "OR2": "Y", "OR3": "Y", "OR4": "Y",
    "NOR2": "Y", "NOR3": "Y",
    "XOR2": "Y", "XNOR2": "Y",
    "AOI21": "Y", "AOI22": "Y",
    "OAI21": "Y", "OAI22": "Y",
    "MUX2": "Y",
    "DFF": "Q",
}
INPUT_PINS = {
    "INV": ["A"], "BUF": ["A"],
    "AND2": ["A", "B"], "AND3": ["A", "B", "C"], "AND4": ["A", "B", "C", "D"],
    "NAND2": ["A", "B"], "NAND3": ["A", "B", "C"], "NAND4": ["A", "B", "C", "D"],
    "OR2": ["A", "B"], "OR3": ["A", "B", "C"], "OR4": ["A", "B", "C", "D"],
    "NOR2": ["A", "B"], "NOR3": ["A", "B", "C"],
    "XOR2": ["A", "B"], "XNOR2": ["A", "B"],
    "AOI21": ["A", "B", "C"], "AOI22": ["A", "B", "C", "D"],
    "OAI21": ["A", "B", "C"], "OAI22": ["A", "B", "C", "D"],
    "MUX2": ["A", "B", "S"],
    "DFF": ["D", "CK"],
}
COMB_CELLS = [c for c in OUTPUT_PIN if c != "DFF"]


def random_netlist_text(rng: random.Random, n_gates: int = 20, seq_prob: float = 0.15,
                        name: str = "rnd", with_comments: bool = False) -> str:
    """Structural Verilog for a random DAG over the built-in library."""
    n_in = rng.randint(1, 4)
    ports: list[tuple[str, str, int]] = []  # (name, direction, width; 0 = scalar)
    pi_bits: list[str] = []
    for i in range(n_in):
        width = rng.choice([0, 0, 0, rng.randint(2, 4)])
        pname = f"i{i}"
        ports.append((pname, "input", width))
        if width == 0:
            pi_bits.append(pname)
        else:
            pi_bits.extend(f"{pname}[{k}]" for k in range(width - 1, -1, -1))
    use_seq = seq_prob > 0 and rng.random() < 0.7
    if use_seq:
        ports.append(("clk", "input", 0))
        pi_bits.append("clk")

    n_out = rng.randint(1, 3)
    out_names = [f"o{i}" for i in range(n_out)]
    for pname in out_names:
        ports.append((pname, "output", 0))

    driveable = list(pi_bits)
    wires: list[str] = []
    instances: list[tuple[str, str, dict[str, str]]] = []
    for k in range(n_gates):
        is_last_block = k >= n_gates - n_out
        seq = use_seq and not is_last_block and rng.random() < seq_prob
        cell = "DFF" if seq else rng.choice(COMB_CELLS)
        pins: dict[str, str] = {}
        for pin in INPUT_PINS[cell]:
            if cell == "DFF" and pin == "CK":
                pins[pin] = "clk"
            else:
                pins[pin] = rng.choice(driveable)
        if is_last_block:
            out_net = out_names[k - (n_gates - n_out)]
        else:
            out_net = f"w{k}"
            wires.append(out_net)
        pins[OUTPUT_PIN[cell]] = out_net
        driveable.append(out_net)
        instances.append((cell, f"g{k}", pins))

    lines = []
    ansi = rng.random() < 0.5
    if ansi:
        decls = []
        for pname, direction, width in ports:
            rng_txt = f"[{width - 1}:0] " if width else ""
            decls.append(f"{direction} {rng_txt}{pname}")
        lines.append(f"module {name} ({', '.join(decls)});")
    else:
        lines.append(f"module {name} ({', '.join(p[0] for p in ports)});")
        for pname, direction, width in ports:
            rng_txt = f"[{width - 1}:0] " if width else ""
            lines.append(f"  {direction} {rng_txt}{pname};")
    for w in wires:
        lines.append(f"  wire {w};")
    for cell, inst, pins in instances:
        conn = ", ".join(f".{p}({n})" for p, n in pins.items())
        comment = "  // gate" if with_comments and rng.random() < 0.4 else ""
        lines.append(f"  {cell} {inst} ({conn});{comment}")
    lines.append("endmodule")
    return "\n".join(lines) + "\n"


_DECL_RE = re.compile(r"^\s*(input|output)\s*(?:\[(\d+):(\d+)\])?\s*(.+);")
_INST_RE = re.compile(r"^\s*(\w+)\s+(\w+)\s*\((.*)\);")
_PIN_RE = re.compile(r"\.(\w+)\(([^)]*)\)")


def scan_counts(text: str) -> dict[str, int]:
    """Line-scan oracle for TAGraph node/edge counts.

    Counts PI/PO bits from declarations, gates and registers from instance
    lines, and edges as driven-net consumptions. Works on comment-free
    canonical or generator text (one instance per line).
    """
    text = re.sub(r"//[^\n]*", "", text)
    pi_bits: list[str] = []
    po_bits: list[str] = []
    gates = 0
    regs = 0
    driven: set[str] = set()
    consumptions: list[str] = []
    header_dirs: dict[str, tuple[str, int, int]] = {}

    for line in text.splitlines():
        if line.strip().startswith("module"):
            inner = line[line.index("(") + 1:line.rindex(")")]
            for part in inner.split(","):
                part = part.strip()
                m = re.match(r"(input|output)\s*(?:\[(\d+):(\d+)\])?\s*(\w+)$", part)
                if m:
                    direction, msb, lsb, pname = m.group(1), m.group(2), m.group(3), m.group(4)
                    header_dirs[pname] = (direction, int(msb) if msb else -1, int(lsb) if lsb else -1)
            continue
        m = _DECL_RE.match(line)
        if m:
            direction, msb, lsb, names = m.groups()
            for pname in [s.strip() for s in names.split(",")]:
                bits = (
                    [pname] if msb is None
                    else [f"{pname}[{i}]" for i in range(int(msb), int(lsb) - 1, -1)]
                )
                (pi_bits if direction == "input" else po_bits).extend(bits)
            continue
        m = _INST_RE.match(line)
        if m and m.group(1) not in ("module", "wire") and m.group(1) in OUTPUT_PIN:
            cell = m.group(1)
            gates += 1
            if cell == "DFF":
                regs += 1
            for pin, net in _PIN_RE.findall(m.group(3)):
                net = net.strip()
                if pin == OUTPUT_PIN[cell]:
                    driven.add(net)
                elif not net.startswith("1'"):
                    consumptions.append(net)

    for pname, (direction, msb, lsb) in header_dirs.items():
        bits = [pname] if msb < 0 else [f"{pname}[{i}]" for i in range(msb, lsb - 1, -1)]
        (pi_bits if direction == "input" else po_bits).extend(bits)

    sources = driven | set(pi_bits)
    edges = sum(1 for net in consumptions if net in sources)
    edges += sum(1 for bit in po_bits if bit in driven)
    return {
        "nodes": gates + len(pi_bits) + len(po_bits) + regs,
        "edges": edges,
        "gates": gates,
        "regs": regs,
        "pi_bits": len(pi_bits),
        "po_bits": len(po_bits),
    }
