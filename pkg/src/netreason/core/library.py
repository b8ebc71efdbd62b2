"""Cell library: port roles, expression templates, sequential flags.

Libraries load from a line-oriented text file (grammar in data/stdcells.lib);
a built-in library of ~20 common cells ships with the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from netreason.core.boolexpr import BoolExpr, parse_expr, truth_table
from netreason.errors import LibraryError


@dataclass(frozen=True)
class CellDef:
    name: str
    inputs: tuple[str, ...]
    output: str
    template: BoolExpr
    is_sequential: bool = False
    clock_port: str | None = None
    data_port: str | None = None

    @property
    def ports(self) -> tuple[str, ...]:
        return self.inputs + (self.output,)

    def validate(self) -> None:
        if len(self.inputs) < 1:
            raise LibraryError(f"{self.name}: cells need at least one input")
        if len(set(self.ports)) != len(self.ports):
            raise LibraryError(f"{self.name}: duplicate port names")
        extra = set(self.template.support()) - set(self.inputs)
        if extra:
            raise LibraryError(f"{self.name}: template references undeclared ports {sorted(extra)}")
        if self.is_sequential:
            if self.clock_port not in self.inputs or self.data_port not in self.inputs:
                raise LibraryError(f"{self.name}: sequential cell must declare clock and data inputs")


@dataclass
class CellLibrary:
    entries: dict[str, CellDef] = field(default_factory=dict)

    def add(self, cell: CellDef) -> None:
        cell.validate()
        if cell.name in self.entries:
            raise LibraryError(f"duplicate cell definition: {cell.name}")
        self.entries[cell.name] = cell

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __getitem__(self, name: str) -> CellDef:
        return self.entries[name]

    def cell_names(self) -> list[str]:
        return sorted(self.entries)

    def combinational_cells(self) -> list[CellDef]:
        return [c for c in self.entries.values() if not c.is_sequential]

    def truth_table_of(self, name: str) -> str:
        """Positional truth table of the cell template (inputs in declared order)."""
        return truth_table(self.entries[name].template, order=self.entries[name].inputs)


def parse_library(text: str) -> CellLibrary:
    """Parse the `CELL <name> IN ... OUT ... EXPR ... [SEQ CLK ... D ...]` grammar."""
    lib = CellLibrary()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            if toks[0] != "CELL":
                raise LibraryError(f"line {lineno}: expected CELL, got {toks[0]!r}")
            name = toks[1]
            rest = toks[2:]
            seq = False
            clock_port = data_port = None
            if "SEQ" in rest:
                at = rest.index("SEQ")
                tail = rest[at + 1:]
                rest = rest[:at]
                if len(tail) != 4 or tail[0] != "CLK" or tail[2] != "D":
                    raise LibraryError(f"line {lineno}: SEQ clause must be 'SEQ CLK <p> D <p>'")
                seq, clock_port, data_port = True, tail[1], tail[3]
            fields = _keyword_fields(rest, lineno)
            inputs = tuple(p.strip() for p in fields["IN"].split(",") if p.strip())
            output = fields["OUT"].strip()
            template = parse_expr(fields["EXPR"])
            cell = CellDef(
                name=name,
                inputs=inputs,
                output=output,
                template=template,
                is_sequential=seq,
                clock_port=clock_port,
                data_port=data_port,
            )
            lib.add(cell)
        except (IndexError, KeyError, ValueError) as exc:
            raise LibraryError(f"line {lineno}: malformed cell definition ({exc})") from exc
    if not lib.entries:
        raise LibraryError("library file defines no cells")
    return lib


def _keyword_fields(toks: list[str], lineno: int) -> dict[str, str]:
    # IN/OUT/EXPR introduce fields; everything up to the next keyword belongs
    # to the current field. The SEQ tail is stripped before this runs, so
    # port identifiers named like keywords cannot collide here.
    keywords = {"IN", "OUT", "EXPR"}
    fields: dict[str, str] = {}
    current: str | None = None
    buf: list[str] = []
    for tok in toks:
        if tok in keywords:
            if current is not None:
                fields[current] = " ".join(buf)
            current = tok
            buf = []
        else:
            if current is None:
                raise LibraryError(f"line {lineno}: stray token {tok!r}")
            buf.append(tok)
    if current is not None:
        fields[current] = " ".join(buf)
    return fields


def load_library(path: str | Path) -> CellLibrary:
    return parse_library(Path(path).read_text())


def builtin_library() -> CellLibrary:
    """The packaged standard cell library (INV..DFF)."""
    text = resources.files("netreason.data").joinpath("stdcells.lib").read_text()
    return parse_library(text)
