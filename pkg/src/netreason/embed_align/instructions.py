"""Instruction pair assembly for embedding-based alignment.

A pair is (task instruction, io-signal text, graph slot, target text); the
prompt layout is instruction first, then io signals, then a single graph
token, then the answer cue.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from netreason.core.netlist import Netlist, extract_io_signals
from netreason.embed_align.tokenizer import GRAPH_MARKER
from netreason.errors import EmptyTarget

TASK_FUNC_DESC = "func-desc"
TASK_IMPL_DETAIL = "impl-detail"
_TEMPLATE_FILES = {
    TASK_FUNC_DESC: "task_func_desc.txt",
    TASK_IMPL_DETAIL: "task_impl_detail.txt",
}


def task_instruction(task: str) -> str:
    try:
        fname = _TEMPLATE_FILES[task]
    except KeyError:
        raise ValueError(f"unknown task {task!r}; expected one of {sorted(_TEMPLATE_FILES)}") from None
    return resources.files("netreason.templates").joinpath(fname).read_text().strip()


@dataclass(frozen=True)
class InstructionPair:
    instruction: str
    io_text: str
    target: str

    def __post_init__(self):
        if not self.target:
            raise EmptyTarget("instruction pair needs a non-empty target")

    @property
    def prompt_text(self) -> str:
        """Prompt with exactly one graph-slot marker."""
        return (
            f"{self.instruction}\n"
            f"{self.io_text}\n"
            f"netlist graph: {GRAPH_MARKER}\n"
            "answer: "
        )

    def validate(self) -> None:
        if self.prompt_text.count(GRAPH_MARKER) != 1:
            raise ValueError("prompt must contain exactly one graph slot")


def assemble_instruction(n: Netlist, task: str, target: str) -> InstructionPair:
    if not target:
        raise EmptyTarget(f"{n.name}: empty ground-truth target")
    pair = InstructionPair(
        instruction=task_instruction(task),
        io_text=extract_io_signals(n),
        target=target,
    )
    pair.validate()
    return pair
