"""Exception hierarchy shared across the package.

Every error raised by library code derives from NetReasonError so the CLI can
map failures to module-qualified exit lines.
"""


class NetReasonError(Exception):
    """Base class for all package errors."""

    module = "netreason"

    def code(self) -> str:
        return f"{self.module}.{type(self).__name__}"


# --- netlist core ---------------------------------------------------------

class NetlistError(NetReasonError):
    module = "core"


class VerilogSyntaxError(NetlistError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class UnknownCell(NetlistError):
    def __init__(self, cell_type: str):
        super().__init__(f"cell type not in library: {cell_type!r}")
        self.cell_type = cell_type


class MultipleDrivers(NetlistError):
    def __init__(self, net: str):
        super().__init__(f"net has more than one driver: {net!r}")
        self.net = net


class UndeclaredNet(NetlistError):
    def __init__(self, name: str):
        super().__init__(f"reference to undeclared net: {name!r}")
        self.name = name


class PinMismatch(NetlistError):
    pass


class SequentialCell(NetlistError):
    pass


class SupportTooLarge(NetlistError):
    pass


class CombinationalLoop(NetlistError):
    def __init__(self, cycle):
        super().__init__("combinational loop: " + " -> ".join(str(x) for x in cycle))
        self.cycle = list(cycle)


class LibraryError(NetlistError):
    pass


# --- models / training ----------------------------------------------------

class ModelError(NetReasonError):
    module = "model"


class ShapeMismatch(ModelError):
    pass


class ContextOverflow(ModelError):
    pass


class AllMasked(ModelError):
    pass


class FrozenViolation(ModelError):
    pass


class EmptyTarget(ModelError):
    pass


class NoLabels(ModelError):
    pass


class MissingPrediction(ModelError):
    def __init__(self, gate: str):
        super().__init__(f"no prediction for gate {gate!r}")
        self.gate = gate


# --- LLM endpoint ----------------------------------------------------------

class EndpointError(NetReasonError):
    module = "endpoint"


class EndpointUnreachable(EndpointError):
    pass


class AuthFailure(EndpointError):
    pass


class MalformedResponse(EndpointError):
    pass


class RateLimited(EndpointError):
    pass


# --- evaluation ------------------------------------------------------------

class EvalError(NetReasonError):
    module = "eval"


class EmptyReference(EvalError):
    pass


class ProviderUnavailable(EvalError):
    pass


class UnparseableJudgment(EvalError):
    pass


class InvalidCounts(EvalError):
    pass


class MissingOutput(EvalError):
    def __init__(self, design: str):
        super().__init__(f"no generated output found for design {design!r}")
        self.design = design


class SimulatorNotFound(EvalError):
    pass


class SimulationTimeout(EvalError):
    pass


class RtlSubsetError(EvalError):
    """Generated RTL falls outside the built-in evaluator's subset."""
