"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class SpexGraphError(Exception):
    """Base class; ``code`` is the machine-readable name used in CLI diagnostics."""

    code = "Error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class MalformedGraph6(SpexGraphError, ValueError):
    code = "MalformedGraph6"


class OrderTooLarge(SpexGraphError, ValueError):
    code = "OrderTooLarge"


class IndexOutOfRange(SpexGraphError, IndexError):
    code = "IndexOutOfRange"


class NotAnEdge(SpexGraphError, ValueError):
    code = "NotAnEdge"


class EdgeNotPresent(SpexGraphError, ValueError):
    code = "EdgeNotPresent"


class EdgeAlreadyPresent(SpexGraphError, ValueError):
    code = "EdgeAlreadyPresent"


class LoopEdge(SpexGraphError, ValueError):
    code = "LoopEdge"


class BadParams(SpexGraphError, ValueError):
    code = "BadParams"


class EmbedTooLarge(SpexGraphError, ValueError):
    code = "EmbedTooLarge"


class NoConvergence(SpexGraphError, ArithmeticError):
    code = "NoConvergence"

    def __init__(self, message: str, best_residual: float = float("nan")):
        super().__init__(message)
        self.best_residual = best_residual


class ZeroVector(SpexGraphError, ValueError):
    code = "ZeroVector"


class NotEquitable(SpexGraphError, ValueError):
    code = "NotEquitable"


class NoRealRootFound(SpexGraphError, ArithmeticError):
    code = "NoRealRootFound"


class EmptyGraph(SpexGraphError, ValueError):
    code = "EmptyGraph"


class ResourceExhausted(SpexGraphError, RuntimeError):
    """Search budget ran out before a decision was reached.

    Deliberately not a subclass of anything a caller might treat as "no
    structure found".
    """

    code = "ResourceExhausted"


class OrderTooLargeForEnumeration(SpexGraphError, ValueError):
    code = "OrderTooLargeForEnumeration"


class BudgetExhausted(SpexGraphError, RuntimeError):
    code = "BudgetExhausted"


class UnknownPredicate(SpexGraphError, ValueError):
    code = "UnknownPredicate"
