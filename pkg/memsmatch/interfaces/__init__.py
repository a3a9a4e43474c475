from .network_evaluator import INetworkEvaluator

__all__ = [
    "INetworkEvaluator",
]
