"""Canonical token literals used throughout the project."""

from typing import Literal

# Search stages, cheapest first. Each strategy runs every stage up to and including itself.
Strategy = Literal["given", "heuristic", "random", "exhaustive"]

SearchOutcome = Literal["Found", "NotBridgeFriendly", "Unknown"]

CertificateResult = Literal["True", "False"]

GraphFamily = Literal[
    "cycle",
    "path",
    "complete",
    "net",
    "sunlet",
    "cyclohexane-123",
    "cyclohexane-135",
]

# Matching conditions plus the Taylor-edge shape check.
ViolationKind = Literal["shape", "disjoint", "homogeneous", "acyclic"]

InputKind = Literal["ideal", "graph", "hypergraph"]

OutputFormat = Literal["json", "jsonl"]

CorpusCommand = Literal["bridge-friendly", "certify-gbm"]

__all__ = [
    "Strategy",
    "SearchOutcome",
    "CertificateResult",
    "GraphFamily",
    "ViolationKind",
    "InputKind",
    "OutputFormat",
    "CorpusCommand",
]
