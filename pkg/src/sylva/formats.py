"""Text instance formats and JSON certificate rendering.

Formats ("#" starts a comment, blank lines ignored, 0-indexed nodes):

    graph n m        digraph n m        hypergraph n m
    u v              tail head          s v1 ... vs
    ...              ...                ...

    dypergraph n m                      mixed n p q
    s head v2 ... vs                    tail head   (p arcs)
    ...                                 u v         (q edges)

Parsing is the inverse of emission on canonical files: edges are numbered
in input order, so parse(emit(x)) == x.
"""
from __future__ import annotations

from .core import CutCertificate, Digraph, Graph, MixedGraph, Partition
from .errors import InputError
from .hypergraphs import (
    Dypergraph,
    HyperDeficientPartition,
    HyperDenseSet,
    HyperforestCover,
    Hypergraph,
    HypertreePacking,
    Trimming,
    ViolatingFamily,
)
from .forests import (
    Augmentation,
    AugmentInfeasible,
    BoundsUnmet,
    CannotSpan,
    DeficientPartition,
    DenseSet,
    ExtendCoverCertificate,
    ExtendPackCertificate,
    ForestCover,
    GroundCertificate,
    TreePacking,
)
from .arborescences import (
    ArborescenceDeficiency,
    ArborescencePacking,
    DoubledCertificate,
)


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(parts, lineno):
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise InputError(f"line {lineno}: expected integers, got {parts!r}")


def parse_instance(text: str):
    """Parse any of the five instance formats, dispatching on the header."""
    rows = list(_tokens(text))
    if not rows:
        raise InputError("empty instance file")
    lineno, header = rows[0]
    kind = header[0]
    body = rows[1:]
    if kind == "graph":
        n, m = _ints(header[1:], lineno)
        if len(body) != m:
            raise InputError(f"expected {m} edge lines, found {len(body)}")
        return Graph.build(n, [tuple(_ints(parts, ln))[:2] for ln, parts in body])
    if kind == "digraph":
        n, m = _ints(header[1:], lineno)
        if len(body) != m:
            raise InputError(f"expected {m} arc lines, found {len(body)}")
        return Digraph.build(n, [tuple(_ints(parts, ln))[:2] for ln, parts in body])
    if kind == "hypergraph":
        n, m = _ints(header[1:], lineno)
        if len(body) != m:
            raise InputError(f"expected {m} hyperedge lines, found {len(body)}")
        members = []
        for ln, parts in body:
            values = _ints(parts, ln)
            size, rest = values[0], values[1:]
            if len(rest) != size:
                raise InputError(f"line {ln}: hyperedge size mismatch")
            members.append(rest)
        return Hypergraph.build(n, members)
    if kind == "dypergraph":
        n, m = _ints(header[1:], lineno)
        entries = []
        if len(body) != m:
            raise InputError(f"expected {m} dyperedge lines, found {len(body)}")
        for ln, parts in body:
            values = _ints(parts, ln)
            size, rest = values[0], values[1:]
            if len(rest) != size:
                raise InputError(f"line {ln}: dyperedge size mismatch")
            entries.append((rest, rest[0]))  # head listed first among members
        return Dypergraph.build(n, entries)
    if kind == "mixed":
        n, p, q = _ints(header[1:], lineno)
        if len(body) != p + q:
            raise InputError(f"expected {p}+{q} lines, found {len(body)}")
        arcs = [tuple(_ints(parts, ln))[:2] for ln, parts in body[:p]]
        edges = [tuple(_ints(parts, ln))[:2] for ln, parts in body[p:]]
        return MixedGraph.build(n, arcs, edges)
    raise InputError(f"unknown instance kind {kind!r}")


def emit_instance(obj, header_comments=()) -> str:
    lines = [f"# {c}" for c in header_comments]
    if isinstance(obj, Graph):
        lines.append(f"graph {obj.n} {obj.m}")
        lines.extend(f"{u} {v}" for _, u, v in sorted(obj.edges))
    elif isinstance(obj, Digraph):
        lines.append(f"digraph {obj.n} {obj.m}")
        lines.extend(f"{t} {h}" for _, t, h in sorted(obj.arcs))
    elif isinstance(obj, Hypergraph):
        lines.append(f"hypergraph {obj.n} {obj.m}")
        for _, members in sorted(obj.hyperedges):
            ordered = sorted(members)
            lines.append(f"{len(ordered)} " + " ".join(map(str, ordered)))
    elif isinstance(obj, Dypergraph):
        lines.append(f"dypergraph {obj.n} {obj.m}")
        for _, members, head in sorted(obj.dyperedges):
            rest = sorted(members - {head})
            lines.append(f"{len(members)} {head} " + " ".join(map(str, rest)))
    elif isinstance(obj, MixedGraph):
        lines.append(f"mixed {obj.n} {len(obj.arcs)} {len(obj.edges)}")
        lines.extend(f"{t} {h}" for _, t, h in sorted(obj.arcs))
        lines.extend(f"{u} {v}" for _, u, v in sorted(obj.edges))
    else:
        raise InputError(f"cannot emit {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def instance_json(obj) -> dict:
    if isinstance(obj, Graph):
        return {"kind": "graph", "n": obj.n,
                "edges": [[u, v] for _, u, v in sorted(obj.edges)]}
    if isinstance(obj, Digraph):
        return {"kind": "digraph", "n": obj.n,
                "arcs": [[t, h] for _, t, h in sorted(obj.arcs)]}
    if isinstance(obj, Hypergraph):
        return {"kind": "hypergraph", "n": obj.n,
                "hyperedges": [sorted(ms) for _, ms in sorted(obj.hyperedges)]}
    if isinstance(obj, Dypergraph):
        return {"kind": "dypergraph", "n": obj.n,
                "dyperedges": [{"members": sorted(ms), "head": h}
                               for _, ms, h in sorted(obj.dyperedges)]}
    if isinstance(obj, MixedGraph):
        return {"kind": "mixed", "n": obj.n,
                "arcs": [[t, h] for _, t, h in sorted(obj.arcs)],
                "edges": [[u, v] for _, u, v in sorted(obj.edges)]}
    raise InputError(f"cannot serialize {type(obj).__name__}")


def _partition_json(partition: Partition) -> list[list[int]]:
    return partition.as_lists()


def _trimming_json(trimming: Trimming) -> list[list[int]]:
    return [[hid, u, v] for hid, u, v in sorted(trimming.pairs)]


def result_json(result) -> dict:
    """Fixed-vocabulary JSON rendering of any witness or certificate.

    result is one of {packed, covered, deficient, dense, cut, infeasible};
    id arrays are ascending.
    """
    if isinstance(result, TreePacking):
        return {"result": "packed", "trees": [sorted(t) for t in result.trees]}
    if isinstance(result, ArborescencePacking):
        return {"result": "packed", "trees": [sorted(t) for t in result.trees]}
    if isinstance(result, DeficientPartition):
        return {
            "result": "deficient",
            "partition": _partition_json(result.partition),
            "k": result.k,
            "slack": result.slack,
            "deficit": result.deficit,
        }
    if isinstance(result, HyperDeficientPartition):
        return {
            "result": "deficient",
            "partition": _partition_json(result.partition),
            "k": result.k,
            "crossing": result.crossing,
            "deficit": result.deficit,
        }
    if isinstance(result, ForestCover):
        return {"result": "covered", "forests": [sorted(f) for f in result.forests]}
    if isinstance(result, DenseSet):
        return {
            "result": "dense",
            "nodes": sorted(result.nodes),
            "k": result.k,
            "slack": result.slack,
            "induced": result.induced,
        }
    if isinstance(result, HyperDenseSet):
        return {"result": "dense", "nodes": sorted(result.nodes),
                "k": result.k, "induced": result.induced}
    if isinstance(result, GroundCertificate):
        return {"result": "dense", "edges": sorted(result.edge_ids),
                "ranks": list(result.ranks)}
    if isinstance(result, CutCertificate):
        return {"result": "cut", "nodes": sorted(result.node_set),
                "required": result.required, "actual": result.actual}
    if isinstance(result, ArborescenceDeficiency):
        return {
            "result": "cut",
            "nodes": sorted(result.node_set),
            "unused_in": result.unused_in,
            "trees_entering": result.trees_entering,
            "required": result.k,
        }
    if isinstance(result, Augmentation):
        return {"result": "packed", "added": [[u, v] for u, v in result.new_edges],
                "mode": result.mode}
    if isinstance(result, AugmentInfeasible):
        return {
            "result": "infeasible",
            "needed": result.needed,
            "budget": result.budget,
            "partition": _partition_json(result.witness.partition),
        }
    if isinstance(result, CannotSpan):
        return {"result": "infeasible", "tree": result.tree_index,
                "partition": _partition_json(result.partition)}
    if isinstance(result, ExtendPackCertificate):
        return {"result": "deficient", "edges": sorted(result.edge_ids),
                "coranks": list(result.coranks)}
    if isinstance(result, ExtendCoverCertificate):
        return {"result": "dense", "edges": sorted(result.edge_ids),
                "ranks": list(result.ranks)}
    if isinstance(result, BoundsUnmet):
        return {"result": "infeasible",
                "forests": [sorted(f) for f in result.cover.forests],
                "lower": list(result.lower)}
    if isinstance(result, DoubledCertificate):
        return {
            "result": "packed",
            "trees": [sorted(t) for t in result.packing.trees],
            "doubling": "edge e maps to arcs 2e (u->v) and 2e+1 (v->u)",
        }
    if isinstance(result, HypertreePacking):
        return {
            "result": "packed",
            "trees": [sorted(t) for t in result.trees],
            "trimmings": [_trimming_json(t) for t in result.trimmings],
        }
    if isinstance(result, HyperforestCover):
        return {
            "result": "covered",
            "forests": [sorted(f) for f in result.forests],
            "trimmings": [_trimming_json(t) for t in result.trimmings],
        }
    if isinstance(result, Trimming):
        return {"result": "packed", "trimming": _trimming_json(result)}
    if isinstance(result, ViolatingFamily):
        return {"result": "dense", "hyperedges": sorted(result.hyperedge_ids),
                "union_size": result.union_size}
    if isinstance(result, Partition):
        return {"result": "deficient", "partition": _partition_json(result)}
    if isinstance(result, Digraph):
        return {"result": "packed",
                "orientation": [[t, h] for _, t, h in sorted(result.arcs)]}
    if isinstance(result, Dypergraph):
        return {"result": "packed",
                "orientation": [{"members": sorted(ms), "head": h}
                                for _, ms, h in sorted(result.dyperedges)]}
    raise InputError(f"cannot serialize result {type(result).__name__}")
