"""Command-line surface: one subcommand per operation, machine-readable
JSON on stdout, a one-line human summary on stderr.

Exit codes: 0 the property holds / the object was constructed; 2 the
property fails and a certificate was emitted; 1 usage, IO or parse error;
3 instance exceeds an exponential checker's cap.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import arborescences, forests, game, hypergraphs, orientations, testkit
from .core import CutCertificate, Digraph, Graph, MixedGraph, Partition, partition_stats
from .errors import InputError, InstanceTooLargeError, SylvaError
from .formats import emit_instance, instance_json, parse_instance, result_json
from .hypergraphs import Dypergraph, Hypergraph

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CERT = 2
EXIT_TOO_LARGE = 3


def _read_instance(path: str, want=None):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}")
    obj = parse_instance(text)
    if want is not None and not isinstance(obj, want):
        raise InputError(f"expected a {want.__name__.lower()} instance")
    return obj


def _emit(doc: dict, summary: str, code: int) -> int:
    print(json.dumps(doc, sort_keys=True))
    print(summary, file=sys.stderr)
    return code


def _doc(command: str, instance, payload: dict, **params) -> dict:
    doc = {"command": command, "instance": instance_json(instance)}
    if params:
        doc["params"] = {k: v for k, v in params.items() if v is not None}
    doc.update(payload)
    return doc


# ---------------------------------------------------------------------------
# command handlers


def cmd_pack_trees(args) -> int:
    g = _read_instance(args.instance, Graph)
    res = forests.pack_spanning_trees(g, args.k)
    payload = result_json(res)
    doc = _doc("pack-trees", g, payload, k=args.k)
    if isinstance(res, forests.TreePacking):
        return _emit(doc, f"packed {args.k} disjoint spanning trees", EXIT_OK)
    return _emit(doc, f"deficient partition, deficit {res.deficit}", EXIT_CERT)


def cmd_decompose_forests(args) -> int:
    g = _read_instance(args.instance, Graph)
    caps = args.caps
    res = forests.decompose_forests(g, args.k, caps)
    doc = _doc("decompose-forests", g, result_json(res), k=args.k, caps=caps)
    if isinstance(res, forests.ForestCover):
        return _emit(doc, f"decomposed into {args.k} forests", EXIT_OK)
    return _emit(doc, "edge set too dense", EXIT_CERT)


def cmd_arboricity(args) -> int:
    g = _read_instance(args.instance, Graph)
    value = forests.arboricity(g)
    res = forests.decompose_forests(g, value) if value else forests.ForestCover(())
    doc = _doc("arboricity", g, {
        "arboricity": value,
        "forests": [sorted(f) for f in res.forests],
    })
    return _emit(doc, f"arboricity {value}", EXIT_OK)


def cmd_deficiency(args) -> int:
    g = _read_instance(args.instance, Graph)
    value, witness = forests.partition_deficiency(g, args.k)
    doc = _doc("deficiency", g, {
        "deficiency": value,
        "result": "packed" if value == 0 else "deficient",
        "partition": witness.as_lists(),
    }, k=args.k)
    return _emit(doc, f"deficiency {value}", EXIT_OK)


def cmd_augment(args) -> int:
    g = _read_instance(args.instance, Graph)
    res = forests.augment_to_k_tree_connected(g, args.k, args.budget, args.mode)
    doc = _doc("augment", g, result_json(res), k=args.k, budget=args.budget,
               mode=args.mode)
    if isinstance(res, forests.Augmentation):
        doc["trees"] = [sorted(t) for t in res.trees]
        return _emit(doc, f"added {len(res.new_edges)} edges", EXIT_OK)
    return _emit(doc, f"infeasible: need {res.needed} > budget {res.budget}",
                 EXIT_CERT)


def cmd_check_pc(args) -> int:
    g = _read_instance(args.instance, Graph)
    ok, witness = forests.check_partition_connected(g, args.k, args.l)
    payload = {"holds": ok}
    if witness is not None:
        payload["certificate"] = result_json(witness)
    doc = _doc("check-pc", g, payload, k=args.k, l=args.l)
    word = "is" if ok else "is not"
    return _emit(doc, f"graph {word} ({args.k},{args.l})-partition-connected",
                 EXIT_OK if ok else EXIT_CERT)


def cmd_check_sparse(args) -> int:
    g = _read_instance(args.instance, Graph)
    if args.body_bar is not None:
        ok, cert = forests.check_body_bar(g, args.body_bar)
        name = f"body-bar realizable in dimension {args.body_bar}"
    elif args.laman:
        ok, cert = forests.check_laman(g)
        name = "(2,1)-forest-tight (Laman count)"
    elif args.tight:
        ok, cert = forests.check_forest_tight(g, args.k, args.l)
        name = f"({args.k},{args.l})-forest-tight"
    else:
        ok, cert = forests.check_forest_sparse(g, args.k, args.l)
        name = f"({args.k},{args.l})-forest-sparse"
    payload = {"holds": ok}
    if not ok and cert is not None:
        if isinstance(cert, tuple) and cert and cert[0] == "size":
            payload["certificate"] = {"result": "infeasible",
                                      "edges_found": cert[1], "edges_needed": cert[2]}
        elif isinstance(cert, tuple) and cert and cert[0] == "dense":
            payload["certificate"] = result_json(cert[1])
        else:
            payload["certificate"] = result_json(cert)
    elif ok and not isinstance(cert, (tuple, type(None))):
        payload["certificate"] = result_json(cert)
    doc = _doc("check-sparse", g, payload, k=args.k, l=args.l)
    word = "holds" if ok else "fails"
    return _emit(doc, f"{name}: {word}", EXIT_OK if ok else EXIT_CERT)


def cmd_pack_arbs(args) -> int:
    d = _read_instance(args.instance, Digraph)
    seeds = None
    if args.seeds:
        with open(args.seeds, "r", encoding="utf-8") as fh:
            seeds = json.load(fh)
    res = arborescences.pack_arborescences(d, args.root, args.k, seeds)
    doc = _doc("pack-arbs", d, result_json(res), k=args.k, root=args.root)
    if isinstance(res, arborescences.ArborescencePacking):
        return _emit(doc, f"packed {args.k} spanning arborescences", EXIT_OK)
    return _emit(doc, "deficient node set", EXIT_CERT)


def cmd_certify_kec(args) -> int:
    g = _read_instance(args.instance, Graph)
    res = arborescences.certify_k_edge_connectivity(g, args.k, args.root)
    doc = _doc("certify-kec", g, result_json(res), k=args.k, root=args.root)
    if isinstance(res, arborescences.DoubledCertificate):
        return _emit(doc, f"{args.k}-edge-connected (arborescence certificate)",
                     EXIT_OK)
    return _emit(doc, f"cut of size {res.actual} < {args.k}", EXIT_CERT)


def cmd_cover_arbs(args) -> int:
    d = _read_instance(args.instance, Digraph)
    ok, violation = arborescences.check_arborescence_cover(d, args.root, args.k)
    payload = {"holds": ok}
    if violation is not None:
        kind = violation[0]
        if kind == "indegree":
            payload["certificate"] = {"result": "cut", "node": violation[1],
                                      "indegree": violation[2]}
        else:
            payload["certificate"] = {"result": "cut", "nodes": sorted(violation[1]),
                                      "lhs": violation[2], "rhs": violation[3]}
    doc = _doc("cover-arbs", d, payload, k=args.k, root=args.root)
    word = "can" if ok else "cannot"
    return _emit(doc, f"arcs {word} be covered by {args.k} spanning arborescences",
                 EXIT_OK if ok else EXIT_CERT)


def cmd_cover_branchings(args) -> int:
    d = _read_instance(args.instance, Digraph)
    ok, violation = arborescences.check_branching_cover(d, args.k)
    payload = {"holds": ok}
    if violation is not None:
        kind = violation[0]
        if kind == "indegree":
            payload["certificate"] = {"result": "cut", "node": violation[1],
                                      "indegree": violation[2]}
        else:
            payload["certificate"] = {"result": "dense", "nodes": sorted(violation[1]),
                                      "induced": violation[2]}
    doc = _doc("cover-branchings", d, payload, k=args.k)
    word = "can" if ok else "cannot"
    return _emit(doc, f"arcs {word} be covered by {args.k} branchings",
                 EXIT_OK if ok else EXIT_CERT)


def cmd_check_mixed(args) -> int:
    m = _read_instance(args.instance, MixedGraph)
    ok, witness = arborescences.check_mixed_arborescence_packing(m, args.root, args.k)
    payload = {"holds": ok}
    if witness is not None:
        payload["certificate"] = {"result": "deficient",
                                  "partition": witness.as_lists()}
    doc = _doc("check-mixed", m, payload, k=args.k, root=args.root)
    word = "exists" if ok else "does not exist"
    return _emit(doc, f"mixed arborescence packing {word}",
                 EXIT_OK if ok else EXIT_CERT)


def cmd_orient(args) -> int:
    g = _read_instance(args.instance, Graph)
    if args.l:
        report = orientations.check_orientation_kl(g, args.root, args.k, args.l)
        payload = {"holds": report.connected}
        if report.orientation is not None:
            payload.update(result_json(report.orientation))
        if report.witness is not None:
            payload["certificate"] = result_json(report.witness)
        if report.construction_skipped:
            payload["construction"] = "skipped (instance above search cap)"
        doc = _doc("orient", g, payload, k=args.k, l=args.l, root=args.root)
        word = "orientable" if report.connected else "not orientable"
        return _emit(doc, f"rooted ({args.k},{args.l}): {word}",
                     EXIT_OK if report.connected else EXIT_CERT)
    res = orientations.orient_rooted_k(g, args.root, args.k)
    if isinstance(res, Digraph):
        doc = _doc("orient", g, result_json(res), k=args.k, root=args.root)
        return _emit(doc, f"rooted {args.k}-arc-connected orientation", EXIT_OK)
    doc = _doc("orient", g, result_json(res), k=args.k, root=args.root)
    return _emit(doc, "not k-partition-connected", EXIT_CERT)


def cmd_hyper(args) -> int:
    h = _read_instance(args.instance, Hypergraph)
    if args.hyper_op == "rank":
        rank, witness = hypergraphs.hypergraphic_rank(h)
        doc = _doc("hyper-rank", h, {
            "rank": rank,
            "partition": witness.as_lists(),
            "partition_connected": rank == h.n - 1,
        })
        return _emit(doc, f"hypergraphic rank {rank}", EXIT_OK)
    if args.hyper_op == "pack":
        res = hypergraphs.pack_hypertrees(h, args.k)
        doc = _doc("hyper-pack", h, result_json(res), k=args.k)
        if isinstance(res, hypergraphs.HypertreePacking):
            return _emit(doc, f"packed {args.k} spanning hypertrees", EXIT_OK)
        return _emit(doc, "not k-partition-connected", EXIT_CERT)
    if args.hyper_op == "cover":
        res = hypergraphs.cover_by_hyperforests(h, args.k)
        doc = _doc("hyper-cover", h, result_json(res), k=args.k)
        if isinstance(res, hypergraphs.HyperforestCover):
            return _emit(doc, f"decomposed into {args.k} hyperforests", EXIT_OK)
        return _emit(doc, "too dense for k hyperforests", EXIT_CERT)
    # orient
    if args.l is not None:
        report = orientations.check_hyper_orientation(h, args.root, args.k, args.l)
        payload = {"holds": report.orientable}
        if report.witness is not None:
            payload["certificate"] = {"result": "deficient",
                                      "partition": report.witness.as_lists(),
                                      "condition": report.failed_condition}
        doc = _doc("hyper-orient", h, payload, k=args.k, l=args.l, root=args.root)
        word = "orientable" if report.orientable else "not orientable"
        return _emit(doc, f"rooted ({args.k},{args.l}): {word}",
                     EXIT_OK if report.orientable else EXIT_CERT)
    res = orientations.orient_hypergraph_rooted_k(h, args.root, args.k)
    if isinstance(res, Dypergraph):
        doc = _doc("hyper-orient", h, result_json(res), k=args.k, root=args.root)
        return _emit(doc, "out-rooted orientation constructed", EXIT_OK)
    doc = _doc("hyper-orient", h, result_json(res), k=args.k, root=args.root)
    return _emit(doc, "not k-partition-connected", EXIT_CERT)


def cmd_check_dyper(args) -> int:
    dy = _read_instance(args.instance, Dypergraph)
    ok, cert = arborescences.check_dypergraph_decomposition(dy, args.root, args.k)
    payload = {"holds": ok}
    if cert is not None:
        payload["certificate"] = result_json(cert)
    doc = _doc("check-dyper", dy, payload, k=args.k, root=args.root)
    word = "decomposable" if ok else "not decomposable"
    return _emit(doc, f"{word} into {args.k} out-rooted arc-connected parts",
                 EXIT_OK if ok else EXIT_CERT)


def _game_cert_json(cert) -> dict | None:
    if cert is None:
        return None
    if isinstance(cert, game.ShortCertificate):
        return {
            "kind": "short",
            "nodes": sorted(cert.nodes),
            "trees": [sorted(t) for t in cert.trees],
            "first_edge": cert.first_edge,
        }
    if isinstance(cert, game.CutCertificate):
        out = {
            "kind": "cut",
            "partition": cert.partition.as_lists(),
            "deficit": cert.deficit,
        }
        if cert.forest_split is not None:
            out["forest_split"] = [sorted(f) for f in cert.forest_split]
        return out
    return None


def cmd_game(args) -> int:
    if args.game_op == "serve":
        from .server import serve

        serve(args.port, args.static)
        return EXIT_OK
    g = _read_instance(args.instance, Graph)
    analysis = game.analyze(g, args.variant, args.first, args.s, args.t)
    if args.game_op == "analyze":
        doc = _doc("game-analyze", g, {
            "winner": analysis.winner,
            "certificate": _game_cert_json(analysis.certificate),
            "note": analysis.note,
        }, variant=args.variant, first=args.first, s=args.s, t=args.t)
        return _emit(doc, f"{analysis.winner} wins", EXIT_OK)
    # play: engine vs engine
    short_core = game.build_core(g, analysis, game.SHORT, args.variant,
                                 args.first, args.s, args.t)
    cut_core = game.build_core(g, analysis, game.CUT, args.variant,
                               args.first, args.s, args.t)
    state = game.GameState.opening(g, args.variant, args.first, args.s, args.t)
    cores = {game.SHORT: short_core, game.CUT: cut_core}
    while state.winner() is None and state.untagged():
        mover = state.to_move
        eid, cores[mover] = game.engine_move(state, cores[mover])
        state = state.apply(eid)
    doc = _doc("game-play", g, {
        "winner": state.winner(),
        "predicted": analysis.winner,
        "transcript": [[mover, eid] for mover, eid in state.history],
    }, variant=args.variant, first=args.first, s=args.s, t=args.t)
    return _emit(doc, f"{state.winner()} wins after {len(state.history)} moves",
                 EXIT_OK)


def cmd_gen(args) -> int:
    comments = [f"prng: {testkit.PRNG_ALGORITHM}", f"seed: {args.seed}",
                f"steps: {args.steps}"]
    if args.gen_op == "pinch":
        out = testkit.gen_pinch_2k(args.seed, args.steps, args.k)
        comments.append(f"guarantee: {2 * args.k}-edge-connected (k={args.k})")
    elif args.gen_op == "mader":
        out, root = testkit.gen_mader(args.seed, args.steps, args.k)
        comments.append(f"guarantee: rooted {args.k}-arc-connected from {root}")
    elif args.gen_op == "kl-pinch":
        out = testkit.gen_kl_pinch(args.seed, args.steps, args.k, args.l)
        comments.append(
            f"guarantee: ({args.k},{args.l})-partition-connected"
        )
    else:
        out, root = testkit.gen_kv(args.seed, args.steps, args.k, args.l)
        comments.append(
            f"guarantee: rooted ({args.k},{args.l})-arc-connected from {root}"
        )
    sys.stdout.write(emit_instance(out, comments))
    print(f"generated {type(out).__name__.lower()} with seed {args.seed}",
          file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# selftest


def _verify_document(doc: dict) -> tuple[bool, str]:
    """Re-check an emitted certificate using only counting primitives."""
    inst = doc.get("instance", {})
    kind = inst.get("kind")
    if kind == "graph":
        g = Graph.build(inst["n"], [tuple(e) for e in inst["edges"]])
    elif kind == "digraph":
        g = Digraph.build(inst["n"], [tuple(a) for a in inst["arcs"]])
    elif kind == "hypergraph":
        g = Hypergraph.build(inst["n"], inst["hyperedges"])
    else:
        return True, f"no verifier for instance kind {kind!r}"
    params = doc.get("params", {})
    k = params.get("k")
    body = doc.get("certificate", doc)
    result = body.get("result")

    if result == "packed" and "trees" in body and kind == "graph":
        target = g
        if doc.get("command") == "augment":
            target = g.add_edges([tuple(e) for e in body.get("added", [])])
        packing = forests.TreePacking(tuple(tuple(t) for t in body["trees"]))
        ok = forests.verify_tree_packing(target, len(body["trees"]), packing)
        return ok, "tree packing re-verified" if ok else "bad packing"
    if result == "packed" and "trees" in body and kind == "digraph":
        root = params.get("root", 0)
        packing = arborescences.ArborescencePacking(
            tuple(tuple(t) for t in body["trees"]))
        ok = arborescences.verify_arborescence_packing(
            g, root, len(body["trees"]), packing)
        return ok, "arborescence packing re-verified" if ok else "bad packing"
    if result == "deficient" and "partition" in body and kind == "graph":
        partition = Partition.from_blocks(g.n, body["partition"])
        cross, _ = partition_stats(g, partition)
        slack = body.get("slack", 0)
        kk = body.get("k", k)
        ok = cross < kk * (len(partition) - 1) + slack
        return ok, "deficient partition re-verified" if ok else "not deficient"
    if result == "covered" and kind == "graph":
        cover = forests.ForestCover(tuple(tuple(f) for f in body["forests"]))
        ok = forests.verify_forest_cover(g, len(body["forests"]), cover)
        return ok, "forest cover re-verified" if ok else "bad cover"
    if result == "dense" and "nodes" in body and kind == "graph":
        nodes = frozenset(body["nodes"])
        induced = sum(u in nodes and v in nodes for _, u, v in g.edges)
        kk = body.get("k", k)
        ok = induced > kk * (len(nodes) - 1) - body.get("slack", 0)
        return ok, "dense set re-verified" if ok else "not dense"
    if result == "cut" and "nodes" in body and kind == "graph":
        nodes = frozenset(body["nodes"])
        d = sum((u in nodes) != (v in nodes) for _, u, v in g.edges)
        ok = d < body.get("required", k)
        return ok, "cut re-verified" if ok else "not a violating cut"
    return True, f"no counting verifier for result {result!r}"


def cmd_selftest(args) -> int:
    if args.verify:
        with open(args.verify, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        ok, message = _verify_document(doc)
        print(json.dumps({"verified": ok, "message": message}))
        print(message, file=sys.stderr)
        return EXIT_OK if ok else EXIT_CERT
    failures = []
    checks = 0

    def check(name, cond):
        nonlocal checks
        checks += 1
        if not cond:
            failures.append(name)

    tri = Graph.build(3, [(0, 1), (1, 2), (0, 2)])
    k4 = Graph.build(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    res = forests.pack_spanning_trees(k4, 2)
    check("k4 packs two trees", isinstance(res, forests.TreePacking))
    res = forests.pack_spanning_trees(tri, 2)
    check("triangle is deficient", isinstance(res, forests.DeficientPartition))
    check("triangle deficit is 1", getattr(res, "deficit", None) == 1)
    check("arboricity of K4 is 2", forests.arboricity(k4) == 2)
    cyc = Digraph.build(3, [(0, 1), (1, 2), (2, 0)])
    check("cycle rooted connectivity 1",
          arborescences.rooted_connectivity(cyc, 0)[0] == 1)
    h = Hypergraph.build(3, [{0, 1, 2}])
    check("single hyperedge is a hyperforest",
          isinstance(hypergraphs.is_hyperforest(h), hypergraphs.Trimming))
    check("single hyperedge rank 1", hypergraphs.hypergraphic_rank(h)[0] == 1)
    analysis = game.analyze(tri, "global", "cut")
    check("triangle game goes to Cut", analysis.winner == "cut")
    doc = {"passed": checks - len(failures), "failed": len(failures),
           "failures": failures}
    print(json.dumps(doc))
    print(f"selftest: {doc['passed']}/{checks} checks passed", file=sys.stderr)
    return EXIT_OK if not failures else EXIT_CERT


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sylva",
        description="certifying tree packing / covering / orientation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_arg(p):
        p.add_argument("instance", help="instance file ('-' for stdin)")

    p = sub.add_parser("pack-trees", help="k edge-disjoint spanning trees")
    p.add_argument("-k", type=int, required=True)
    instance_arg(p)
    p.set_defaults(func=cmd_pack_trees)

    p = sub.add_parser("decompose-forests", help="partition edges into k forests")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--caps", type=int, nargs="+", default=None,
                   help="per-forest size caps")
    instance_arg(p)
    p.set_defaults(func=cmd_decompose_forests)

    p = sub.add_parser("arboricity", help="minimum number of covering forests")
    instance_arg(p)
    p.set_defaults(func=cmd_arboricity)

    p = sub.add_parser("deficiency", help="k-partition-deficiency and witness")
    p.add_argument("-k", type=int, required=True)
    instance_arg(p)
    p.set_defaults(func=cmd_deficiency)

    p = sub.add_parser("augment", help="fewest new edges to k-tree-connectivity")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--mode", choices=["star", "parallel"], default="star")
    instance_arg(p)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("check-pc", help="(k,l)-partition-connectivity")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-l", type=int, default=0)
    instance_arg(p)
    p.set_defaults(func=cmd_check_pc)

    p = sub.add_parser("check-sparse", help="forest sparsity / tightness counts")
    p.add_argument("-k", type=int, default=2)
    p.add_argument("-l", type=int, default=1)
    p.add_argument("--tight", action="store_true")
    p.add_argument("--laman", action="store_true")
    p.add_argument("--body-bar", type=int, default=None, metavar="D")
    instance_arg(p)
    p.set_defaults(func=cmd_check_sparse)

    p = sub.add_parser("pack-arbs", help="k arc-disjoint spanning arborescences")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--seeds", default=None,
                   help="JSON file: list of arc-id lists to extend")
    instance_arg(p)
    p.set_defaults(func=cmd_pack_arbs)

    p = sub.add_parser("certify-kec", help="concise k-edge-connectivity witness")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--root", type=int, default=0)
    instance_arg(p)
    p.set_defaults(func=cmd_certify_kec)

    p = sub.add_parser("cover-arbs", help="cover arcs by k spanning arborescences")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--root", type=int, required=True)
    instance_arg(p)
    p.set_defaults(func=cmd_cover_arbs)

    p = sub.add_parser("cover-branchings", help="cover arcs by k branchings")
    p.add_argument("-k", type=int, required=True)
    instance_arg(p)
    p.set_defaults(func=cmd_cover_branchings)

    p = sub.add_parser("check-mixed", help="mixed arborescence packing condition")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--root", type=int, required=True)
    instance_arg(p)
    p.set_defaults(func=cmd_check_mixed)

    p = sub.add_parser("orient", help="rooted (k[,l])-arc-connected orientation")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-l", type=int, default=0)
    p.add_argument("--root", type=int, required=True)
    instance_arg(p)
    p.set_defaults(func=cmd_orient)

    p = sub.add_parser("hyper", help="hypergraph rank / pack / cover / orient")
    hsub = p.add_subparsers(dest="hyper_op", required=True)
    hp = hsub.add_parser("rank")
    instance_arg(hp)
    hp.set_defaults(func=cmd_hyper)
    for name in ("pack", "cover"):
        hp = hsub.add_parser(name)
        hp.add_argument("-k", type=int, required=True)
        instance_arg(hp)
        hp.set_defaults(func=cmd_hyper)
    hp = hsub.add_parser("orient")
    hp.add_argument("-k", type=int, required=True)
    hp.add_argument("-l", type=int, default=None)
    hp.add_argument("--root", type=int, required=True)
    instance_arg(hp)
    hp.set_defaults(func=cmd_hyper)

    p = sub.add_parser("check-dyper", help="dypergraph decomposition condition")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--root", type=int, required=True)
    instance_arg(p)
    p.set_defaults(func=cmd_check_dyper)

    p = sub.add_parser("game", help="switching game: analyze / play / serve")
    gsub = p.add_subparsers(dest="game_op", required=True)
    for name in ("analyze", "play"):
        gp = gsub.add_parser(name)
        gp.add_argument("--variant", choices=["global", "st"], default="global")
        gp.add_argument("--first", choices=["cut", "short"], default="cut")
        gp.add_argument("--s", type=int, default=None)
        gp.add_argument("--t", type=int, default=None)
        instance_arg(gp)
        gp.set_defaults(func=cmd_game)
    gp = gsub.add_parser("serve")
    gp.add_argument("--port", type=int, default=8737)
    gp.add_argument("--static", default=None, help="directory of UI assets")
    gp.set_defaults(func=cmd_game)

    p = sub.add_parser("gen", help="constructive instance generators")
    gen_sub = p.add_subparsers(dest="gen_op", required=True)
    for name in ("pinch", "mader"):
        gp = gen_sub.add_parser(name)
        gp.add_argument("--seed", type=int, required=True)
        gp.add_argument("--steps", type=int, required=True)
        gp.add_argument("-k", type=int, required=True)
        gp.set_defaults(func=cmd_gen)
    for name in ("kl-pinch", "kv"):
        gp = gen_sub.add_parser(name)
        gp.add_argument("--seed", type=int, required=True)
        gp.add_argument("--steps", type=int, required=True)
        gp.add_argument("-k", type=int, required=True)
        gp.add_argument("-l", type=int, required=True)
        gp.set_defaults(func=cmd_gen)

    p = sub.add_parser("selftest", help="internal battery / certificate verifier")
    p.add_argument("--verify", default=None, metavar="JSON",
                   help="re-verify an emitted certificate document")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InstanceTooLargeError as exc:
        print(f"instance too large: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (InputError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SylvaError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
