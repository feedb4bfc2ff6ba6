"""Command-line entry point: ``wreathlab <subcommand> ...``.

Exit status: 0 success, 1 invalid input or violated precondition, 2 resource
cap exhausted, 3 internal invariant failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import actions, graphs, homology, houghton, lhs, polyprod, presentations, verdict
from .errors import DomainError, InvariantError, ParseError, ResourceCapError


def _emit(args, payload, table: str):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False, ensure_ascii=False))
    else:
        print(table)


def _clique_str(c) -> str:
    return "{" + ", ".join(_vertex_str(v) for v in c) + "}"


def _vertex_str(v) -> str:
    if isinstance(v, tuple):
        return f"{v[0]}:{v[1]}"
    return str(v)


def _parse_vertex(text: str):
    if ":" in text:
        name, _, pos = text.rpartition(":")
        try:
            return (name, int(pos))
        except ValueError:
            raise ParseError(f"periodic vertex must look like name:integer, got {text!r}") from None
    return text


def _parse_points(text: str) -> list:
    """``"1,1;2,3"`` -> ``[(1, 1), (2, 3)]``"""
    out = []
    for part in filter(None, text.split(";")):
        try:
            ray, pos = part.split(",")
            out.append((int(ray), int(pos)))
        except ValueError:
            raise ParseError(f"ray points must look like 'ray,position;...', got {text!r}") from None
    return out


def _load_action(spec: str):
    if spec.startswith("catalog:houghton:"):
        try:
            return verdict.houghton_complete_action(int(spec.rsplit(":", 1)[1]))
        except ValueError:
            raise ParseError(f"unknown catalog action {spec!r}") from None
    return actions.load_action(spec)


def _load_presentation(spec: str) -> presentations.Presentation:
    if spec.startswith("catalog:"):
        g = verdict.parse_group_spec(spec)
        if g.presentation is None:
            raise DomainError(f"catalog group {spec!r} has no finite presentation on record")
        return g.presentation
    return presentations.load_presentation(spec)


# --------------------------------------------------------------------------
# subcommands


def cmd_cliques(args):
    g = graphs.load_graph(args.graph)
    cs = graphs.enumerate_cliques(g, args.dim)
    _emit(args, [list(c) for c in cs],
          f"{len(cs)} cliques of size {args.dim}" + "".join(f"\n  {_clique_str(c)}" for c in cs))


def cmd_flag(args):
    L = graphs.flag_complex(graphs.load_graph(args.graph), args.dim)
    counts = L.counts()
    payload = {"dimension": L.dimension, "simplex_counts": list(counts[1:])}
    lines = [f"dimension {L.dimension}"] + [f"  {m}-simplices: {c}" for m, c in enumerate(counts[1:])]
    _emit(args, payload, "\n".join(lines))


def cmd_orbits(args):
    report = actions.clique_orbits(_load_action(args.action), args.dim)
    count = "INFINITE" if not report.finite else report.orbit_count
    lines = [f"orbits of {args.dim}-cliques: {count}"]
    for c, s in zip(report.representatives, report.stabilizers):
        lines.append(f"  {_clique_str(c)}  stabilizer: {_stab_str(s)}")
    _emit(args, report.to_json(), "\n".join(lines))


def _stab_str(s) -> str:
    if s.kind == "finite":
        return f"finite of order {s.order}"
    if s.kind == "cyclic":
        return f"{s.index}Z"
    if s.kind == "catalog":
        return f"type F_{verdict._level_json(s.certified)} ({s.source})"
    return "trivial"


def cmd_stabilizer(args):
    clique = [_parse_vertex(v) for v in args.clique.split(",") if v]
    s = actions.stabilizer_of_clique(_load_action(args.action), clique)
    _emit(args, s.to_json(), _stab_str(s))


def cmd_homology(args):
    C = homology.load_chain_complex(args.complex)
    degrees = [args.dim] if args.dim is not None else [
        p for p in range(C.top + 1) if not (C.truncated and p == C.top)]
    groups = [(p, homology.homology_of(C, p)) for p in degrees]
    _emit(args, {str(p): h.to_json() for p, h in groups},
          "\n".join(f"H_{p} = {h}" for p, h in groups))


def cmd_polyprod(args):
    L = graphs.flag_complex(graphs.load_graph(args.graph), args.dim if args.dim is not None else 6)
    C = polyprod.build_polyprod_complex(L, polyprod.cell_model(args.model), args.dim)
    degrees = [p for p in range(C.top + 1) if not (C.truncated and p == C.top)]
    groups = [(p, homology.homology_of(C, p)) for p in degrees]
    payload = {"ranks": list(C.ranks), "truncated": C.truncated,
               "homology": {str(p): h.to_json() for p, h in groups}}
    lines = [f"cells per dimension: {list(C.ranks)}" + (" (truncated)" if C.truncated else "")]
    lines += [f"H_{p} = {h}" for p, h in groups]
    _emit(args, payload, "\n".join(lines))


def cmd_raag(args):
    h = polyprod.raag_homology(graphs.load_graph(args.graph), args.dim)
    _emit(args, {"p": args.dim, "homology": h.to_json()}, f"H_{args.dim} = {h}")


def cmd_star_check(args):
    g = graphs.load_graph(args.graph)
    L = graphs.flag_complex(g, len(g))
    ok = polyprod.check_star_hypothesis(L, polyprod.cell_model(args.model), args.dim)
    _emit(args, {"star_hypothesis": ok}, f"all cellular differentials vanish: {'yes' if ok else 'no'}")


def _graph_and_phi(args):
    g = graphs.load_graph(args.graph)
    return g, lhs.load_automorphism(g, args.phi)


def cmd_induced_map(args):
    g, phi = _graph_and_phi(args)
    m = lhs.induced_clique_map(g, phi, args.dim)
    rows = [[int(x) for x in row] for row in m.matrix]
    lines = ["basis: " + " ".join(_clique_str(c) for c in m.basis)]
    lines += ["  " + " ".join(f"{x:3d}" for x in row) for row in rows]
    _emit(args, {"p": args.dim, "basis": [list(c) for c in m.basis], "matrix": rows}, "\n".join(lines))


def cmd_wang(args):
    g, phi = _graph_and_phi(args)
    h = lhs.mapping_torus_homology(g, phi, args.dim)
    _emit(args, {"p": args.dim, "homology": h.to_json()}, f"H_{args.dim} = {h}")


def cmd_nakaoka(args):
    g, phi = _graph_and_phi(args)
    h = lhs.nakaoka_decomposition(g, phi, args.dim)
    payload = {"p": args.dim, "homology": h.to_json()}
    text = str(h)
    if args.check:
        other = lhs.mapping_torus_homology(g, phi, args.dim)
        agree = other == h
        payload["mapping_torus"] = other.to_json()
        payload["agreement"] = agree
        text += ", oracle agreement: " + ("OK" if agree else f"MISMATCH (mapping torus gives {other})")
        if not agree:
            _emit(args, payload, text)
            raise InvariantError("the two homology routes disagree")
    _emit(args, payload, text)


def cmd_present(args):
    A = _load_presentation(args.A)
    if args.action is None:
        if args.graph is None:
            raise DomainError("present needs --action (with --H) or --graph")
        P = presentations.graph_product_presentation(graphs.load_graph(args.graph), A)
    else:
        if args.H is None:
            raise DomainError("present with --action needs --H")
        stab = None
        if args.stabilizers:
            with open(args.stabilizers) as fh:
                raw = json.load(fh)
            stab = {_parse_vertex(k): [presentations.parse_word(w) for w in ws] for k, ws in raw.items()}
        P = presentations.graph_wreath_presentation(
            _load_action(args.action), A, _load_presentation(args.H), stab)
    _emit(args, P.to_json(), str(P))


def cmd_abelianize(args):
    h = presentations.abelianization(_load_presentation(args.presentation))
    _emit(args, h.to_json(), str(h))


def cmd_classify(args):
    A, H = verdict.parse_group_spec(args.A), verdict.parse_group_spec(args.H)
    v = verdict.classify(A, H, _load_action(args.action), args.n)
    fmt = verdict._level_json
    refuted = "UNKNOWN" if v.refuted is None else ("never" if v.refuted == actions.INFINITE else f"F_{v.refuted}")
    lines = [v.subject, f"certified: F_{fmt(v.certified)}", f"refuted: {refuted}"]
    if v.type.assumed:
        lines.append("assumptions: " + "; ".join(v.assumptions))
    lines.append("trace:")
    for e in v.trace:
        where = f"n={fmt(e.n)}" + (f" p={e.p}" if e.p is not None else "")
        lines.append(f"  [{e.rule}] {where}: {e.condition} -> {e.outcome}")
    _emit(args, v.to_json(), "\n".join(lines))


def cmd_houghton(args):
    if args.witness is not None:
        if args.source is None or args.target is None:
            raise DomainError("--witness needs --source and --target")
        g = houghton.transitivity_witness(args.witness, _parse_points(args.source),
                                          _parse_points(args.target), args.cap)
        if g is houghton.NOT_FOUND:
            raise ResourceCapError("search cap exhausted before a witness was found")
    elif args.element:
        g = houghton.load_element(args.element[0])
        for path in args.element[1:]:
            g = houghton.compose(g, houghton.load_element(path))
    else:
        raise DomainError("houghton needs --element FILE... or --witness N")
    width = args.window or g.window
    _emit(args, g.to_json(), houghton.render_window(g, width))


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def common(defaults: bool) -> argparse.ArgumentParser:
        # accepted before or after the subcommand; the subcommand copy must
        # not overwrite a value given before it
        p = argparse.ArgumentParser(add_help=False)
        kw = {} if defaults else {"default": argparse.SUPPRESS}
        p.add_argument("--format", choices=["table", "json"], **({"default": "table"} | kw))
        p.add_argument("--seed", type=int, help="seed for randomized checks (default 0)",
                       **({"default": 0} | kw))
        p.add_argument("--cap", type=int, help="resource cap (overrides WREATHLAB_CAP)",
                       **({"default": None} | kw))
        return p

    parser = argparse.ArgumentParser(prog="wreathlab", description=__doc__.splitlines()[0],
                                     parents=[common(True)])
    sub = parser.add_subparsers(dest="command", required=True)
    shared = common(False)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, parents=[shared])
        p.set_defaults(func=func)
        return p

    p = add("cliques", cmd_cliques, "enumerate p-cliques")
    p.add_argument("--graph", required=True)
    p.add_argument("--dim", type=int, required=True, help="clique size p")

    p = add("flag", cmd_flag, "simplex counts of the flag complex")
    p.add_argument("--graph", required=True)
    p.add_argument("--dim", type=int, default=6, help="dimension cap")

    p = add("orbits", cmd_orbits, "orbits of p-cliques under an action")
    p.add_argument("--action", required=True)
    p.add_argument("--dim", type=int, required=True, help="clique size p")

    p = add("stabilizer", cmd_stabilizer, "setwise stabilizer of a clique")
    p.add_argument("--action", required=True)
    p.add_argument("--clique", required=True, help="comma-separated vertices (name:i for shifts)")

    p = add("homology", cmd_homology, "homology of a chain complex file")
    p.add_argument("--complex", required=True)
    p.add_argument("--dim", type=int)

    p = add("polyprod", cmd_polyprod, "cellular homology of a polyhedral product")
    p.add_argument("--graph", required=True)
    p.add_argument("--model", default="circle")
    p.add_argument("--dim", type=int, help="dimension cap")

    p = add("raag", cmd_raag, "homology of a right-angled Artin group")
    p.add_argument("--graph", required=True)
    p.add_argument("--dim", type=int, required=True)

    p = add("star-check", cmd_star_check, "do all cellular differentials of X^L vanish")
    p.add_argument("--graph", required=True)
    p.add_argument("--model", default="circle")
    p.add_argument("--dim", type=int, help="dimension cap")

    for name, func, text in (("induced-map", cmd_induced_map, "action of an automorphism on p-cliques"),
                             ("wang", cmd_wang, "homology of B x| Z by the mapping torus"),
                             ("nakaoka", cmd_nakaoka, "homology of B x| Z from H_*(B) and the action")):
        p = add(name, func, text)
        p.add_argument("--graph", required=True)
        p.add_argument("--phi", required=True)
        p.add_argument("--dim", type=int, required=True)
        if name == "nakaoka":
            p.add_argument("--check", action="store_true", help="compare with the mapping torus")

    p = add("present", cmd_present, "presentation of a graph product or graph-wreath product")
    p.add_argument("--A", required=True)
    p.add_argument("--H")
    p.add_argument("--action")
    p.add_argument("--graph")
    p.add_argument("--stabilizers", help="JSON map vertex -> list of words in H")

    p = add("abelianize", cmd_abelianize, "abelianization of a presentation")
    p.add_argument("--presentation", required=True)

    p = add("classify", cmd_classify, "finiteness type of A wr_Gamma H")
    p.add_argument("--A", required=True)
    p.add_argument("--H", required=True)
    p.add_argument("--action", required=True, help="action file or catalog:houghton:N")
    p.add_argument("--n", type=int, required=True)

    p = add("houghton", cmd_houghton, "Houghton group elements and transitivity witnesses")
    p.add_argument("--element", nargs="+", help="element files, composed left to right")
    p.add_argument("--witness", type=int, metavar="N")
    p.add_argument("--source")
    p.add_argument("--target")
    p.add_argument("--window", type=int)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = os.environ.get("WREATHLAB_CAP")
    if args.cap is not None:
        os.environ["WREATHLAB_CAP"] = str(args.cap)
    try:
        args.func(args)
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        if saved is None:
            os.environ.pop("WREATHLAB_CAP", None)
        else:
            os.environ["WREATHLAB_CAP"] = saved
    return 0


if __name__ == "__main__":
    sys.exit(main())
