"""Command-line entry point: ``perindex <command> ...``.

Exit codes
    0  success
    2  unparseable input (bad JSON, bad flag, bad class SPEC)
    3  invariant violation (invalid complex, non-orientable input, model inconsistency)
    4  the Brauer class is not torsion
    5  no theorem covers the requested bound
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from typing import Any, Sequence

from . import ahss, bounds, forms
from .cochain import catalog
from .cochain.cohomology import cohomology
from .cochain.complex import InvalidComplex, SimplicialComplex, load_complex, save_complex
from .cochain import complex as cx
from .cochain.operations import NotOrientable, NotPseudomanifold, fundamental_class

EXIT_OK, EXIT_PARSE, EXIT_INVARIANT, EXIT_NOT_TORSION, EXIT_NO_THEOREM = 0, 2, 3, 4, 5


class ParseError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


# -- input helpers ------------------------------------------------------------


def read_complex(src: str) -> SimplicialComplex:
    """A JSON file path, or ``builtin:NAME`` from the catalog."""
    if src.startswith("builtin:"):
        try:
            return catalog.builtin(src[len("builtin:"):])
        except KeyError as exc:
            raise ParseError(str(exc)) from exc
    try:
        return load_complex(src)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{src}: malformed JSON ({exc})") from exc
    except OSError as exc:
        raise ParseError(f"{src}: {exc}") from exc


def parse_coeff(text: str) -> int:
    t = text.strip().lower()
    if t in ("z", "zz"):
        return 0
    if t.startswith("z/"):
        try:
            m = int(t[2:])
        except ValueError:
            m = -1
        if m >= 2:
            return m
    raise ParseError(f"bad coefficient {text!r}; expected z or z/m with m >= 2")


def parse_degrees(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..")
            return range(int(a), int(b) + 1)
        d = int(text)
        return range(d, d + 1)
    except ValueError as exc:
        raise ParseError(f"bad degree range {text!r}") from exc


def parse_class(K: SimplicialComplex, spec: str) -> tuple[int, int, tuple[int, ...]]:
    """``deg:coeffs:coordinates`` -> (degree, modulus, canonical coordinates).

    Coordinates are comma-separated against the generators printed by the
    ``cohomology`` command, or ``eI`` for the I-th generator (1-based).  A bare
    integer ``k`` is k times the first generator.
    """
    parts = spec.split(":")
    if len(parts) != 3:
        raise ParseError(f"class SPEC {spec!r} must have the form deg:coeffs:coordinates")
    try:
        deg = int(parts[0])
    except ValueError as exc:
        raise ParseError(f"bad degree in {spec!r}") from exc
    mod = parse_coeff(parts[1])
    if not 0 <= deg <= K.dim:
        raise ParseError(f"degree {deg} outside 0..{K.dim}")
    G = cohomology(K, mod, deg).group
    raw = parts[2].strip()
    try:
        if raw.startswith("e"):
            i = int(raw[1:]) - 1
            if not 0 <= i < G.ngens:
                raise ParseError(f"{spec!r}: generator index out of range for {G}")
            coords = [int(j == i) for j in range(G.ngens)]
        else:
            vals = [int(v) for v in raw.split(",") if v.strip()]
            if len(vals) == 1 and G.ngens > 1:
                vals = vals + [0] * (G.ngens - 1)
            coords = vals
    except ValueError as exc:
        raise ParseError(f"bad coordinates in {spec!r}") from exc
    if len(coords) != G.ngens:
        raise ParseError(f"{spec!r}: {G} needs {G.ngens} coordinates")
    return deg, mod, G.reduce(coords)


def _digest(payload: Any) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True, default=str).encode()).hexdigest()[:16]


def _complex_digest(K: SimplicialComplex) -> str:
    return _digest(K.to_dict())


# -- reports ------------------------------------------------------------------


def report(command: str, argv: Sequence[str], inputs: Any, results: Any, provenance: dict, t0: float) -> dict:
    return {
        "command": command,
        "argv": list(argv),
        "inputs_digest": _digest(inputs),
        "results": results,
        "provenance": provenance,
        "wall_time": round(time.perf_counter() - t0, 4),
    }


def _emit(rep: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(rep, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


# -- commands -----------------------------------------------------------------


def cmd_cohomology(args, argv) -> int:
    t0 = time.perf_counter()
    K = read_complex(args.complex)
    mod = parse_coeff(args.coeff)
    degs = parse_degrees(args.degrees) if args.degrees else range(K.dim + 1)
    out, lines = [], [f"complex {K.name or args.complex}: f-vector {K.f_vector}"]
    for d in degs:
        if d < 0 or d > K.dim:
            out.append({"degree": d, "group": "0", "invariant_factors": [], "generators": []})
            lines.append(f"H^{d} = 0")
            continue
        H = cohomology(K, mod, d)
        gens = [{"invariant": f, "support": {str(i): v for i, v in enumerate(r.values) if v}}
                for f, r in zip(H.group.invariant_factors, H.reps)]
        out.append({"degree": d, "group": str(H.group), "invariant_factors": list(H.group.invariant_factors),
                    "generators": gens})
        lines.append(f"H^{d}({'Z' if mod == 0 else f'Z/{mod}'}) = {H.group}")
        for i, g in enumerate(gens, 1):
            shown = ", ".join(f"{K.simplices[d][int(k)]}:{v}" for k, v in list(g["support"].items())[:6])
            more = " ..." if len(g["support"]) > 6 else ""
            lines.append(f"  e{i} (order {g['invariant'] or 'inf'}): {shown}{more}")
    prov = {"groups": "exact"}
    rep = report("cohomology", argv, {"complex": _complex_digest(K), "coeff": mod, "degrees": list(degs)},
                 {"complex": K.name, "coeff": args.coeff, "cohomology": out}, prov, t0)
    _emit(rep, args.json, lines)
    return EXIT_OK


def _period_source(args):
    if args.model:
        if args.complex:
            raise ParseError("give either --model or --complex")
        if args.model == "kn":
            if args.n is None:
                raise ParseError("--model kn needs --n")
            top = args.dim if args.dim in (6, 8) else 8
            return ahss.kn_model(args.n, top), None, None, {"model": "kn", "n": args.n}
        try:
            m = ahss.SymbolicModel.load(args.model)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{args.model}: malformed JSON ({exc})") from exc
        except OSError as exc:
            raise ParseError(f"{args.model}: {exc}") from exc
        return m, None, None, {"model": m.to_dict()}
    if not args.complex:
        raise ParseError("give --model or --complex")
    K = read_complex(args.complex)
    if not args.alpha:
        raise ParseError("--complex needs --alpha")
    deg, mod, alpha = parse_class(K, args.alpha)
    if deg != 3 or mod != 0:
        raise ParseError("--alpha must be an integral degree-3 class, e.g. 3:z:e1")
    xi = None
    if args.xi:
        d2, m2, c2 = parse_class(K, args.xi)
        if d2 != 2 or m2 < 2:
            raise ParseError("--xi must be a mod-n degree-2 class, e.g. 2:z/5:1")
        xi = cohomology(K, m2, 2).representative(c2)
    return K, alpha, xi, {"complex": _complex_digest(K), "alpha": list(alpha), "xi": args.xi}


def cmd_period_vector(args, argv) -> int:
    t0 = time.perf_counter()
    src, alpha, xi, inputs = _period_source(args)
    dim = args.dim if args.dim is not None else ahss._dim(src)
    pv = ahss.period_vector(src, alpha, dim, xi, kind=args.kind)
    verdict = None
    if dim % 2 == 0 and pv.exact:
        verdict = bounds.tpic_verdict(pv.entries[0], pv.index, dim)
    res = {"vector": pv.entries, "index": pv.index, "dimension": dim, "tpic": verdict, "notes": pv.notes}
    prov = {"vector": pv.provenance, "index": "exact" if pv.exact else "theorem-bound"}
    lines = [f"period vector ({', '.join(map(str, pv.entries))})  [{', '.join(pv.provenance)}]",
             f"index {pv.index}{'' if pv.exact else ' (theorem bound)'}"]
    if verdict:
        lines.append(f"TPIC (ind | per^{dim // 2 - 1}): {verdict}")
    lines += [f"note: {n}" for n in pv.notes]
    _emit(report("period-vector", argv, {**inputs, "dim": dim, "kind": args.kind}, res, prov, t0), args.json, lines)
    return EXIT_OK


def cmd_bounds(args, argv) -> int:
    t0 = time.perf_counter()
    kind = {"manifold": "orientable_manifold", "complex": "complex"}[args.kind]
    B = bounds.index_bound(args.n, bounds.BoundContext(args.dim, kind))
    res: dict[str, Any] = {"n": args.n, "dim": args.dim, "kind": args.kind, "bound": B,
                           "tpic_threshold": bounds.tpic_threshold(args.n, args.dim)}
    prov = {"bound": "theorem-bound", "tpic_threshold": "exact"}
    try:
        res["sharp_kn_index"] = bounds.sharp_kn_index(args.n, args.dim)
        prov["sharp_kn_index"] = "exact"
    except bounds.NoTheorem:
        res["sharp_kn_index"] = None
    lines = [f"ind(alpha) | {B} for period {args.n} on a {args.dim}-dimensional {args.kind}",
             f"sharp K_{args.n} value: {res['sharp_kn_index']}",
             f"TPIC threshold n^{args.dim // 2 - 1} = {res['tpic_threshold']}"]
    _emit(report("bounds", argv, {"n": args.n, "dim": args.dim, "kind": kind}, res, prov, t0), args.json, lines)
    return EXIT_OK


def _q(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def cmd_linking(args, argv) -> int:
    t0 = time.perf_counter()
    K = read_complex(args.complex)
    fc = fundamental_class(K)
    lp = forms.linking_pairing(K, fc, args.degree)
    mat = [[_q(v) for v in row] for row in lp.matrix]
    res = {"degree": args.degree, "source": str(lp.source), "target": str(lp.target), "matrix": mat,
           "perfect": lp.is_perfect}
    lines = [f"b: TH^{args.degree} = {lp.source} x TH^{K.dim - args.degree + 1} = {lp.target} -> Q/Z",
             *("  [" + "  ".join(r) + "]" for r in mat),
             f"perfect: {str(lp.is_perfect).lower()}"]
    _emit(report("linking", argv, {"complex": _complex_digest(K), "degree": args.degree}, res,
                 {"matrix": "exact", "perfect": "exact"}, t0), args.json, lines)
    return EXIT_OK


def random_form(dim: int, rng: random.Random) -> forms.TrilinearForm:
    ent = {}
    for i in range(dim):
        for j in range(i, dim):
            for k in range(j, dim):
                v = rng.randrange(3)
                if v:
                    ent[(i, j, k)] = v
    return forms.TrilinearForm(dim, ent)


def cmd_trilinear(args, argv) -> int:
    t0 = time.perf_counter()
    if args.form:
        try:
            f = forms.TrilinearForm.load(args.form)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{args.form}: malformed JSON ({exc})") from exc
        except OSError as exc:
            raise ParseError(f"{args.form}: {exc}") from exc
        except forms.InvalidForm as exc:
            raise ParseError(str(exc)) from exc
    elif args.random is not None:
        f = random_form(args.random, random.Random(args.seed))
    else:
        raise ParseError("give --form FILE or --random DIM")
    dec = forms.decompose(f)
    res: dict[str, Any] = {"form": f.to_dict(), "radical": dec.radical, "radical_dim": len(dec.radical),
                           "radical_is_all": len(dec.radical) == f.dim,
                           "gamma": forms.characteristic_element(f)}
    lines = [f"dim {f.dim}, radical dim {len(dec.radical)}", f"gamma = {res['gamma']}"]
    if args.witness:
        u, v = forms.second_adjoint_witness(f)
        ok = all(f(u, v, [int(i == j) for i in range(f.dim)]) == res["gamma"][j] for j in range(f.dim))
        res["witness"] = {"u": u, "v": v, "verified": ok}
        lines.append(f"witness u={u} v={v} verified={str(ok).lower()}")
    _emit(report("trilinear", argv, {"form": f.to_dict()}, res, {"all": "exact"}, t0), args.json, lines)
    return EXIT_OK


def cmd_admissible(args, argv) -> int:
    t0 = time.perf_counter()
    try:
        vec = [int(v) for v in args.vector.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad vector {args.vector!r}") from exc
    v = bounds.admissible(vec, args.n)
    res = {"vector": vec, "status": v.status, "reasons": list(v.reasons),
           "registry": None if v.registry is None else
           {"vector": list(v.registry.vector), "realization": v.registry.realization,
            "properties": v.registry.properties}}
    lines = [f"({', '.join(map(str, vec))}): {v.status}", *(f"  - {r}" for r in v.reasons)]
    if v.registry:
        lines.append(f"  registry: {v.registry.properties}")
    _emit(report("admissible", argv, {"vector": vec, "n": args.n}, res,
                 {"status": "registry" if v.registry else "theorem-bound"}, t0), args.json, lines)
    return EXIT_OK


def cmd_build(args, argv) -> int:
    t0 = time.perf_counter()
    k = args.kind
    ops = args.args
    try:
        if k == "sphere":
            K = cx.boundary_of_simplex(int(ops[0]) + 1)
        elif k == "lens":
            K = cx.lens_space(int(ops[0]), int(ops[1]) if len(ops) > 1 else 1)
        elif k == "rp2":
            K = cx.rp2()
        elif k == "rp4":
            K = cx.rp4()
        elif k == "cone":
            K = cx.cone(read_complex(ops[0]))
        elif k == "suspension":
            K = cx.suspension(read_complex(ops[0]))
        elif k == "product":
            K = cx.product(read_complex(ops[0]), read_complex(ops[1]))
        elif k == "catalog":
            K = read_complex("builtin:" + ops[0])
        else:
            raise ParseError(f"unknown construction {k!r}")
    except (IndexError, ValueError) as exc:
        if isinstance(exc, (ParseError, InvalidComplex)):
            raise
        raise ParseError(f"bad arguments for {k}: {ops}") from exc
    save_complex(K, args.output)
    res = {"name": K.name, "f_vector": K.f_vector, "output": args.output}
    _emit(report("build", argv, {"kind": k, "args": ops}, res, {"f_vector": "exact"}, t0), args.json,
          [f"wrote {K.name} f={K.f_vector} to {args.output}"])
    return EXIT_OK


# -- main ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="perindex", description="Period vectors and index bounds for topological Brauer classes.")
    p.add_argument("--seed", type=int, default=0, help="seed for randomised operations")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--json", action="store_true", help="machine-readable report")
        s.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        s.set_defaults(func=fn)
        return s

    s = add("cohomology", cmd_cohomology, "cohomology groups with generator representatives")
    s.add_argument("--complex", required=True, help="JSON file or builtin:NAME")
    s.add_argument("--coeff", default="z")
    s.add_argument("--degrees", help="a..b or a single degree")

    s = add("period-vector", cmd_period_vector, "period vector with provenance")
    s.add_argument("--model", help="'kn' or a model JSON file")
    s.add_argument("--n", type=int)
    s.add_argument("--complex")
    s.add_argument("--alpha", help="class SPEC, e.g. 3:z:e1")
    s.add_argument("--xi", help="class SPEC, e.g. 2:z/5:1")
    s.add_argument("--dim", type=int)
    s.add_argument("--kind", choices=bounds.KINDS, default="complex")

    s = add("bounds", cmd_bounds, "index bounds")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--kind", choices=("manifold", "complex"), default="complex")

    s = add("linking", cmd_linking, "torsion linking pairing")
    s.add_argument("--complex", required=True)
    s.add_argument("--degree", type=int, required=True)

    s = add("trilinear", cmd_trilinear, "trilinear forms over F_3")
    s.add_argument("--form")
    s.add_argument("--random", type=int, metavar="DIM")
    s.add_argument("--witness", action="store_true")

    s = add("admissible", cmd_admissible, "admissibility of a period vector")
    s.add_argument("--vector", required=True)
    s.add_argument("--n", type=int)

    s = add("build", cmd_build, "write a complex to JSON")
    s.add_argument("kind", choices=("sphere", "lens", "rp2", "rp4", "cone", "suspension", "product", "catalog"))
    s.add_argument("args", nargs="*")
    s.add_argument("-o", "--output", required=True)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, argv)
    except ParseError as exc:
        print(f"perindex: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ahss.NotTorsion as exc:
        print(f"perindex: {exc}", file=sys.stderr)
        return EXIT_NOT_TORSION
    except bounds.NoTheorem as exc:
        print(f"perindex: no theorem: {exc}", file=sys.stderr)
        return EXIT_NO_THEOREM
    except (InvalidComplex, NotOrientable, NotPseudomanifold, ahss.ModelInvalid, ahss.BocksteinMismatch,
            forms.InvalidForm) as exc:
        print(f"perindex: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except SystemExit as exc:   # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
