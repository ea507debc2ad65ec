"""Command-line entry point.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from pathlib import Path

from .coxeter import CoxeterError, build_system
from .juyumaya import (CATALOG, GroupHom, JuyumayaError, JuyumayaTriple, build_e_from_triple, catalog,
                       centralizer_bruteforce, centralizer_structure, check_JM, check_mih, generated_subgroup,
                       juyumaya_datum, k_sets, tie_from_masks)
from .marin import MarinDatum, MarinError
from .presentations import (KINDS, PresentationError, build_algebra, corrupt, emit_presentation,
                            parse_relations, verify_presentation)
from .scalars import ParameterMap, ScalarError
from .subsystems import SubsystemSpace

CONFIG_KEYS = {"command", "system", "kind", "arg", "map", "n", "mode", "format", "threads", "bound", "seed",
               "samples", "relations", "full", "params"}


class UsageError(Exception):
    pass


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, int(args.threads))
    env = os.environ.get("BRAIDTIES_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"BRAIDTIES_THREADS must be an integer, got {env!r}") from None
    return 1


def _emit(args, data: dict, text: str):
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _timing(label: str, start: float):
    print(f"time {label}: {time.perf_counter() - start:.3f} s", file=sys.stderr)


def _finite(label: str):
    W = build_system(label)
    if not W.is_finite:
        raise UsageError(f"{label} is infinite; root subsystems are only enumerated for finite systems")
    return W


# ---------------------------------------------------------------------------
# algebra specs


def algebra_from_spec(spec: str, params: str | None = None):
    """``Hecke(A2)`` / ``hecke:A2``, ``typeA:3`` (any presentation kind),
    ``map:B-to-A:3`` (catalog datum) or a bare type label (C_W)."""
    spec = spec.strip()
    low = spec.lower()
    if low.startswith("hecke(") and spec.endswith(")"):
        label = spec[6:-1]
        return MarinDatum.hecke(_finite(label), _params(_finite(label), params)).marin_algebra()
    if low.startswith("hecke:"):
        label = spec[6:]
        return MarinDatum.hecke(_finite(label), _params(_finite(label), params)).marin_algebra()
    if low.startswith("map:"):
        parts = spec.split(":")
        name = parts[1]
        n = parts[2] if len(parts) > 2 else None
        entry = catalog(name, n)
        if not entry.target.is_finite:
            raise UsageError(f"target of {name} is infinite")
        return juyumaya_datum(entry.phi, entry.tie, _params(entry.source, params)).marin_algebra()
    if ":" in spec:
        kind, arg = spec.split(":", 1)
        if kind not in KINDS:
            raise UsageError(f"unknown algebra kind {kind!r}; known: {', '.join(KINDS)}")
        return build_algebra(kind, arg).algebra
    return build_algebra("marin-CW", spec).algebra


def _params(W, names: str | None) -> ParameterMap:
    if not names:
        return ParameterMap.per_class(W)
    return ParameterMap.per_class(W, [x.strip() for x in names.split(",") if x.strip()])


# ---------------------------------------------------------------------------
# commands


def cmd_bell(args) -> int:
    start = time.perf_counter()
    W = _finite(args.system)
    monoid = SubsystemSpace.of(W).enumerate()
    bell, order = len(monoid), W.order()
    _emit(args, {"system": args.system, "bell": bell, "order": order, "product": bell * order},
          f"Bell({args.system}) = {bell}\n|W| = {order}\nBell(W)|W| = {bell * order}")
    _timing("bell", start)
    return 0


def cmd_dim(args) -> int:
    start = time.perf_counter()
    alg = algebra_from_spec(args.spec, args.params)
    d = alg.datum
    free = d.check_free_condition()
    data = {"spec": args.spec, "monoid_size": len(d.algebra.monoid), "order": alg.system.order(),
            "dimension": d.dimension(), "free": free.ok}
    _emit(args, data, f"|E| = {data['monoid_size']}\n|W| = {data['order']}\ndimension = {data['dimension']}\n"
                      f"{free.line()}")
    _timing("dim", start)
    return 0 if free.ok else 1


def cmd_verify(args) -> int:
    start = time.perf_counter()
    p = emit_presentation(args.kind, args.arg, full=args.full)
    if args.relations:
        text = _read(args.relations)
        rels = parse_relations(text)
        for r in rels:
            p = corrupt(p, r)
    con = build_algebra(args.kind, args.arg)
    report = verify_presentation(p, con, threads=_threads(args))
    if args.samples:
        report.extra.append(_random_associativity(con.algebra, args.samples, args.seed))
    _emit(args, report.to_json(), report.to_text() + f"\ndimension = {report.dimension}")
    _timing("verify", start)
    return 0 if report.ok else 1


def _random_associativity(alg, samples: int, seed: int):
    from .certificates import CheckResult

    rng = random.Random(seed)
    elems = alg.system.elements()
    ties = [alg.coeff(b) for b in alg.A.basis_elements()]

    def rnd():
        return ties[rng.randrange(len(ties))] * alg.basis_element(elems[rng.randrange(len(elems))])

    for k in range(samples):
        x, y, z = rnd(), rnd(), rnd()
        if (x * y) * z != x * (y * z):
            return CheckResult(False, "associativity", k + 1, {"x": str(x), "y": str(y), "z": str(z)})
    return CheckResult(True, "associativity", samples, justification=f"random triples, seed {seed}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _custom_map(path: str):
    """JSON map file: source, target, phi (generator -> word), optional
    representatives, t and tie (generator -> list of positive roots)."""
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: {exc}") from None
    for key in ("source", "target", "phi"):
        if key not in data:
            raise UsageError(f"{path}: missing key {key!r}")
    unknown = set(data) - {"source", "target", "phi", "representatives", "t", "tie", "source_names",
                           "target_names"}
    if unknown:
        raise UsageError(f"{path}: unknown keys {sorted(unknown)}")
    W = build_system(data["source"], names=data.get("source_names"))
    U = build_system(data["target"], names=data.get("target_names"))
    phi = GroupHom.from_map(W, U, data["phi"], check=False)
    return W, U, phi, data


def cmd_check_juyumaya(args) -> int:
    start = time.perf_counter()
    steps = []
    failed = None
    entry = None
    if args.map_file:
        W, U, phi, data = _custom_map(args.map_file)
        hom = phi.check()
        steps.append(hom)
        if hom.ok:
            reps = tuple(W.parse_word(" ".join(data["representatives"]))) if "representatives" in data else tuple(
                c[0] for c in W.conjugacy_classes_of_generators())
            tmap = {W.names.index(k): U.names.index(v) for k, v in data.get("t", {}).items()}
            for s in reps:
                if s not in tmap and len(phi.words[s]) == 1:
                    tmap[s] = phi.words[s][0]
            if "tie" in data:
                sp = SubsystemSpace.of(U)
                tie = tie_from_masks(phi, {W.names.index(k): sp.closure(
                    [tuple(r) for r in v]).mask for k, v in data["tie"].items()})
            else:
                missing = [W.names[s] for s in reps if s not in tmap]
                if missing:
                    raise UsageError(f"no t given for kernel representatives {missing}")
                tie = build_e_from_triple(JuyumayaTriple(phi, reps, tmap))
            triple = JuyumayaTriple(phi, reps, tmap) if set(tmap) >= set(reps) else None
    else:
        entry = catalog(args.name, args.n)
        phi, tie, triple = entry.phi, entry.tie, entry.triple
        steps.extend(entry.witnesses)
        steps.append(_lemma_step(entry))
    if all(s.ok for s in steps):
        steps.append(tie.certificate)
        if args.mode == "triple" and triple is None:
            raise UsageError("triple mode needs representatives and t for every representative")
        if args.mode == "triple" and phi.source.is_finite:
            ks = k_sets(phi, triple.reps)
            steps.append(triple.check(ks))
        jm = check_JM(phi, tie, args.mode, triple=triple, bound=args.bound, threads=_threads(args),
                      reps=triple.reps if (args.mode == "bruteforce" and triple is not None
                                          and phi.source.is_finite) else None)
        steps.append(jm)
        if jm.ok and phi.target.is_finite:
            datum = juyumaya_datum(phi, tie)
            steps.append(check_mih(phi, tie, datum))
            steps.append(datum.check_free_condition())
            dims = {"monoid_size": len(datum.algebra.monoid),
                    "dimension": datum.dimension() if phi.source.is_finite else None}
        else:
            dims = {}
    else:
        dims = {}
    for s in steps:
        if not s.ok:
            failed = s
            break
    data = {"map": entry.describe() if entry else {"phi": phi.describe()},
            "ok": failed is None, "steps": [s.to_json() for s in steps], **dims}
    text = "\n".join(s.line() for s in steps)
    if dims:
        text += f"\n|E| = {dims['monoid_size']}"
        if dims.get("dimension"):
            text += f"\ndimension = {dims['dimension']}"
    _emit(args, data, text)
    _timing("check-juyumaya", start)
    return 0 if failed is None else 1


def _lemma_step(entry):
    from .certificates import CheckResult

    return CheckResult(True, "pair", len(entry.reps), justification=entry.lemma,
                       witness={"t": {entry.source.names[s]: entry.target.names[t] for s, t in entry.t.items()}})


def cmd_centralizer(args) -> int:
    start = time.perf_counter()
    W = build_system(args.system)
    s = W.parse_word(args.generator)
    if len(s) != 1:
        raise UsageError("give a single simple reflection")
    s = s[0]
    st = centralizer_structure(W, s)
    brute = centralizer_bruteforce(W, W.gens[s])
    gen = generated_subgroup(W, st.reflections)
    agree = gen == {x.form for x in brute} if st.y_rank == 0 else None
    data = {**st.to_json(W), "order": len(brute), "generated_order": len(gen), "agree": agree}
    text = (f"|C_W({W.names[s]})| = {len(brute)}\n"
            f"reflection generators: {', '.join(data['reflection_words'])}\n"
            f"generated subgroup order = {len(gen)}\nfree rank of complement = {st.y_rank}")
    _emit(args, data, text)
    _timing("centralizer", start)
    return 0 if agree is not False else 1


def cmd_multiply(args) -> int:
    start = time.perf_counter()
    alg = algebra_from_spec(args.spec, args.params)
    x = alg.element_from_word(args.left)
    y = alg.element_from_word(args.right)
    z = x * y
    _emit(args, {"spec": args.spec, "left": args.left, "right": args.right, "product": z.to_json(),
                 "text": str(z)}, str(z))
    _timing("multiply", start)
    return 0


def cmd_hecke_image(args) -> int:
    alg = algebra_from_spec(args.spec, args.params)
    x = alg.element_from_word(args.word)
    h = alg.hecke_image(x)
    _emit(args, {"spec": args.spec, "word": args.word, "image": h.to_json(), "text": str(h)}, str(h))
    return 0


def cmd_export(args) -> int:
    p = emit_presentation(args.kind, args.arg, full=args.full)
    _emit(args, p.to_json(), p.to_text())
    return 0


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=None)
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--bound", type=int, default=None, help="length bound for affine sweeps")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--config", default=None, help="JSON file of default options")

    ap = argparse.ArgumentParser(prog="braidties", description="Marin rings and braids-and-ties algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bell", parents=[common], help="count root subsystems")
    p.add_argument("system")
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("dim", parents=[common], help="rank of a Marin algebra")
    p.add_argument("spec")
    p.add_argument("--params", default=None)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("verify", parents=[common], help="verify a presentation")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("arg", nargs="?")
    p.add_argument("--relations", default=None, help="file of extra relations 'lhs = rhs'")
    p.add_argument("--full", action="store_true", help="include the families quantified over W")
    p.add_argument("--samples", type=int, default=0, help="random associativity triples")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-juyumaya", parents=[common], help="certify a Juyumaya map")
    p.add_argument("name", nargs="?", help=f"one of {', '.join(CATALOG)}")
    p.add_argument("n", nargs="?")
    p.add_argument("--map", dest="map_file", default=None, help="JSON file describing a custom map")
    p.add_argument("--mode", choices=("bruteforce", "triple"), default=None)
    p.set_defaults(func=cmd_check_juyumaya)

    p = sub.add_parser("centralizer", parents=[common], help="centralizer of a simple reflection")
    p.add_argument("system")
    p.add_argument("generator")
    p.set_defaults(func=cmd_centralizer)

    p = sub.add_parser("multiply", parents=[common], help="normal form of a product")
    p.add_argument("spec")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--params", default=None)
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("hecke-image", parents=[common], help="image in the Iwahori-Hecke quotient")
    p.add_argument("spec")
    p.add_argument("word")
    p.add_argument("--params", default=None)
    p.set_defaults(func=cmd_hecke_image)

    p = sub.add_parser("export-presentation", parents=[common], help="print a presentation")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("arg", nargs="?")
    p.add_argument("--full", action="store_true")
    p.set_defaults(func=cmd_export)
    return ap


_DEFAULTS = {"format": "text", "bound": 8, "seed": 0, "mode": "bruteforce"}


def _apply_config(args):
    if args.config:
        try:
            cfg = json.loads(_read(args.config))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
        unknown = set(cfg) - CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if "command" in cfg and cfg["command"] != args.command:
            raise UsageError(f"config is for {cfg['command']!r}, not {args.command!r}")
        alias = {"map": "map_file"}
        for key, value in cfg.items():
            if key == "command":
                continue
            attr = alias.get(key, key)
            if getattr(args, attr, None) in (None, False, 0):
                setattr(args, attr, value)
    for key, value in _DEFAULTS.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    if args.format not in ("text", "json"):
        raise UsageError(f"format must be text or json, got {args.format!r}")
    if args.command == "check-juyumaya" and not args.map_file and not args.name:
        raise UsageError("give a catalog name or --map FILE")
    if args.command == "check-juyumaya" and args.mode not in ("bruteforce", "triple"):
        raise UsageError(f"unknown mode {args.mode!r}")


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        _apply_config(args)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CoxeterError, ScalarError, MarinError, JuyumayaError, PresentationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
