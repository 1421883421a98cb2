"""Command line interface.

Every command builds a Report.  Exit status: 0 when every check passes,
1 when a check fails, 2 on usage or parse errors.  FILE may be a path or a
catalog name.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from . import catalog
from .catalog import CATALOG, UnknownExample, load_example
from .drinfeld import (
    NEITHER,
    NotQFAType,
    ReorientationFailure,
    galois_map_quantum,
    prime_membership,
    semiclassical_specialize,
    vee_functor,
)
from .hopf import CheckReport, HopfPresentation, check_coideal_subalgebra, check_hopf_axioms, check_ideal_coideal
from .liebialg import (
    NotASubalgebra,
    Subspace,
    census,
    check_bialgebra,
    complementary_dual,
    galois_composite,
    is_coisotropic,
    is_subalgebra,
)
from .ncalg import ValidationError
from .parser import (
    PresentationSyntaxError,
    _linear_terms,
    format_bialgebra,
    format_presentation,
    parse_bialgebra,
    parse_expression,
    parse_presentation,
    tokenize,
)

SCHEMA_PATH = Path(__file__).resolve().parent / "data" / "report.schema.json"


class UsageError(Exception):
    pass


@dataclass
class SessionConfig:
    degree: int = 3
    bound: int = 4
    json: bool = False
    seed: int = 20240501
    golden_dir: Optional[Path] = None

    def __post_init__(self):
        if self.degree < 1 or self.bound < 1:
            raise UsageError("--degree and --bound must be at least 1")


@dataclass
class Report:
    operation: str
    input_digest: str
    verdict: str = "pass"
    witnesses: List[str] = field(default_factory=list)
    tables: Dict[str, object] = field(default_factory=dict)
    details: Dict[str, object] = field(default_factory=dict)

    def fail(self, witness: Optional[str] = None):
        self.verdict = "fail"
        if witness:
            self.witnesses.append(witness)

    def absorb(self, rep: CheckReport, prefix: str = ""):
        """Merge a CheckReport's statuses and witnesses."""
        for name, entry in rep.checks.items():
            self.details[prefix + name] = entry
            if entry["status"] == "fail":
                self.fail(f"{prefix}{name}: {entry.get('witness', 'failed')}")
            elif entry["status"] == "inconclusive" and self.verdict == "pass":
                self.verdict = "inconclusive"
                self.witnesses.append(f"{prefix}{name}: {entry.get('witness', 'inconclusive')}")

    def to_dict(self) -> dict:
        return {
            "operation": self.operation,
            "input_digest": self.input_digest,
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
            "tables": self.tables,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.operation}: {self.verdict}"]
        for w in self.witnesses:
            lines.append(f"  witness: {w}")
        for name, table in self.tables.items():
            lines.append(f"{name}:")
            if isinstance(table, dict):
                for k, v in table.items():
                    lines.append(f"  {k}: {v}")
            elif isinstance(table, list):
                lines.extend(f"  {v}" for v in table)
            else:
                lines.append(f"  {table}")
        return "\n".join(lines) + "\n"

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict == "pass" else 1


def digest(*parts: str) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode())
        h.update(b"\0")
    return h.hexdigest()


# -- input loading ---------------------------------------------------------------


def _read_source(spec: str) -> str:
    path = Path(spec)
    if path.exists():
        return path.read_text()
    if spec in CATALOG and CATALOG[spec][1]:
        return catalog.data_text(CATALOG[spec][1])
    # a bare catalog file name such as fq_sl2.alg
    if spec in {entry[1] for entry in CATALOG.values()}:
        return catalog.data_text(spec)
    raise UsageError(f"no such file or catalog entry: {spec}")


def load_presentation(spec: str) -> HopfPresentation:
    return parse_presentation(_read_source(spec))


def load_bialgebra(spec: str):
    return parse_bialgebra(_read_source(spec))


def _element(P: HopfPresentation, text: str):
    return P.algebra.element(parse_expression(text, P.algebra, 1))


def _subspace(g, text: str) -> Subspace:
    vecs = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        terms = _linear_terms(tokenize(part, 1), g.index, 1, wedge=False)
        vec = [0] * g.n
        for k, c in terms.items():
            vec[k] = c
        vecs.append(vec)
    return Subspace(g, vecs)


# -- commands ----------------------------------------------------------------------


def cmd_nf(args, cfg: SessionConfig) -> Report:
    P = load_presentation(args.file)
    rep = Report("nf", digest(format_presentation(P), args.expr))
    e = _element(P, args.expr)
    rep.tables["normal_form"] = str(e)
    return rep


def cmd_check_hopf(args, cfg):
    P = load_presentation(args.file)
    rep = Report("check-hopf", digest(format_presentation(P), str(cfg.degree)))
    rep.absorb(check_hopf_axioms(P, cfg.degree))
    rep.details["degree"] = cfg.degree
    return rep


def cmd_confluence(args, cfg):
    P = load_presentation(args.file)
    bound = 2 * cfg.degree
    rep = Report("confluence", digest(format_presentation(P), str(bound)))
    pairs = P.algebra.check_confluence(bound)
    rep.details["degree"] = bound
    rep.details["unresolved"] = len(pairs)
    for cp in pairs:
        rep.fail(cp.describe(P.algebra))
    return rep


def cmd_semiclassical(args, cfg):
    P = load_presentation(args.file)
    rep = Report("semiclassical", digest(format_presentation(P)))
    lim = semiclassical_specialize(P)
    rep.details["kind"] = lim.kind
    if lim.kind == NEITHER:
        rep.fail("limit is neither commutative nor cocommutative")
    key = "poisson_bracket" if lim.table and len(next(iter(lim.table))) == 2 else "cobracket"
    rep.tables[key] = lim.table_strings()
    if lim.bracket_table:
        rep.tables["lie_bracket"] = {",".join(k): str(v) for k, v in lim.bracket_table.items()}
    return rep


def cmd_vee(args, cfg):
    P = load_presentation(args.file)
    rep = Report("vee", digest(format_presentation(P), str(cfg.degree)))
    try:
        V = vee_functor(P, max_degree=cfg.degree)
    except (NotQFAType, ReorientationFailure) as exc:
        rep.fail(f"{type(exc).__name__}: {exc}")
        return rep
    rep.absorb(V.validation, "validation/")
    text = format_presentation(V)
    if args.output:
        Path(args.output).write_text(text)
        rep.details["output"] = str(args.output)
    else:
        rep.tables["presentation"] = text.splitlines()
    return rep


def cmd_prime_test(args, cfg):
    P = load_presentation(args.file)
    bound = args.bound or cfg.bound
    rep = Report("prime-test", digest(format_presentation(P), args.expr, str(bound)))
    m = prime_membership(_element(P, args.expr), P, bound)
    rep.details["result"] = m.verdict
    rep.details["bound"] = bound
    if not m.holds:
        rep.details["failing_n"] = m.failing_n
        rep.fail(f"n = {m.failing_n}: {m.witness}")
    return rep


def cmd_galois(args, cfg):
    P = load_presentation(args.file)
    gens = [s.strip() for s in args.ideal.split(",") if s.strip()]
    rep = Report("galois", digest(format_presentation(P), ",".join(gens), str(cfg.degree)))
    ideal = [_element(P, s) for s in gens]
    rep.absorb(check_ideal_coideal(P, ideal, cfg.degree), "type_I/")
    if rep.verdict == "fail":
        return rep
    V, T = galois_map_quantum(P, ideal)
    rep.tables["coideal_subalgebra_generators"] = [str(t) for t in T]
    rep.absorb(check_coideal_subalgebra(V, T, min(cfg.degree, 2)), "type_II/")
    return rep


def cmd_lie_check(args, cfg):
    g = load_bialgebra(args.file)
    rep = Report("lie check", digest(format_bialgebra(g)))
    rep.absorb(check_bialgebra(g))
    return rep


def cmd_lie_coisotropy(args, cfg):
    g = load_bialgebra(args.file)
    k = _subspace(g, args.sub)
    rep = Report("lie coisotropy", digest(format_bialgebra(g), str(k)))
    rep.tables["subspace"] = str(k)
    sub = is_subalgebra(k)
    rep.details["subalgebra"] = sub
    if not sub:
        rep.fail(f"{k} is not a subalgebra")
        return rep
    co = is_coisotropic(k)
    rep.details["coisotropic"] = co
    if not co:
        rep.fail(f"gamma({k}) is not inside k ^ g")
    return rep


def cmd_lie_galois(args, cfg):
    g = load_bialgebra(args.file)
    k = _subspace(g, args.sub)
    rep = Report("lie galois", digest(format_bialgebra(g), str(k)))
    try:
        cd = complementary_dual(k)
    except NotASubalgebra as exc:
        rep.fail(str(exc))
        return rep
    comp = galois_composite(k)
    co = is_coisotropic(k)
    fixed = comp == k
    rep.tables["subspace"] = str(k)
    rep.tables["complementary_dual"] = str(cd)
    rep.tables["galois_composite"] = str(comp)
    rep.details.update({"coisotropic": co, "fixed_point": fixed, "image_coisotropic": is_coisotropic(cd)})
    if co != fixed:
        rep.fail("coisotropy and the fixed-point property disagree")
    if not rep.details["image_coisotropic"]:
        rep.fail("complementary dual is not coisotropic")
    return rep


def cmd_lie_census(args, cfg):
    g = load_bialgebra(args.file)
    subs, seed = census(g, args.random, cfg.seed)
    rep = Report("lie census", digest(format_bialgebra(g), str(args.random), str(seed)))
    rep.details.update({"seed": seed, "subalgebras": len(subs)})
    mismatches = 0
    for k in subs:
        co = is_coisotropic(k)
        if co != (galois_composite(k) == k):
            mismatches += 1
            rep.fail(f"fixed-point mismatch at {k}")
        if not is_coisotropic(complementary_dual(k)):
            rep.fail(f"complementary dual of {k} is not coisotropic")
    rep.details["mismatches"] = mismatches
    return rep


def cmd_catalog_list(args, cfg):
    rep = Report("catalog list", digest(*CATALOG))
    rep.tables["catalog"] = {name: f"{kind}: {note}" for name, (kind, _, note) in CATALOG.items()}
    return rep


def cmd_catalog_stokes3(args, cfg):
    rep = Report("catalog stokes3", digest("stokes3", str(bool(args.verify))))
    if args.regenerate_golden:
        rep.details["golden_digests"] = catalog.write_golden(cfg.golden_dir)
    table = catalog.stokes_bracket(3)
    rep.tables["bracket"] = table.lines()
    golden = catalog.read_golden(directory=cfg.golden_dir)
    rep.details["golden_match"] = golden == table
    if golden != table:
        rep.fail(f"differs from golden file on {golden.differences(table)}")
    if args.verify:
        out = catalog.verify_stokes_quantization()
        rep.details["match"] = out["match"]
        rep.details["checks"] = out["checks"]
        rep.tables["pairs"] = out["pairs"]
        rep.details["oracle_digests"] = out["oracle_digests"]
        for name, c in out["checks"].items():
            if c["status"] != "pass":
                rep.fail(f"{name}: {c['status']}")
    return rep


# -- argument parsing --------------------------------------------------------------


def _common(p: argparse.ArgumentParser, suppress: bool):
    d = argparse.SUPPRESS
    p.add_argument("--degree", type=int, default=d if suppress else 3, help="degree bound D")
    p.add_argument("--json", action="store_true", default=d if suppress else False, help="json output")
    p.add_argument("--seed", type=int, default=d if suppress else 20240501, help="seed for censuses")
    p.add_argument("--golden-dir", type=Path, default=d if suppress else None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qduality", description="Quantum duality toolkit.")
    _common(parser, False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, target=sub):
        p = target.add_parser(name, help=help_text)
        _common(p, True)
        p.set_defaults(func=func)
        return p

    p = add("nf", cmd_nf, "normal form of an expression")
    p.add_argument("file")
    p.add_argument("--expr", required=True)
    add("check-hopf", cmd_check_hopf, "check Hopf axioms").add_argument("file")
    add("confluence", cmd_confluence, "critical pairs up to degree 2D").add_argument("file")
    add("semiclassical", cmd_semiclassical, "q = 1 limit and its structure").add_argument("file")
    p = add("vee", cmd_vee, "apply the vee functor")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p = add("prime-test", cmd_prime_test, "bounded membership in H'")
    p.add_argument("file")
    p.add_argument("--expr", required=True)
    p.add_argument("--bound", type=int)
    p = add("galois", cmd_galois, "quantum Galois map on an ideal")
    p.add_argument("file")
    p.add_argument("--ideal", required=True)

    lie = sub.add_parser("lie", help="Lie bialgebra commands")
    lsub = lie.add_subparsers(dest="lie_command", required=True)
    add("check", cmd_lie_check, "validate a Lie bialgebra", lsub).add_argument("file")
    for name, func in (("coisotropy", cmd_lie_coisotropy), ("galois", cmd_lie_galois)):
        p = add(name, func, f"{name} of a subspace", lsub)
        p.add_argument("file")
        p.add_argument("--sub", required=True, help="comma-separated vectors, e.g. 'h,e' or 'E12-E21'")
    p = add("census", cmd_lie_census, "fixed-point census of subalgebras", lsub)
    p.add_argument("file")
    p.add_argument("--random", type=int, default=100)

    cat = sub.add_parser("catalog", help="built-in examples")
    csub = cat.add_subparsers(dest="catalog_command", required=True)
    add("list", cmd_catalog_list, "list catalog entries", csub)
    p = add("stokes3", cmd_catalog_stokes3, "Stokes brackets for n = 3", csub)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--regenerate-golden", action="store_true")
    return parser


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = SessionConfig(degree=args.degree, json=args.json, seed=args.seed, golden_dir=args.golden_dir)
        rep = args.func(args, cfg)
    except (UsageError, PresentationSyntaxError, ValidationError, UnknownExample, OSError) as exc:
        err.write(f"qduality: error: {exc}\n")
        return 2
    out.write(rep.to_json() if cfg.json else rep.to_text())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
