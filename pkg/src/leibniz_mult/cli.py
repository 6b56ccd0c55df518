"""``leibniz-mult`` command-line front end.

Exit codes: 0 success, 1 the input failed a mathematical check, 2 input or
usage error, 3 finding (a computed result contradicts a theorem).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__, algebra_file
from .algebra_file import AlgebraFileError
from .cohomology2 import (
    NotCentralError,
    NotLeibnizError,
    check_extended,
    check_five_term,
    check_ganea,
    check_stallings,
    h2,
)
from .exactlin import Subspace
from .extensions import Finding, cover, criteria_report, z_star_routes
from .leibniz_core import (
    CATALOG_NAMES,
    LeibnizAlgebra,
    catalog,
    center,
    derived,
    is_central_ideal,
    random_nilpotent,
    verify_leibniz,
)
from .suite import CHECKS, SuiteReport, central_ideals, corpus, run_algebra

log = logging.getLogger("leibniz_mult")

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_FINDING = 0, 1, 2, 3
DEFAULT_MAX_DIM = 12


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


# ------------------------------------------------------------------ input


def load_algebra(args) -> LeibnizAlgebra:
    """Read ``args.path``; ``catalog:NAME`` selects a built-in algebra."""
    src = args.path
    if src.startswith("catalog:"):
        field = algebra_file.parse_field(args.field or "Q")
        try:
            L = catalog(src[len("catalog:"):], field)
        except KeyError:
            raise UsageError(f"unknown catalog algebra {src!r}; known: {', '.join(CATALOG_NAMES)}") from None
    else:
        L = algebra_file.load(src)
    if L.dim > args.max_dim:
        raise UsageError(f"dim {L.dim} exceeds --max-dim {args.max_dim}")
    if not args.skip_check:
        bad = verify_leibniz(L)
        if bad:
            raise CheckFailed(_violation_text(bad))
    return L


def _violation_text(bad) -> str:
    shown = ", ".join(f"({i + 1},{j + 1},{k + 1})" for i, j, k in bad[:20])
    more = f" and {len(bad) - 20} more" if len(bad) > 20 else ""
    return f"Leibniz identity fails on {len(bad)} basis triple(s): {shown}{more}"


_TERM = re.compile(r"([+-]?)\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*?\s*)?e([0-9]+)")


def parse_ideal(text: str, L: LeibnizAlgebra) -> Subspace:
    """Comma-separated vectors such as ``e2``, ``e1+e3,e2`` or ``2*e1-1/2*e3``.
    ``0`` or an empty string is the zero subspace."""
    F, n = L.field, L.dim
    vecs = []
    for part in text.split(","):
        part = part.replace(" ", "")
        if part in ("", "0"):
            continue
        v = [F.zero] * n
        pos = 0
        for m in _TERM.finditer(part):
            if m.start() != pos or (pos and not m.group(1)):
                raise UsageError(f"cannot parse ideal vector {part!r}")
            pos = m.end()
            k = int(m.group(3))
            if not 1 <= k <= n:
                raise UsageError(f"basis index e{k} out of range 1..{n}")
            c = F(Fraction(m.group(2) or "1"))
            v[k - 1] = F(v[k - 1] + (-c if m.group(1) == "-" else c))
        if pos != len(part):
            raise UsageError(f"cannot parse ideal vector {part!r}")
        vecs.append(v)
    return Subspace.span(F, n, vecs)


def _ideals(args, L: LeibnizAlgebra) -> list[Subspace]:
    if args.all_central:
        return central_ideals(L, args.ideal_cap)
    Z = parse_ideal(args.ideal, L) if args.ideal is not None else center(L)
    if not is_central_ideal(L, Z):
        raise UsageError("the ideal is not central")
    return [Z]


# ------------------------------------------------------------------ output


def _basis(L: LeibnizAlgebra, S: Subspace) -> list:
    return [[L.field.format(a) for a in r] for r in S.rows]


def _pretty_vec(L: LeibnizAlgebra, v) -> str:
    out = ""
    for k, a in enumerate(v):
        if not a:
            continue
        c = str(L.field.format(a))
        sign = "-" if c.startswith("-") else "+"
        c = c.lstrip("-")
        out += f"{sign}{'' if c == '1' else c + '*'}e{k + 1}"
    return out.lstrip("+") or "0"


def _pretty(L: LeibnizAlgebra, S: Subspace) -> str:
    return "span{" + ", ".join(_pretty_vec(L, r) for r in S.rows) + "}" if S.dim else "0"


def _input_info(L: LeibnizAlgebra) -> dict:
    return {"digest": algebra_file.digest(L), "name": L.name,
            "field": algebra_file.field_descriptor(L.field), "dim": L.dim}


def _dims(L: LeibnizAlgebra) -> dict:
    m = h2(L, 1).dim
    return {"L": L.dim, "derived": derived(L).dim, "center": center(L).dim, "H2": m, "M": m}


class Report:
    def __init__(self, command: str, L: LeibnizAlgebra | None = None, seed=None):
        self.data = {"command": command}
        if L is not None:
            self.data["input"] = _input_info(L)
        if seed is not None:
            self.data["seed"] = seed
        self.lines: list[str] = []
        self._t0 = time.perf_counter()

    def __setitem__(self, key, value):
        self.data[key] = value

    def say(self, line: str):
        self.lines.append(line)

    def emit(self, args):
        self.data["timings"] = {"total_s": round(time.perf_counter() - self._t0, 4)}
        text = json.dumps(self.data, indent=2) + "\n"
        # cover and random use --out for the algebra file itself
        target = args.report if args.command in ("cover", "random") else args.out
        if target:
            Path(target).write_text(text)
        if args.json:
            sys.stdout.write(text)
        else:
            for line in self.lines:
                print(line)


def _yn(b: bool) -> str:
    return "yes" if b else "no"


# ------------------------------------------------------------------ commands


def cmd_check(args) -> int:
    L = load_algebra(argparse.Namespace(**{**vars(args), "skip_check": True}))
    rep = Report("check", L)
    bad = verify_leibniz(L)
    rep["violations"] = [[i + 1, j + 1, k + 1] for i, j, k in bad]
    rep["verdicts"] = {"leibniz": not bad}
    rep.say(f"{L.name or args.path}: dim {L.dim} over {L.field}")
    rep.say("Leibniz identity holds" if not bad else _violation_text(bad))
    rep.emit(args)
    return EXIT_OK if not bad else EXIT_CHECK


def cmd_invariants(args) -> int:
    L = load_algebra(args)
    rep = Report("invariants", L)
    d = _dims(L)
    rep["dims"] = d
    rep.say(f"dim L  = {d['L']}")
    rep.say(f"dim L' = {d['derived']}")
    rep.say(f"dim Z  = {d['center']}")
    rep.say(f"dim H2(L,F) = dim M(L) = {d['M']}")
    rep.emit(args)
    return EXIT_OK


def cmd_cover(args) -> int:
    L = load_algebra(args)
    rep = Report("cover", L)
    cov = cover(L)
    E = cov.extension.total
    E = LeibnizAlgebra(E.field, E.dim, E.table, f"cover({L.name})" if L.name else "cover")
    text = algebra_file.dumps(E)
    if args.out:
        Path(args.out).write_text(text)
    rep["dims"] = _dims(L)
    rep["cover"] = {"digest": algebra_file.digest(E), "dim": E.dim, "kernel_dim": cov.multiplier.dim,
                    "kernel": _basis(E, cov.multiplier)}
    rep["verdicts"] = {"kernel_dim_is_multiplier": cov.multiplier.dim == rep.data["dims"]["M"],
                       "leibniz": not verify_leibniz(E)}
    if not args.out and not args.json:
        sys.stdout.write(text)
    else:
        rep.say(f"cover: dim {E.dim}, kernel dim {cov.multiplier.dim} = dim M(L)")
    rep.emit(args)
    return EXIT_OK if all(rep.data["verdicts"].values()) else EXIT_FINDING


def _zstar_report(args, command: str) -> int:
    L = load_algebra(args)
    rep = Report(command, L)
    via_cover, via_ann = z_star_routes(L)
    C = center(L)
    agree = via_cover == via_ann
    uni = agree and via_cover == C
    rep["dims"] = {"center": C.dim, "z_star": via_cover.dim}
    rep["z_star"] = _basis(L, via_cover)
    rep["center"] = _basis(L, C)
    rep["verdicts"] = {"routes_agree": agree, "unicentral": uni}
    rep.say(f"Z*(L) = {_pretty(L, via_cover)}")
    rep.say(f"Z(L)  = {_pretty(L, C)}")
    rep.say(f"Z* routes agree: {_yn(agree)}")
    rep.say(f"unicentral: {_yn(uni)}")
    rep.emit(args)
    return EXIT_OK if agree else EXIT_FINDING


def cmd_zstar(args) -> int:
    return _zstar_report(args, "zstar")


def cmd_unicentral(args) -> int:
    return _zstar_report(args, "unicentral")


def cmd_sequences(args) -> int:
    L = load_algebra(args)
    rep = Report("sequences", L)
    out, ok = [], True
    for Z in _ideals(args, L):
        rep.say(f"Z = {_pretty(L, Z)}")
        seqs = [check_five_term(L, Z, 1), check_extended(L, Z), check_ganea(L, Z), check_stallings(L, Z)]
        for s in seqs:
            ok &= s.passed
            verdicts = " ".join(f"{at}:{'ok' if good else 'FAIL'}" for at, good in s.joints)
            rep.say(f"  {s.name:10s} dims {s.dims} ranks {s.ranks}  {verdicts}")
        out.append({"ideal": _basis(L, Z), "sequences": [s.to_dict() for s in seqs]})
    rep["instances"] = out
    rep["verdicts"] = {"all_exact": ok}
    rep.say("all sequences exact" if ok else "EXACTNESS FAILURE")
    rep.emit(args)
    return EXIT_OK if ok else EXIT_FINDING


def cmd_criteria(args) -> int:
    L = load_algebra(args)
    rep = Report("criteria", L)
    out, ok = [], True
    for Z in _ideals(args, L):
        cr = criteria_report(L, Z)
        ok &= cr.consistent
        out.append({"ideal": _basis(L, Z), **cr.to_dict()})
        rep.say(f"Z = {_pretty(L, Z)}: delta=0 {_yn(cr.delta_trivial)}, "
                f"beta injective {_yn(cr.beta_injective)}, dim identity {_yn(cr.dim_identity_holds)}, "
                f"Z in Z* {_yn(cr.z_in_zstar)}  [{cr.flags()}] "
                f"{'consistent' if cr.consistent else 'INCONSISTENT'}")
    rep["instances"] = out
    rep["verdicts"] = {"consistent": ok}
    if not ok:
        _dump_reproducer(L, Path(args.reproducers))
    rep.emit(args)
    return EXIT_OK if ok else EXIT_FINDING


def cmd_random(args) -> int:
    field = algebra_file.parse_field(args.field)
    if args.dim < 1 or args.steps < 0:
        raise UsageError("--dim must be >= 1 and --steps >= 0")
    if args.dim + args.steps > args.max_dim:
        raise UsageError(f"dim {args.dim + args.steps} exceeds --max-dim {args.max_dim}")
    L = random_nilpotent(args.seed, args.dim, args.steps, field)
    text = algebra_file.dumps(L)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.report:
        rep = Report("random", L, seed=args.seed)
        rep["dims"] = _dims(L)
        rep.emit(argparse.Namespace(**{**vars(args), "json": False}))
    return EXIT_OK


def _dump_reproducer(L: LeibnizAlgebra, where: Path) -> Path:
    where.mkdir(parents=True, exist_ok=True)
    path = where / f"{algebra_file.digest(L)}.json"
    algebra_file.dump(L, path)
    return path


def _suite_worker(payload):
    doc, kw = payload
    L = algebra_file.from_dict(doc)
    return algebra_file.digest(L), run_algebra(L, **kw)


def workers() -> int:
    try:
        return max(1, int(os.environ.get("LEIBNIZ_MULT_THREADS", "1")))
    except ValueError:
        raise UsageError("LEIBNIZ_MULT_THREADS must be an integer") from None


def cmd_suite(args) -> int:
    field = algebra_file.parse_field(args.field)
    checks = tuple(args.checks.split(",")) if args.checks else CHECKS
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise UsageError(f"unknown checks {sorted(unknown)}; choose from {', '.join(CHECKS)}")
    if args.max_dim < 1:
        raise UsageError("--max-dim must be >= 1")
    algs = corpus(field, args.seeds, args.max_dim)
    kw = dict(checks=checks, roundtrips=args.roundtrips, section_pairs=args.section_pairs,
              ideal_cap=args.ideal_cap, seed=args.seed)
    payloads = [(algebra_file.to_dict(L), kw) for L in algs]
    n = workers()
    if n > 1:
        with ProcessPoolExecutor(n) as pool:
            results = list(pool.map(_suite_worker, payloads))
    else:
        results = [_suite_worker(p) for p in payloads]
    total = SuiteReport()
    by_digest = {}
    for (dg, r), L in zip(results, algs):
        by_digest[dg] = L
    for dg, r in sorted(results, key=lambda t: t[0]):
        total.merge(r)
    rep = Report("suite", seed=args.seed)
    rep["field"] = algebra_file.field_descriptor(field)
    rep["seeds"] = args.seeds
    rep["max_dim"] = args.max_dim
    rep.data.update(total.to_dict())
    repro = []
    for dg in sorted({f[1] for f in total.failures}):
        repro.append(str(_dump_reproducer(by_digest[dg], Path(args.reproducers))))
    rep["reproducers"] = repro
    rep.say(f"{total.algebras} algebras over {field}, {sum(total.instances.values())} check instances")
    for k, v in sorted(total.instances.items()):
        rep.say(f"  {k:10s} {v:6d} instances, {len(total.failed(k))} failures")
    for c, a, i, m in total.failures[:50]:
        rep.say(f"  FAIL {c} {a} ideal={i}: {m}")
    rep.say("PASS" if total.passed else f"FAIL: reproducers in {args.reproducers}")
    rep.emit(args)
    return EXIT_OK if total.passed else EXIT_FINDING


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leibniz-mult", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, path=True):
        if path:
            sp.add_argument("path", help="AlgebraFile (JSON) or catalog:NAME")
            sp.add_argument("--skip-check", action="store_true", help="skip the Leibniz identity check on input")
        sp.add_argument("--field", default=None, help="Q or GF(p); for catalog: inputs, random and suite")
        sp.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
        sp.add_argument("--json", action="store_true", help="print the JSON run report")
        sp.add_argument("--out", help="write the JSON run report (cover/random: the algebra file)")
        return sp

    def ideal(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--ideal", help="central ideal basis, e.g. 'e2' or 'e1+e3,2*e2' (default Z(L))")
        g.add_argument("--all-central", action="store_true", help="sample central subideals of Z(L)")
        sp.add_argument("--ideal-cap", type=int, default=10)

    common(sub.add_parser("check", help="verify the Leibniz identity"))
    common(sub.add_parser("invariants", help="dims of L, L', Z(L), M(L)"))
    sp = common(sub.add_parser("cover", help="construct a cover"))
    sp.add_argument("--report", help="write the JSON run report here")
    common(sub.add_parser("zstar", help="Z*(L) by two routes"))
    common(sub.add_parser("unicentral", help="is Z(L) = Z*(L)"))
    ideal(common(sub.add_parser("sequences", help="verify the exact sequences")))
    sp = common(sub.add_parser("criteria", help="four equivalent conditions on Z"))
    ideal(sp)
    sp.add_argument("--reproducers", default="reproducers")

    sp = common(sub.add_parser("random", help="seeded random nilpotent algebra"), path=False)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dim", type=int, default=2, help="dimension of the abelian starting algebra")
    sp.add_argument("--steps", type=int, default=2, help="number of one-dimensional central extensions")
    sp.add_argument("--report", help="write the JSON run report here")

    sp = common(sub.add_parser("suite", help="seeded property suite"), path=False)
    sp.add_argument("--seeds", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECKS)}")
    sp.add_argument("--roundtrips", type=int, default=100)
    sp.add_argument("--section-pairs", type=int, default=20)
    sp.add_argument("--ideal-cap", type=int, default=10)
    sp.add_argument("--reproducers", default="reproducers")
    sp.set_defaults(max_dim=5)
    return p


COMMANDS = {
    "check": cmd_check, "invariants": cmd_invariants, "cover": cmd_cover, "zstar": cmd_zstar,
    "unicentral": cmd_unicentral, "sequences": cmd_sequences, "criteria": cmd_criteria,
    "random": cmd_random, "suite": cmd_suite,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.command in ("random", "suite") and args.field is None:
        args.field = "Q"
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (CheckFailed, NotLeibnizError) as e:
        print(e, file=sys.stderr)
        return EXIT_CHECK
    except (UsageError, AlgebraFileError, NotCentralError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Finding as e:
        print(f"finding: {e}", file=sys.stderr)
        return EXIT_FINDING


if __name__ == "__main__":
    sys.exit(main())
