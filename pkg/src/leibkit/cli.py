"""Command-line driver: verification, invariants, forms, isomorphism.

Commands
  verify      check entries against the Leibniz identity and their claims
  invariants  print computed invariant signatures
  iso verify  check the stored base-change witnesses exactly
  iso search  run the modular witness search with exact lifting
  canon       canonicalize a 2x2 bilinear form matrix
  report      emit the full verification report (text or json)

Exit status is 0 exactly when no check failed; inconclusive search
results do not fail a run.  Output carries no timestamps, so identical
inputs produce byte-identical reports.  The LEIBKIT_THREADS variable
bounds the worker pool used for entry verification.
"""

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

from . import __version__, exprs
from .catalogue import (CatalogueError, ConstraintViolated,
                        NoAdmissiblePoint, instantiate, parse_catalogue,
                        sample_params, verify_entry, verify_point)
from .forms import BilinearForm2, congruence_canonical
from .invariants import signature
from .iso import (CERTIFIED, DEFAULT_CAP, DEFAULT_PRIMES, DISTINCT,
                  EVIDENCE, INCONCLUSIVE, certify, load_fixtures,
                  verify_fixture)
from .linalg import Matrix
from .scalars import GaussianRational

STATUS_LABEL = {
    CERTIFIED: "CERTIFIED",
    EVIDENCE: "FINITE-FIELD-EVIDENCE",
    INCONCLUSIVE: "INCONCLUSIVE",
    DISTINCT: "NON-ISOMORPHIC (signature certificate)",
}

KIND_LABEL = {
    "zero": "zero",
    "skew_i": "(i)",
    "sym_rank1_ii": "(ii)",
    "sym_rank2_iii": "(iii)",
    "mixed_iv": "(iv)",
    "mixed_v": "(v)",
}


class UsageError(SystemExit):
    def __init__(self, message):
        print("error: %s" % message, file=sys.stderr)
        super().__init__(2)


def _thread_count():
    raw = os.environ.get("LEIBKIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError("LEIBKIT_THREADS must be an integer, got %r" % raw)
    return max(n, 1)


def _load_catalogue(path):
    """Parse the catalogue and return it with its content digest."""
    if path is None:
        text = (resources.files("leibkit") / "data" /
                "catalogue.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    digest = hashlib.sha256(text.encode()).hexdigest()
    return parse_catalogue(path), digest


def _entry_spec(text):
    """NAME or NAME:param=value,... with scalar-literal values."""
    name, sep, rest = text.partition(":")
    name = name.strip()
    values = {}
    if sep:
        if not rest:
            raise UsageError("empty parameter list in %r" % text)
        for piece in rest.split(","):
            key, eq, val = piece.partition("=")
            if not eq or not key.strip() or not val.strip():
                raise UsageError("bad parameter assignment %r" % piece)
            try:
                values[key.strip()] = exprs.parse_scalar(val.strip())
            except ValueError as ex:
                raise UsageError("parameter %s: %s" % (key.strip(), ex))
    return name, values


def _select_entries(catalogue, specs):
    """Resolve --entry flags; no flags means the whole catalogue."""
    if not specs:
        return [(entry, None) for entry in catalogue]
    out = []
    for spec in specs:
        name, values = _entry_spec(spec)
        try:
            entry = catalogue.entry(name)
        except KeyError:
            raise UsageError("no catalogue entry named %r" % name)
        out.append((entry, values or None))
    return out


def _format_matrix(matrix):
    return ["[%s]" % ", ".join(exprs.format_scalar(v) for v in row)
            for row in matrix.rows]


# ------------------------------------------------------------------ reports

@dataclass(frozen=True)
class RunReport:
    """Everything one command run produced, plus how it should exit."""
    tool: str
    version: str
    catalogue_sha256: str
    body: dict
    failed_checks: int

    @property
    def exit_status(self):
        return 1 if self.failed_checks else 0


def _entry_reports(selection, samples, threads):
    def one(item):
        entry, values = item
        if values is not None:
            from .catalogue import EntryReport
            return EntryReport(entry.name, (verify_point(entry, values),))
        return verify_entry(entry, samples)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, selection))
    return [one(item) for item in selection]


def _count_failures(reports):
    failed = 0
    points = 0
    checks = 0
    for rep in reports:
        for point in rep.points:
            points += 1
            for outcome in point.outcomes:
                checks += 1
                if not outcome.passed:
                    failed += 1
    return points, checks, failed


def _verification_body(catalogue, selection, samples, threads):
    reports = _entry_reports(selection, samples, threads)
    points, checks, failed = _count_failures(reports)
    entries = []
    for rep in reports:
        point_docs = []
        for point in rep.points:
            point_docs.append({
                "values": {p: exprs.format_scalar(v) for p, v in point.values},
                "checks": [{"check": o.check, "passed": o.passed,
                            **({"detail": o.detail} if o.detail else {})}
                           for o in point.outcomes],
            })
        entries.append({"name": rep.entry, "passed": rep.passed,
                        "points": point_docs})
    body = {
        "samples": samples,
        "entries": entries,
        "summary": {
            "entries": len(reports),
            "points": points,
            "checks": checks,
            "failed_checks": failed,
            "failing_entries": [r.entry for r in reports if not r.passed],
        },
    }
    return body, reports, failed


def _signature_collisions(catalogue):
    """Entries sharing a full signature at their first admissible point.

    Shared signatures are reported as an observation only; they do not
    assert isomorphism.
    """
    groups = {}
    for entry in catalogue:
        values = sample_params(entry, 1)[0] if entry.is_parametric else {}
        sig = signature(instantiate(entry, values))
        groups.setdefault(sig, []).append(entry.name)
    out = []
    for sig, names in groups.items():
        if len(names) < 2:
            continue
        doc = sig.as_dict()
        doc["lower_central_dims"] = list(doc["lower_central_dims"])
        doc["derived_dims"] = list(doc["derived_dims"])
        out.append({"signature": doc, "entries": names})
    return out


# ----------------------------------------------------------------- commands

def cmd_verify(args):
    catalogue, digest = _load_catalogue(args.catalogue)
    selection = _select_entries(catalogue, args.entry)
    body, reports, failed = _verification_body(
        catalogue, selection, args.samples, _thread_count())
    print("leibkit %s" % __version__)
    print("catalogue sha256 %s" % digest)
    for rep in reports:
        status = "ok" if rep.passed else "FAIL"
        print("%-8s %d point%s  %s" % (rep.entry, len(rep.points),
                                       "s" if len(rep.points) != 1 else "",
                                       status))
        if not rep.passed:
            for point in rep.points:
                for outcome in point.outcomes:
                    if not outcome.passed:
                        print("  at %s  %s" % (point.value_text(), outcome))
    summary = body["summary"]
    print("%d entries, %d points, %d failed checks"
          % (summary["entries"], summary["points"], summary["failed_checks"]))
    return 1 if failed else 0


def cmd_invariants(args):
    catalogue, digest = _load_catalogue(args.catalogue)
    selection = _select_entries(catalogue, args.entry)
    print("leibkit %s" % __version__)
    print("catalogue sha256 %s" % digest)
    for entry, values in selection:
        if values is not None:
            points = [values]
        elif entry.is_parametric:
            points = sample_params(entry, args.samples)
        else:
            points = [{}]
        for point in points:
            sig = signature(instantiate(entry, point))
            where = ", ".join("%s=%s" % (p, exprs.format_scalar(v))
                              for p, v in sorted(point.items())) or "-"
            pairs = []
            for key, value in sig.as_dict().items():
                if isinstance(value, tuple):
                    value = "(%s)" % ",".join(str(x) for x in value)
                pairs.append("%s=%s" % (key, value))
            print("%s  %s  %s" % (entry.name, where, " ".join(pairs)))
    return 0


def cmd_iso_verify(args):
    catalogue, digest = _load_catalogue(args.catalogue)
    fixtures = load_fixtures(args.fixtures)
    if args.label:
        wanted = set(args.label)
        fixtures = tuple(f for f in fixtures if f.label in wanted)
        missing = wanted - {f.label for f in fixtures}
        if missing:
            raise UsageError("no fixture labeled %s"
                             % ", ".join(sorted(missing)))
    print("leibkit %s" % __version__)
    print("catalogue sha256 %s" % digest)
    failed = 0
    for fixture in fixtures:
        defect = verify_fixture(fixture, catalogue)
        if defect is None:
            print("%-22s ok" % fixture.label)
        else:
            failed += 1
            print("%-22s FAIL  %s" % (fixture.label, defect))
    print("%d witnesses, %d failed" % (len(fixtures), failed))
    return 1 if failed else 0


def cmd_iso_search(args):
    catalogue, digest = _load_catalogue(args.catalogue)
    sides = []
    for flag, spec in (("--a", args.a), ("--b", args.b)):
        name, values = _entry_spec(spec)
        try:
            entry = catalogue.entry(name)
        except KeyError:
            raise UsageError("%s: no catalogue entry named %r" % (flag, name))
        try:
            sides.append(instantiate(entry, values))
        except ConstraintViolated as ex:
            raise UsageError(str(ex))
    primes = tuple(args.prime) if args.prime else DEFAULT_PRIMES
    print("leibkit %s" % __version__)
    print("catalogue sha256 %s" % digest)
    result = certify(sides[0], sides[1], primes=primes, cap=args.cap)
    print(STATUS_LABEL[result.status])
    print("candidates considered: %d" % result.candidates)
    if result.detail:
        print(result.detail)
    if result.matrix is not None:
        print("witness columns are images of the source basis:")
        for line in _format_matrix(result.matrix):
            print("  %s" % line)
    return 0


def _parse_form_literal(text):
    s = "".join(text.split())
    if not (s.startswith("[[") and s.endswith("]]")):
        raise UsageError("matrix literal must look like [[a,b],[c,d]]")
    rows = s[2:-2].split("],[")
    if len(rows) != 2:
        raise UsageError("need exactly two rows")
    out = []
    for row in rows:
        parts = row.split(",")
        if len(parts) != 2:
            raise UsageError("need exactly two entries per row")
        try:
            out.append([exprs.parse_scalar(p) for p in parts])
        except ValueError as ex:
            raise UsageError(str(ex))
    return Matrix(out)


def cmd_canon(args):
    m = _parse_form_literal(args.matrix)
    try:
        result = congruence_canonical(BilinearForm2(m))
    except (ValueError, ArithmeticError) as ex:
        raise UsageError(str(ex))
    q = result.q
    rep = result.kind.rep_matrix()
    m_chk = m
    if result.extension_d is not None:
        field = q[0, 0].field
        m_chk = Matrix([[field.embed(v) for v in row] for row in m.rows])
        rep = Matrix([[field.embed(GaussianRational.coerce(v))
                       for v in row] for row in rep.rows])
    if q.transpose() @ m_chk @ q != rep:
        print("error: Q^T M Q does not match the canonical matrix",
              file=sys.stderr)
        return 1
    label = KIND_LABEL[result.kind.tag]
    print("kind %s" % label)
    if result.kind.tag == "mixed_v":
        print("c = %s" % exprs.format_scalar(result.kind.c))
    if result.extension_d is not None:
        print("transform uses sqrt(%s)"
              % exprs.format_scalar(result.extension_d))
    print("Q =")
    for line in _format_matrix(q):
        print("  %s" % line)
    print("Q^T M Q equals the canonical matrix: verified")
    return 0


def cmd_report(args):
    catalogue, digest = _load_catalogue(args.catalogue)
    selection = [(entry, None) for entry in catalogue]
    body, reports, failed = _verification_body(
        catalogue, selection, args.samples, _thread_count())
    body["signature_collisions"] = _signature_collisions(catalogue)
    report = RunReport("leibkit", __version__, digest, body, failed)
    if args.format == "json":
        doc = {"tool": report.tool, "version": report.version,
               "catalogue_sha256": report.catalogue_sha256,
               **report.body,
               "exit_status": report.exit_status}
        text = json.dumps(doc, indent=1) + "\n"
    else:
        lines = []
        lines.append("leibkit %s" % report.version)
        lines.append("catalogue sha256 %s" % report.catalogue_sha256)
        lines.append("samples per parametric entry: %d" % args.samples)
        lines.append("")
        lines.append("%-8s %-7s %s" % ("entry", "points", "status"))
        for rep in reports:
            lines.append("%-8s %-7d %s"
                         % (rep.entry, len(rep.points),
                            "ok" if rep.passed else "FAIL"))
            if not rep.passed:
                for point in rep.points:
                    for outcome in point.outcomes:
                        if not outcome.passed:
                            lines.append("  at %s  %s"
                                         % (point.value_text(), outcome))
        summary = body["summary"]
        lines.append("")
        lines.append("%d entries, %d points, %d checks, %d failed"
                     % (summary["entries"], summary["points"],
                        summary["checks"], summary["failed_checks"]))
        if summary["failing_entries"]:
            lines.append("failing entries: %s"
                         % ", ".join(summary["failing_entries"]))
        collisions = body["signature_collisions"]
        lines.append("")
        lines.append("shared invariant signatures (no isomorphism claim):")
        for group in collisions:
            lines.append("  %s" % ", ".join(group["entries"]))
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report.exit_status


# --------------------------------------------------------------- arg wiring

def _add_catalogue_flag(parser):
    parser.add_argument("--catalogue", metavar="PATH", default=None,
                        help="catalogue file (default: the shipped table)")


def _add_entry_flags(parser):
    parser.add_argument("--entry", metavar="NAME[:param=value,...]",
                        action="append", default=[],
                        help="restrict to one entry, optionally at an "
                             "explicit parameter point; repeatable")
    parser.add_argument("--samples", type=int, default=3, metavar="N",
                        help="admissible parameter points per entry "
                             "(default 3)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="leibkit",
        description="Exact verification tooling for the catalogue of "
                    "5-dimensional complex non-split non-Lie nilpotent "
                    "left Leibniz algebras.")
    parser.add_argument("--version", action="version",
                        version="leibkit %s" % __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify catalogue entries")
    _add_catalogue_flag(p)
    _add_entry_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariants", help="print invariant signatures")
    _add_catalogue_flag(p)
    _add_entry_flags(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("iso", help="isomorphism witnesses")
    iso_sub = p.add_subparsers(dest="iso_command", required=True)

    q = iso_sub.add_parser("verify", help="check stored witnesses")
    _add_catalogue_flag(q)
    q.add_argument("--fixtures", metavar="PATH", default=None,
                   help="witness file (default: the shipped fixtures)")
    q.add_argument("--label", action="append", default=[],
                   help="check only the named fixture; repeatable")
    q.set_defaults(func=cmd_iso_verify)

    q = iso_sub.add_parser("search", help="search for a witness mod p, "
                                          "then lift exactly")
    _add_catalogue_flag(q)
    q.add_argument("--a", required=True, metavar="NAME[:param=value,...]")
    q.add_argument("--b", required=True, metavar="NAME[:param=value,...]")
    q.add_argument("--prime", type=int, action="append", default=None,
                   help="search prime, p = 1 mod 4; repeatable "
                        "(default 13 then 29)")
    q.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="candidate cap per prime (default %d)" % DEFAULT_CAP)
    q.set_defaults(func=cmd_iso_search)

    p = sub.add_parser("canon", help="canonicalize a 2x2 bilinear form")
    p.add_argument("matrix", help="matrix literal, e.g. \"[[0,2],[4,0]]\"")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("report", help="full verification report")
    _add_catalogue_flag(p)
    p.add_argument("--samples", type=int, default=3, metavar="N")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="PATH", default=None,
                   help="write the report here instead of stdout")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CatalogueError, NoAdmissiblePoint, ConstraintViolated) as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 2
    except OSError as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
