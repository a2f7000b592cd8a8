"""Command-line front-end.

A job is a small JSON document declaring a polynomial ring and an ideal;
the subcommand picks the kernel operation.  Reports come in two shapes:
``text`` for reading and ``structured`` (deterministic JSON) for machines.
Identical jobs produce byte-identical structured reports: all randomness is
seeded and components are listed by descending dimension, then by their
canonical generator text.

Exit codes: 0 success, 1 mathematical precondition failure, 2 resource
budget exceeded (partial output is emitted and flagged when available),
3 malformed input (I/O, JSON, polynomial text, or job fields).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, replace

from .decomp import PrimeComponent, minimal_primes
from .errors import (
    BudgetExceededError,
    JobError,
    MathPreconditionError,
    ParseInputError,
    StrataError,
)
from .groebner import ComputationBudget, Ideal
from .polyring import GREVLEX, LEX, RingContext
from .stratify import (
    DEFAULT_PAIR_SECONDS,
    as_component,
    boundary_candidates,
    conormal_ideal,
    dual_variety,
    singular_locus,
    whitney_a_irregular,
    whitney_a_stratify,
)

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3

SUBCOMMANDS = (
    "gb",
    "decompose",
    "singular",
    "conormal",
    "dual",
    "whitney-pair",
    "stratify",
    "boundary",
)

_JOB_FIELDS = {"vars", "homogenizing_var", "generators", "pair", "options"}
_OPTION_FIELDS = {
    "order": ("grevlex", "lex"),
    "format": ("text", "structured"),
    "budget_seconds": None,
    "pair_seconds": None,
    "affine": None,
    "seed": None,
}


@dataclass(frozen=True)
class JobSpec:
    """A validated job: ring declaration, generators, and options."""

    subcommand: str
    vars: tuple[str, ...]
    generators: tuple[str, ...]
    homogenizing_var: str | None = None
    pair: tuple[str, ...] | None = None
    options: dict = field(default_factory=dict)

    def affine_ring(self) -> RingContext:
        return RingContext.create(self.vars)

    def ring(self) -> RingContext:
        """The ring computations run in (projective when homogenizing)."""
        if self.homogenizing_var is None:
            return self.affine_ring()
        return RingContext.create(
            self.vars + (self.homogenizing_var,), homogenizing=self.homogenizing_var
        )

    def ideal(self) -> Ideal:
        return _parse_generators(self, self.generators)

    def pair_ideal(self) -> Ideal:
        if self.pair is None:
            raise JobError("subcommand 'whitney-pair' needs a 'pair' field "
                           "with the second ideal's generators")
        return _parse_generators(self, self.pair)


def _parse_generators(spec: JobSpec, texts: tuple[str, ...]) -> Ideal:
    base = spec.affine_ring()
    polys = []
    for i, text in enumerate(texts):
        try:
            polys.append(base.parse(text))
        except ParseInputError as e:
            raise JobError(f"generators[{i}]: {e}") from e
    if spec.homogenizing_var is not None:
        polys = [p.homogenize(spec.homogenizing_var) for p in polys]
        return Ideal(spec.ring(), polys)
    return Ideal(base, polys)


# ---------------------------------------------------------------------------
# job loading
# ---------------------------------------------------------------------------


def _expect_string_list(doc: dict, name: str, required: bool) -> tuple[str, ...] | None:
    if name not in doc:
        if required:
            raise JobError(f"missing field {name!r}")
        return None
    value = doc[name]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise JobError(f"field {name!r} must be a list of strings")
    return tuple(value)


def load_job(source: str, subcommand: str = "gb") -> JobSpec:
    """Read and validate a job document from a path (or '-' for stdin)."""
    try:
        if source == "-":
            text = sys.stdin.read()
        else:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise JobError(f"cannot read job document: {e}") from e
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise JobError(f"job document is not valid JSON: line {e.lineno}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise JobError("job document must be a JSON object")
    for key in doc:
        if key not in _JOB_FIELDS:
            raise JobError(f"unknown field {key!r} "
                           f"(expected one of: {', '.join(sorted(_JOB_FIELDS))})")

    names = _expect_string_list(doc, "vars", required=True)
    if not names:
        raise JobError("field 'vars' must list at least one variable")
    if len(set(names)) != len(names):
        raise JobError("field 'vars' repeats a variable name")

    generators = _expect_string_list(doc, "generators", required=True)
    if not generators:
        raise JobError("no generators")
    pair = _expect_string_list(doc, "pair", required=False)

    homog = doc.get("homogenizing_var")
    if homog is not None:
        if not isinstance(homog, str):
            raise JobError("field 'homogenizing_var' must be a string")
        if homog in names:
            raise JobError(
                f"homogenizing variable {homog!r} must not appear in 'vars'; "
                "declare only the affine variables"
            )

    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise JobError("field 'options' must be an object")
    for key, value in options.items():
        _check_option(key, value)

    spec = JobSpec(
        subcommand=subcommand,
        vars=names,
        generators=generators,
        homogenizing_var=homog,
        pair=pair,
        options=dict(options),
    )
    # parse once up front so bad polynomial text is an input error with the
    # generator index, not a failure halfway into a computation
    spec.ideal()
    if pair is not None:
        spec.pair_ideal()
    return spec


def _check_option(key: str, value) -> None:
    if key not in _OPTION_FIELDS:
        raise JobError(f"unknown option {key!r} "
                       f"(expected one of: {', '.join(sorted(_OPTION_FIELDS))})")
    allowed = _OPTION_FIELDS[key]
    if allowed is not None:
        if value not in allowed:
            raise JobError(f"option {key!r} must be one of {allowed}, got {value!r}")
    elif key in ("budget_seconds", "pair_seconds"):
        if not isinstance(value, (int, float)) or isinstance(value, bool) or value <= 0:
            raise JobError(f"option {key!r} must be a positive number")
    elif key == "affine":
        if not isinstance(value, bool):
            raise JobError("option 'affine' must be true or false")
    elif key == "seed":
        if not isinstance(value, int) or isinstance(value, bool):
            raise JobError("option 'seed' must be an integer")


# ---------------------------------------------------------------------------
# running a job
# ---------------------------------------------------------------------------


def _budget(spec: JobSpec) -> ComputationBudget | None:
    seconds = spec.options.get("budget_seconds")
    return None if seconds is None else ComputationBudget(max_seconds=float(seconds))


def _component_entry(comp: PrimeComponent, homog: str | None) -> dict:
    at_infinity = None
    if homog is not None and homog in comp.ideal.ring.names:
        at_infinity = comp.ideal.contains(comp.ideal.ring.var(homog))
    return {
        "generators": list(comp.canonical_generators),
        "dimension": comp.dimension,
        "certified": comp.certified,
        "at_infinity": at_infinity,
    }


def _sorted_entries(comps, homog: str | None) -> list[dict]:
    entries = [_component_entry(c, homog) for c in comps]
    entries.sort(key=lambda e: (-e["dimension"], e["generators"]))
    return entries


def _affine_view(entries: list[dict], spec: JobSpec) -> list[dict]:
    """Dehomogenize component entries, dropping those at infinity."""
    homog = spec.homogenizing_var
    projective = spec.ring()
    kept = []
    for entry in entries:
        if entry["at_infinity"]:
            continue
        gens = [
            str(projective.parse(g).dehomogenize(homog))
            for g in entry["generators"]
        ]
        gens = sorted(g for g in gens if g != "0") or ["0"]
        kept.append({**entry, "generators": gens, "at_infinity": False})
    return kept


def _wants_affine(spec: JobSpec) -> bool:
    if not spec.options.get("affine"):
        return False
    if spec.homogenizing_var is None:
        raise JobError("the affine view needs a 'homogenizing_var' declaration")
    return True


def run(spec: JobSpec) -> tuple[int, dict]:
    """Execute a job and return (exit code, report document)."""
    try:
        report = _dispatch(spec)
    except (JobError, ParseInputError) as e:
        return EXIT_INPUT, _error_report(spec, str(e))
    except BudgetExceededError as e:
        return EXIT_BUDGET, _error_report(spec, f"budget exceeded: {e}")
    except MathPreconditionError as e:
        return EXIT_PRECONDITION, _error_report(spec, str(e))
    if report.get("truncated"):
        return EXIT_BUDGET, report
    return EXIT_OK, report


def _error_report(spec: JobSpec, message: str) -> dict:
    return {"subcommand": spec.subcommand, "error": message}


def _dispatch(spec: JobSpec) -> dict:
    seed = int(spec.options.get("seed", 0))
    budget = _budget(spec)
    homog = spec.homogenizing_var
    report: dict = {"subcommand": spec.subcommand, "ring": list(spec.ring().names)}

    if spec.subcommand == "gb":
        order = LEX if spec.options.get("order") == "lex" else GREVLEX
        gb = spec.ideal().groebner_basis(order=order, budget=budget)
        report["order"] = spec.options.get("order", "grevlex")
        report["basis"] = [str(g) for g in gb.elements]
        return report

    if spec.subcommand in ("decompose", "singular"):
        comps = minimal_primes(spec.ideal(), budget, seed)
        if spec.subcommand == "singular":
            comps = singular_locus(comps, budget, seed)
        entries = _sorted_entries(comps, homog)
        if _wants_affine(spec):
            entries = _affine_view(entries, spec)
        report["components"] = entries
        report["all_certified"] = all(e["certified"] for e in entries)
        return report

    if spec.subcommand in ("conormal", "dual"):
        comps = minimal_primes(spec.ideal(), budget, seed)
        rows = []
        for comp in comps:
            if spec.subcommand == "conormal":
                result = conormal_ideal(comp, budget, seed)
            else:
                result = dual_variety(comp, budget, seed)
            rows.append({
                "source": list(comp.canonical_generators),
                "generators": sorted(result.generator_strings())
                if spec.subcommand == "dual"
                else [str(g) for g in result.ideal.groebner_basis(budget=budget).elements],
            })
        rows.sort(key=lambda r: r["source"])
        key = "conormals" if spec.subcommand == "conormal" else "duals"
        if spec.subcommand == "conormal":
            report["ring"] = list(spec.ring().with_duals().names)
        else:
            report["ring"] = list(spec.ring().with_duals().dual_ring().names)
        report[key] = rows
        return report

    if spec.subcommand == "whitney-pair":
        pair = whitney_a_irregular(
            as_component(spec.ideal()), as_component(spec.pair_ideal()), budget, seed
        )
        entries = _sorted_entries(pair.irregular_primes, homog)
        if _wants_affine(spec):
            entries = _affine_view(entries, spec)
        report["x"] = list(spec.generators)
        report["y"] = list(spec.pair)
        report["regular"] = pair.regular
        report["irregular_components"] = entries
        report["warnings"] = list(pair.warnings)
        return report

    if spec.subcommand == "stratify":
        levels = whitney_a_stratify(
            spec.ideal(),
            budget,
            pair_seconds=float(spec.options.get("pair_seconds", DEFAULT_PAIR_SECONDS)),
            seed=seed,
        )
        rendered = [_sorted_entries(level, homog) for level in levels]
        if _wants_affine(spec):
            rendered = [_affine_view(level, spec) for level in rendered]
        report["levels"] = rendered
        report["truncated"] = levels.truncated
        report["warnings"] = list(levels.warnings)
        return report

    if spec.subcommand == "boundary":
        if homog is None:
            raise JobError("subcommand 'boundary' needs a 'homogenizing_var' "
                           "declaration; it reports the affine picture")
        result = boundary_candidates(
            spec.generators,
            spec.vars,
            homogenizing_var=homog,
            budget=budget,
            pair_seconds=float(spec.options.get("pair_seconds", DEFAULT_PAIR_SECONDS)),
            seed=seed,
        )
        report["homogenizing_var"] = homog
        report["projective_levels"] = [
            _sorted_entries(level, homog) for level in result.projective
        ]
        affine_rows = []
        for level in result.affine_levels:
            row = [
                {
                    "generators": [str(g) for g in
                                   comp.ideal.groebner_basis().elements] or ["0"],
                    "dimension": comp.dimension,
                    "point": None if comp.point is None
                    else [str(c) for c in comp.point],
                }
                for comp in level
            ]
            row.sort(key=lambda e: (-e["dimension"], e["generators"]))
            affine_rows.append(row)
        report["affine_levels"] = affine_rows
        report["truncated"] = result.projective.truncated
        report["warnings"] = list(result.projective.warnings)
        return report

    raise JobError(f"unknown subcommand {spec.subcommand!r}")


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------


def _format_component_line(entry: dict) -> str:
    inner = ", ".join(entry["generators"])
    marks = []
    if entry.get("certified") is False:
        marks.append("maybe-non-prime")
    if entry.get("at_infinity"):
        marks.append("at infinity")
    suffix = f"  [{'; '.join(marks)}]" if marks else ""
    dim = entry.get("dimension")
    dim_note = f"  (dim {dim})" if dim is not None else ""
    return f"<{inner}>{dim_note}{suffix}"


def _text_report(report: dict) -> str:
    lines: list[str] = []
    if "error" in report:
        return f"error: {report['error']}\n"
    sub = report["subcommand"]
    if sub == "gb":
        lines.append(f"reduced basis ({report['order']}):")
        lines.extend(f"  {g}" for g in report["basis"])
    elif sub in ("decompose", "singular"):
        what = "minimal primes" if sub == "decompose" else "singular-locus primes"
        lines.append(f"{what}: {len(report['components'])}")
        lines.extend(f"  {_format_component_line(e)}" for e in report["components"])
    elif sub in ("conormal", "dual"):
        rows = report["conormals" if sub == "conormal" else "duals"]
        lines.append(f"ring: {', '.join(report['ring'])}")
        for row in rows:
            lines.append(f"component <{', '.join(row['source'])}>:")
            lines.extend(f"  {g}" for g in row["generators"])
    elif sub == "whitney-pair":
        lines.append("regular" if report["regular"] else "NOT regular")
        if report["irregular_components"]:
            lines.append("irregular over:")
            lines.extend(
                f"  {_format_component_line(e)}"
                for e in report["irregular_components"]
            )
        lines.extend(f"warning: {w}" for w in report["warnings"])
    elif sub == "stratify":
        for j, level in enumerate(report["levels"]):
            lines.append(f"L_{j}:")
            lines.extend(f"  {_format_component_line(e)}" for e in level)
        if report["truncated"]:
            lines.append("TRUNCATED: budget exceeded, deeper levels missing")
        lines.extend(f"warning: {w}" for w in report["warnings"])
    elif sub == "boundary":
        for j, level in enumerate(report["affine_levels"]):
            lines.append(f"F_{j}:")
            for entry in level:
                if entry["point"] is not None:
                    lines.append(f"  point ({', '.join(entry['point'])})")
                else:
                    lines.append(f"  V({', '.join(entry['generators'])})")
        if report["truncated"]:
            lines.append("TRUNCATED: budget exceeded, deeper levels missing")
        lines.extend(f"warning: {w}" for w in report["warnings"])
    else:  # pragma: no cover - dispatch already validated
        lines.append(json.dumps(report, sort_keys=True))
    return "\n".join(lines) + "\n"


def write_report(report: dict, fmt: str = "text") -> str:
    """Render a report document as text or deterministic structured JSON."""
    if fmt == "structured":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    return _text_report(report)


# ---------------------------------------------------------------------------
# argument parsing and entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strata",
        description="Whitney (a) stratifications of projective varieties "
        "over Q, and algebraic-boundary reports for convex "
        "semi-algebraic sets.",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("job", help="path to a JSON job document, or - for stdin")
    parser.add_argument("--order", choices=["grevlex", "lex"],
                        help="monomial order for gb")
    parser.add_argument("--budget-seconds", type=float, metavar="N",
                        help="overall time budget (default: unlimited)")
    parser.add_argument("--affine", action="store_true",
                        help="render components in the affine chart "
                        "(needs homogenizing_var)")
    parser.add_argument("--format", choices=["text", "structured"],
                        dest="fmt", help="report format (default: text)")
    parser.add_argument("--seed", type=int,
                        help="seed for randomized choices (default: 0)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        spec = load_job(args.job, args.subcommand)
    except (JobError, ParseInputError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    overrides = {}
    if args.order is not None:
        overrides["order"] = args.order
    if args.budget_seconds is not None:
        overrides["budget_seconds"] = args.budget_seconds
    if args.affine:
        overrides["affine"] = True
    if args.fmt is not None:
        overrides["format"] = args.fmt
    if args.seed is not None:
        overrides["seed"] = args.seed
    try:
        for key, value in overrides.items():
            _check_option(key, value)
    except JobError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    spec = replace(spec, options={**spec.options, **overrides})

    code, report = run(spec)
    fmt = spec.options.get("format", "text")
    out = write_report(report, fmt)
    if "error" in report and fmt == "text":
        sys.stderr.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
