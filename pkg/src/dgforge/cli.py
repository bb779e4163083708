"""Command-line front end: spec ingestion, analysis dispatch, deterministic
report emission, and the bundled fixture corpus.

Every command reads one run description (see specfile), realizes the algebra
or polynomial ring, runs the requested analysis, and prints an AnalysisReport
to stdout (canonical JSON by default, readable text with --format text).
The exit code is 0 exactly when no check failed; budget and field-size
limitations surface as 'skipped' entries with reasons, never as crashes.
All randomness is seeded from the spec (flag-overridable, default 0).
"""

from __future__ import annotations

import argparse
import sys
import time
from importlib import resources

from .dgcore import DgAlgebra, quotient_algebra
from .dgideal import (
    classical_nil_radical,
    dgnil,
    is_dg_prime,
    is_dg_semiprime,
    prad,
    radical_report,
    singular_ideals,
)
from .dgmod import DgModule, dg_complement, dg_socle, dg_udim, direct_sum_modules, is_dg_essential
from .errors import (
    BudgetExceeded,
    FieldTooSmall,
    HypothesisFailed,
    InhomogeneousDenominator,
    NotACycle,
    NotOre,
    NotRegular,
    SpecError,
    VerificationError,
    WindowTooSmall,
)
from .orelocal import (
    VERIFICATION_CHECKS,
    goldie_pipeline,
    homology_comparison,
    localise,
    mult_set,
    quotient_ring_axioms,
    verify_localisation,
)
from .report import AnalysisReport, emit_report, _canon_witness
from .specfile import ANALYSES, SpecFile, build_ring, parse_element, parse_field_tag, parse_spec

GOLDIE_STAGES = ("cycle-subalgebra", "gr-prime", "gr-Goldie", "ore", "localise", "dg-simple")

_SKIP_ERRORS = (FieldTooSmall, BudgetExceeded)
_HYPOTHESIS_ERRORS = (NotOre, NotRegular, NotACycle, InhomogeneousDenominator)


def _law(rep: AnalysisReport, name: str, ok: bool, witness=None, provenance: str = "", certified: bool = True):
    rep.add(name, "pass" if ok else "fail", None if ok else witness, provenance, certified)


def _skip(rep: AnalysisReport, name: str, reason, provenance: str = "rule:budget-or-field"):
    rep.add(name, "skipped", str(reason), provenance)


def _not_findim(rep: AnalysisReport, cmd: str) -> None:
    _skip(rep, f"{cmd}/applicable", "finite-dimensional backend required", "rule:backend")


# ------------------------------------------------------------- commands


def run_validate(ring, spec: SpecFile) -> AnalysisReport:
    rep = AnalysisReport()
    for c in ring.validate().checks:
        _law(rep, f"validate/{c.name}", c.ok, c.witness, f"axiom:{c.name}")
    return rep


def run_radicals(ring, spec: SpecFile) -> AnalysisReport:
    rep = AnalysisReport()
    if not isinstance(ring, DgAlgebra):
        _not_findim(rep, "radicals")
        return rep
    budget = spec.budgets["budget"]
    try:
        rr = radical_report(ring, budget)
        rep.add("radicals/dgnil-dim", "pass", rr.dgnil.dim, "rule:dgnil")
        rep.add("radicals/prad-dim", "pass", rr.prad.dim, "rule:prad")
        ag = rr.agreement
        _law(rep, "radicals/dgnil-inside-prad", ag["dgnil_subset_prad"], None, "law:radical-containment")
        _law(rep, "radicals/dgnil-equals-prad", ag["dgnil_equals_prad"], (rr.dgnil.dim, rr.prad.dim), "law:artinian-radicals")
        if rr.dgrad2 is not None:
            _law(
                rep,
                "radicals/dgnil-equals-maximal-intersection",
                ag["dgnil_equals_dgrad2"],
                rr.dgrad2.dim,
                "law:radical-routes",
            )
        quot, _, _ = quotient_algebra(ring, rr.dgnil.space)
        nil2 = dgnil(quot, budget)
        _law(rep, "radicals/dgnil-quotient-reduced", nil2.dim == 0, nil2.dim, "law:radical-quotient")
        pquot, _, _ = quotient_algebra(ring, rr.prad.space)
        p2 = prad(pquot, budget)
        _law(rep, "radicals/prad-quotient-reduced", p2.dim == 0, p2.dim, "law:radical-quotient")
        try:
            cn = classical_nil_radical(ring)
            rep.add("radicals/classical-nil-dim", "pass", cn.dim, "rule:classical-radical")
            _law(
                rep,
                "radicals/dgnil-inside-classical",
                cn.contains(rr.dgnil.space),
                rr.dgnil.dim,
                "law:radical-containment",
            )
        except FieldTooSmall as e:
            _skip(rep, "radicals/classical-nil-dim", e)
        sp = is_dg_semiprime(ring, budget)
        _law(
            rep,
            "radicals/semiprime-iff-dgnil-zero",
            sp == (rr.dgnil.dim == 0),
            {"semiprime": sp, "dgnil_dim": rr.dgnil.dim},
            "law:semiprime",
        )
        pr = is_dg_prime(ring, budget, spec.seed)
        rep.add(
            "radicals/dg-prime",
            "pass" if pr.answer != "unknown" else "unknown",
            pr.answer,
            "rule:dg-prime",
            certified=pr.answer != "unknown",
        )
    except _SKIP_ERRORS as e:
        _skip(rep, "radicals/available", e)
    return rep


def run_singular(ring, spec: SpecFile) -> AnalysisReport:
    rep = AnalysisReport()
    if not isinstance(ring, DgAlgebra):
        _not_findim(rep, "singular")
        return rep
    try:
        sr = singular_ideals(ring, spec.budgets["budget"])
        rep.add("singular/zeta-dim", "pass", sr.zeta.dim, "rule:singular-classical")
        rep.add("singular/zeta-dg-dim", "pass", sr.zeta_dg.dim, "rule:singular-dg")
        rep.add("singular/zeta-ker-dim", "pass", sr.zeta_ker_embedded.dim, "rule:singular-cycles")
        for c in sr.checks:
            _law(rep, f"singular/{c.name}", c.ok, c.witness, "law:singular-comparisons")
        for flag in sorted(sr.map_flags):
            value = sr.map_flags[flag]
            rep.add(
                f"singular/h-map-{flag}",
                "unknown" if value is None else "pass",
                value,
                "rule:h-comparison-map",
                certified=value is not None,
            )
        rep.add(
            "singular/h-zeta-dg",
            "pass",
            {str(k): v for k, v in sorted(sr.h_zeta_dg.items())},
            "rule:homology-of-singular",
        )
    except _SKIP_ERRORS as e:
        _skip(rep, "singular/available", e)
    return rep


def _module_label(m: dict) -> str:
    label = f"{m['side']}-regular"
    if m["copies"] > 1:
        label += f"-x{m['copies']}"
    return label


def _build_module(alg: DgAlgebra, m: dict) -> DgModule:
    mod = DgModule.regular(alg, m["side"])
    for _ in range(m["copies"] - 1):
        mod = direct_sum_modules(mod, DgModule.regular(alg, m["side"]))
    return mod


def run_essential(ring, spec: SpecFile) -> AnalysisReport:
    rep = AnalysisReport()
    if not isinstance(ring, DgAlgebra):
        _not_findim(rep, "essential")
        return rep
    budget = spec.budgets["budget"]
    modules = spec.modules or [{"kind": "regular", "side": "right", "copies": 1}]
    for m in modules:
        label = f"essential/{_module_label(m)}"
        try:
            mod = _build_module(ring, m)
            soc = dg_socle(mod, "dg", budget)
            rep.add(f"{label}/socle-dim", "pass", soc.space.dim, "rule:socle")
            ess = is_dg_essential(soc.space, mod, "dg", budget)
            _law(rep, f"{label}/socle-essential", ess, soc.space.dim, "law:artinian-socle")
            ud = dg_udim(mod, "dg", budget, spec.seed)
            rep.add(
                f"{label}/udim",
                "pass" if ud.exact else "unknown",
                f"{ud.lower}..{ud.upper}",
                "rule:udim",
                certified=ud.exact,
            )
            comp, certified = dg_complement(mod, soc, "dg", budget, spec.seed)
            rep.add(f"{label}/socle-complement-dim", "pass", comp.space.dim, "rule:complement", certified=certified)
            inter = soc.space.intersect(comp.space)
            _law(rep, f"{label}/complement-meets-trivially", inter.is_zero(), inter.dim, "law:complement")
            total = soc.space.sum(comp.space)
            _law(
                rep,
                f"{label}/socle-plus-complement-essential",
                is_dg_essential(total, mod, "dg", budget),
                total.dim,
                "law:complement-essential",
            )
        except _SKIP_ERRORS as e:
            _skip(rep, f"{label}/available", e)
    return rep


def run_localise(ring, spec: SpecFile) -> AnalysisReport:
    rep = AnalysisReport()
    if not spec.localise_at:
        _skip(rep, "localise/requested", "no localisation requests in spec", "rule:spec")
        return rep
    samples = spec.budgets["samples"]
    for i, req in enumerate(spec.localise_at):
        label = f"localise/s{i}"
        try:
            gens = [parse_element(ring, e) for e in req["elements"]]
            ms = mult_set(ring, gens, req["mode"])
            lr = localise(ring, ms)
        except _HYPOTHESIS_ERRORS as e:
            rep.add(f"{label}/construct", "fail", str(e), "rule:ore-hypotheses")
            continue
        except _SKIP_ERRORS as e:
            _skip(rep, f"{label}/construct", e)
            continue
        rep.add(f"{label}/construct", "pass", lr.case, "rule:ore-localisation")
        try:
            verify_localisation(lr, samples=samples, seed=spec.seed)
            for c in VERIFICATION_CHECKS:
                rep.add(f"{label}/{c}", "pass", None, f"law:{c}")
        except VerificationError as e:
            for c in VERIFICATION_CHECKS:
                if c == e.check:
                    rep.add(f"{label}/{c}", "fail", str(e.witness), f"law:{c}")
                else:
                    rep.add(f"{label}/{c}", "unknown", "aborted after first failure", f"law:{c}")
        qa = quotient_ring_axioms(lr, samples=min(samples, 200), seed=spec.seed)
        _law(rep, f"{label}/quotient-ring-axioms", qa.ok, None, "law:quotient-ring")
        if isinstance(ring, DgAlgebra):
            rep.add(f"{label}/ass-dim", "pass", lr.ass_space.dim, "rule:ass")
    return rep


def run_goldie(ring, spec: SpecFile) -> AnalysisReport:
    rep = AnalysisReport()
    try:
        gr = goldie_pipeline(
            ring,
            budget=spec.budgets["budget"],
            seed=spec.seed,
            samples=spec.budgets["samples"],
            window=spec.budgets["window"],
        )
    except HypothesisFailed as e:
        gr = e.report
    except _SKIP_ERRORS as e:
        _skip(rep, "goldie/available", e)
        return rep
    seen = set()
    for st in gr.stages:
        seen.add(st.name)
        witness = st.witness if st.status != "pass" else (st.note or None)
        rep.add(f"goldie/{st.name}", st.status, witness, f"stage:{st.name}", certified=st.certified)
    for name in GOLDIE_STAGES:
        if name not in seen:
            rep.add(f"goldie/{name}", "unknown", "not reached", f"stage:{name}", certified=False)
    for fact in gr.transfer_facts:
        rep.add(f"goldie/transfer/{fact.name}", "pass" if fact.ok else "fail", fact.witness, "law:transfer")
    return rep


def run_homcompare(ring, spec: SpecFile) -> AnalysisReport:
    rep = AnalysisReport()
    if not spec.localise_at:
        _skip(rep, "homcompare/requested", "no localisation requests in spec", "rule:spec")
        return rep
    for i, req in enumerate(spec.localise_at):
        label = f"homcompare/s{i}"
        try:
            gens = [parse_element(ring, e) for e in req["elements"]]
            ms = mult_set(ring, gens, req["mode"])
        except _HYPOTHESIS_ERRORS as e:
            rep.add(f"{label}/construct", "fail", str(e), "rule:ore-hypotheses")
            continue
        try:
            iso = homology_comparison(ring, ms, spec.budgets["window"])
        except (ValueError, WindowTooSmall) as e:
            _skip(rep, f"{label}/applicable", e, "rule:cycle-denominators")
            continue
        except _SKIP_ERRORS as e:
            _skip(rep, f"{label}/applicable", e)
            continue
        for c in iso.checks:
            _law(rep, f"{label}/{c.name}", c.ok, c.witness, "law:homology-localisation")
    return rep


RUNNERS = {
    "validate": run_validate,
    "radicals": run_radicals,
    "singular": run_singular,
    "essential": run_essential,
    "localise": run_localise,
    "goldie": run_goldie,
    "homcompare": run_homcompare,
}


def run_all(ring, spec: SpecFile) -> AnalysisReport:
    requested = spec.analyses or list(ANALYSES)
    rep = AnalysisReport()
    for name in ANALYSES:
        if name in requested:
            rep.extend(RUNNERS[name](ring, spec))
    return rep


def run_spec(spec: SpecFile, command: str) -> AnalysisReport:
    ring = build_ring(spec)
    t0 = time.perf_counter()
    if command == "validate" or not ring.validate().ok:
        # Nothing downstream is meaningful on an invalid ring, so any
        # command reduces to the axiom report (and a nonzero exit).
        rep = run_validate(ring, spec)
    elif command == "all":
        rep = run_all(ring, spec)
    else:
        rep = RUNNERS[command](ring, spec)
    elapsed = time.perf_counter() - t0
    for e in rep.entries:
        if e.timing is None:
            e.timing = elapsed
    return rep


# ------------------------------------------------------------- fixtures


def bundled_fixture_texts() -> list[tuple[str, str]]:
    """(filename, text) for every bundled corpus document, sorted by name."""
    root = resources.files("dgforge").joinpath("data")
    out = []
    for entry in root.iterdir():
        if entry.name.endswith(".json"):
            out.append((entry.name, entry.read_text(encoding="utf-8")))
    return sorted(out)


def run_fixtures(texts, strict: bool = True, overrides=None) -> AnalysisReport:
    """Run each corpus document's requested analyses and compare every
    expected (anchored) outcome against the computed one."""
    rep = AnalysisReport()
    for filename, text in texts:
        spec = parse_spec(text, strict=strict)
        _apply_overrides(spec, overrides or {})
        name = spec.name or filename.rsplit(".", 1)[0]
        prov = spec.provenance or f"fixture:{name}"
        sub = run_spec(spec, "all")
        computed = {e.name: e for e in sub.entries}
        rep.add(
            f"{name}/analyses-ran",
            "pass",
            {"analyses": list(spec.analyses), "checks": len(sub.entries)},
            prov,
        )
        for key in sorted(spec.expect):
            want = spec.expect[key]
            have = computed.get(key)
            if have is None:
                rep.add(f"{name}/expect/{key}", "fail", "no such computed check", prov)
                continue
            ok = have.status == want["status"]
            if ok and "witness" in want:
                ok = _canon_witness(have.witness) == _canon_witness(want["witness"])
            witness = (
                want["status"]
                if ok
                else {
                    "expected": want,
                    "computed": {"status": have.status, "witness": have.witness},
                }
            )
            rep.add(f"{name}/expect/{key}", "pass" if ok else "fail", witness, prov)
    return rep


# ------------------------------------------------------------------ main


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _apply_overrides(spec: SpecFile, overrides: dict) -> None:
    if overrides.get("field") is not None:
        spec.field_tag = parse_field_tag(overrides["field"])
    for key in ("seed", "samples", "window", "budget"):
        if overrides.get(key) is not None:
            spec.budgets[key] = overrides[key]


def _overrides_from_args(args) -> dict:
    return {
        "field": args.field,
        "seed": args.seed,
        "samples": args.samples,
        "window": args.window,
        "budget": args.budget,
    }


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--field", help="override the spec's coefficient field (Q, F5, GF(7), ...)")
    shared.add_argument("--seed", type=int, help="override the spec's random seed")
    shared.add_argument("--samples", type=int, help="override the spec's sample count")
    shared.add_argument("--window", type=int, help="override the spec's degree window")
    shared.add_argument("--budget", type=int, help="override the spec's enumeration budget")
    shared.add_argument(
        "--strict",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="reject unknown spec keys (--no-strict downgrades them to warnings)",
    )
    shared.add_argument("--format", choices=["json", "text"], default="json", help="report format")
    parser = argparse.ArgumentParser(
        prog="dg-forge",
        description="Exact dg-ring analyses: radicals, singular ideals, essential "
        "submodules, Ore localisation, and the graded Goldie pipeline.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd, blurb in (
        ("validate", "check the dg-ring axioms"),
        ("radicals", "nilpotent and prime radicals and their laws"),
        ("singular", "classical/dg/cycle singular ideals and comparison maps"),
        ("essential", "socle, uniform dimension, and complements of declared modules"),
        ("localise", "construct and verify the requested Ore localisations"),
        ("goldie", "run the graded Goldie pipeline"),
        ("homcompare", "compare H(R_S) with the localisation of H(R)"),
        ("all", "run every analysis requested by the spec"),
    ):
        p = sub.add_parser(cmd, parents=[shared], help=blurb)
        p.add_argument("specfile", help="path to a run description, or - for stdin")
    p = sub.add_parser("fixtures", parents=[shared], help="run the bundled corpus")
    p.add_argument("specfile", nargs="*", help="fixture documents (default: bundled corpus)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "fixtures":
            if args.specfile:
                texts = [(path, _read_source(path)) for path in args.specfile]
            else:
                texts = bundled_fixture_texts()
            rep = run_fixtures(texts, strict=args.strict, overrides=_overrides_from_args(args))
        else:
            spec = parse_spec(_read_source(args.specfile), strict=args.strict)
            for warning in spec.warnings:
                print(f"warning: {warning}", file=sys.stderr)
            _apply_overrides(spec, _overrides_from_args(args))
            rep = run_spec(spec, args.command)
    except SpecError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.buffer.write(emit_report(rep, args.format))
    sys.stdout.buffer.flush()
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
