"""Command-line interface: validation, smoothness, characters, cohomology
tables, Picard lattice data, verdicts, and a random instance generator.

Exit codes: 0 success / agreement, 1 mathematical failure (a check that ran
and came out false), 2 invalid input, 3 inconclusive (a computation declined
to decide, e.g. a degree cap was hit).
"""

from __future__ import annotations

import argparse
import sys
import time

from .action import (
    ActionSpec,
    GenerationError,
    InvalidAction,
    PencilNotInvariant,
    invariant_pencil,
    invariant_sublattice,
    is_gfano,
    picard_involution,
    projective_order,
    random_equivariant_model,
    DivisorClass,
    H,
    E,
    MINUS_K,
)
from .characters import (
    CharacterMultiset,
    OracleError,
    Verdict,
    characters_differ,
    curve_action_oracle,
    ij_characters,
    ij_oracle,
    jac_curve_characters,
    verdict,
)
from .cohomology import InconclusiveCohomology, euler_chase, koszul_cohomology_on_X, kunneth
from .groebner import DegreeCapExceeded, hilbert_polynomial, qp_str
from .instancefile import Instance, ParseError, load_instance, save_instance, serialize_instance
from .model import (
    InvalidModel,
    Side,
    SmoothnessInconclusive,
    determinantal_quartic,
    full_smoothness,
    minor_cubics,
    quartic_smooth,
    rank_locus_check,
)

EXIT_OK = 0
EXIT_MATH_FAIL = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3

CONVENTION = "omega = zeta_n, the canonical primitive n-th root of unity"


class Report:
    """Ordered key-value tree with plain and machine renderings."""

    def __init__(self):
        self.items = []  # (dotted key, value)

    def put(self, key: str, value):
        self.items.append((key, value))

    def render_tree(self) -> str:
        return "\n".join("%s = %s" % (k, v) for k, v in self.items) + "\n"

    def render_plain(self, elapsed: float | None = None) -> str:
        width = max((len(k) for k, _ in self.items), default=0)
        lines = ["%-*s  %s" % (width, k, v) for k, v in self.items]
        if elapsed is not None:
            lines.append("%-*s  %.3fs" % (width, "timing", elapsed))
        return "\n".join(lines) + "\n"


def _echo_instance(report: Report, inst: Instance):
    report.put("instance.conductor", inst.conductor)
    report.put("instance.order", inst.spec.order)
    report.put("instance.swap", "true" if inst.spec.swap else "false")
    report.put("instance.weights", ", ".join(str(w) for w in inst.spec.weights))
    if inst.spec.weights2 is not None:
        report.put("instance.weights2", ", ".join(str(w) for w in inst.spec.weights2))
    if inst.declared_exponents is not None:
        report.put(
            "instance.exponents", ", ".join(str(s) for s in inst.declared_exponents)
        )
    report.put("convention", CONVENTION)


def _character_string(c: CharacterMultiset) -> str:
    return "{%s} mod %d" % (", ".join(str(e) for e in c.exponents), c.order)


def _pencil_with_validation(inst: Instance, report: Report):
    pencil = invariant_pencil(inst.model, inst.spec)
    report.put("pencil.exponents", ", ".join(str(s) for s in sorted(pencil.exponents)))
    if inst.declared_exponents is not None:
        declared = sorted(s % inst.spec.order for s in inst.declared_exponents)
        if declared != sorted(pencil.exponents):
            raise InvalidAction(
                "exponents-mismatch",
                "declared exponents %s do not match the recovered multiset %s"
                % (declared, sorted(pencil.exponents)),
            )
    return pencil


# -- subcommands -----------------------------------------------------------------


def cmd_validate(inst: Instance, args, report: Report) -> int:
    report.put("model.forms-independent", True)  # load_instance already validated
    report.put("action.projective-order", projective_order(inst.spec))
    pencil = _pencil_with_validation(inst, report)
    report.put("action.preserves-pencil", True)
    report.put("validate.ok", True)
    return EXIT_OK


def cmd_smooth(inst: Instance, args, report: Report) -> int:
    q = determinantal_quartic(inst.model)
    smooth_q = quartic_smooth(q)
    report.put("quartic.smooth", smooth_q)
    rank_ok = rank_locus_check(inst.model, Side.FIRST)
    report.put("rank-locus.no-rank-le-1", rank_ok)
    ok = smooth_q and rank_ok
    if args.full:
        try:
            full = full_smoothness(inst.model)
        except SmoothnessInconclusive as exc:
            report.put("smooth.full", "inconclusive: %s" % exc)
            return EXIT_INCONCLUSIVE
        report.put("smooth.full", full)
        ok = ok and full
    report.put("smooth.ok", ok)
    return EXIT_OK if ok else EXIT_MATH_FAIL


def cmd_gfano(inst: Instance, args, report: Report) -> int:
    flag = is_gfano(inst.spec)
    report.put("gfano", flag)
    if flag:
        report.put(
            "gfano.invariant-picard",
            "rank 1, generated by -K = %s (the action swaps the two "
            "hyperplane classes)" % MINUS_K,
        )
    else:
        report.put(
            "gfano.invariant-picard",
            "rank 2, generated by H and H' (both hyperplane classes are "
            "preserved)",
        )
    return EXIT_OK


def cmd_chars(inst: Instance, args, report: Report) -> int:
    pencil = _pencil_with_validation(inst, report)
    n = inst.spec.order
    weights = list(inst.spec.weights) + list(inst.spec.weights2 or ())
    jac = jac_curve_characters(pencil.exponents, weights, n)
    report.put("characters.jacobian", _character_string(jac))
    if inst.spec.swap:
        ij = ij_characters(pencil.exponents, weights, n)
        report.put("characters.intermediate-jacobian", _character_string(ij))
        report.put("characters.differ", characters_differ(jac, ij))
    if args.oracle:
        jac_o = curve_action_oracle(pencil)
        report.put("oracle.jacobian", _character_string(jac_o))
        ij_o = ij_oracle(pencil)
        report.put("oracle.intermediate-jacobian", _character_string(ij_o))
        agree = jac == jac_o and (not inst.spec.swap or ij == ij_o)
        report.put("oracle.agrees", agree)
        if not agree:
            return EXIT_MATH_FAIL
    return EXIT_OK


def cmd_verify(inst: Instance, args, report: Report) -> int:
    pencil = _pencil_with_validation(inst, report)
    n = inst.spec.order
    weights = list(inst.spec.weights) + list(inst.spec.weights2 or ())
    jac = jac_curve_characters(pencil.exponents, weights, n)
    jac_o = curve_action_oracle(pencil)
    report.put("jacobian.formula", _character_string(jac))
    report.put("jacobian.oracle", _character_string(jac_o))
    report.put("jacobian.agree", jac == jac_o)
    ij_o = ij_oracle(pencil)
    report.put("intermediate-jacobian.oracle", _character_string(ij_o))
    if inst.spec.swap:
        ij = ij_characters(pencil.exponents, weights, n)
        report.put("intermediate-jacobian.formula", _character_string(ij))
        report.put("intermediate-jacobian.agree", ij == ij_o)
        report.put("characters.differ", characters_differ(jac, ij))
        ok = jac == jac_o and ij == ij_o and characters_differ(jac, ij)
    else:
        report.put("intermediate-jacobian.matches-curve", ij_o == jac)
        ok = jac == jac_o and ij_o == jac
    report.put("verify.ok", ok)
    return EXIT_OK if ok else EXIT_MATH_FAIL


def cmd_cohomology(inst_unused, args, report: Report) -> int:
    a, b = args.a, args.b
    report.put("twist", "(%d, %d)" % (a, b))
    report.put("ambient.kunneth", kunneth(a, b).dims)
    try:
        table = koszul_cohomology_on_X(a, b)
    except InconclusiveCohomology as exc:
        report.put("cohomology.on-X", "inconclusive: %s" % exc)
        return EXIT_INCONCLUSIVE
    report.put("cohomology.on-X", table.dims)
    h2, h3 = euler_chase()
    report.put("euler-chase.h2-vanishes", h2)
    report.put("euler-chase.h3-vanishes", h3)
    return EXIT_OK


def cmd_hilbert(inst: Instance, args, report: Report) -> int:
    side = Side.SECOND if args.side == "second" else Side.FIRST
    ideal = minor_cubics(inst.model, side)
    try:
        hp = hilbert_polynomial(ideal)
    except DegreeCapExceeded as exc:
        report.put("hilbert.polynomial", "inconclusive: %s" % exc)
        return EXIT_INCONCLUSIVE
    report.put("hilbert.polynomial", qp_str(hp))
    expected = (qp_str(hp) == "6*t - 2")
    report.put("hilbert.curve-of-degree-6-genus-3", expected)
    return EXIT_OK if expected else EXIT_MATH_FAIL


def cmd_picard(inst, args, report: Report) -> int:
    swap = args.swap if inst is None else inst.spec.swap
    iota_h = picard_involution(H)
    iota_e = picard_involution(E)
    report.put("involution.H", str(iota_h))
    report.put("involution.E", str(iota_e))
    sq_ok = (
        picard_involution(iota_h) == H and picard_involution(iota_e) == E
    )
    report.put("involution.squares-to-identity", sq_ok)
    report.put("involution.fixes-minus-K", picard_involution(MINUS_K) == MINUS_K)
    gens = invariant_sublattice(swap)
    report.put("invariant-sublattice.rank", len(gens))
    report.put("invariant-sublattice.generators", ", ".join(str(g) for g in gens))
    anticanonical = DivisorClass(-4, 1)
    h_plus_hprime = -(H + iota_h)
    report.put("identity.K-equals-minus-H-minus-H'", anticanonical == h_plus_hprime)
    return EXIT_OK


def cmd_verdict(inst: Instance, args, report: Report) -> int:
    result = verdict(inst.spec)
    report.put("verdict", result.value)
    if result is Verdict.NOT_LINEARISABLE:
        pencil = _pencil_with_validation(inst, report)
        n = inst.spec.order
        jac = jac_curve_characters(pencil.exponents, inst.spec.weights, n)
        ij = ij_characters(pencil.exponents, inst.spec.weights, n)
        report.put("witness.jacobian", _character_string(jac))
        report.put("witness.intermediate-jacobian", _character_string(ij))
        report.put("witness.characters-differ", characters_differ(jac, ij))
        report.put(
            "explanation",
            "the invariant Picard lattice has rank 1; the actions on the two "
            "Lie algebras differ by the sign character and can never match",
        )
    else:
        report.put(
            "explanation",
            "both hyperplane classes are preserved, so the first blowdown to "
            "P3 is equivariant and linearises the action",
        )
    return EXIT_OK


def cmd_random(args, report: Report) -> int:
    weights = tuple(int(w) for w in args.weights.split(","))
    exponents = tuple(int(s) for s in args.exponents.split(","))
    try:
        model, spec = random_equivariant_model(
            args.order, weights, exponents, seed=args.seed
        )
    except GenerationError as exc:
        report.put("random.error", str(exc))
        return EXIT_INVALID
    inst = Instance(
        model=model,
        spec=spec,
        conductor=_lcm(model.conductor, spec.order),
        declared_exponents=exponents,
    )
    if args.out:
        save_instance(inst, args.out)
        report.put("random.written", args.out)
    else:
        report.put("random.instance", "\n" + serialize_instance(inst))
    report.put("random.seed", args.seed)
    return EXIT_OK


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


# -- dispatch ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fano212",
        description="Exact verification toolkit for cyclic symmetries of "
        "(1,1)-divisor triples in P3 x P3",
    )
    parser.add_argument("--format", choices=("plain", "tree"), default=None,
                        help="report style: human table or machine key-value tree")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, needs_input=True):
        p = sub.add_parser(name, help=help_text)
        # accepted before or after the subcommand
        p.add_argument("--format", choices=("plain", "tree"), default=None)
        if needs_input:
            p.add_argument("--input", required=True, help="instance file")
        return p

    add("validate", "check the model and the action declaration")
    p = add("smooth", "quartic and rank-locus smoothness checks")
    p.add_argument("--full", action="store_true",
                   help="run the 16-chart Jacobian criterion (slow)")
    add("gfano", "report whether the invariant Picard rank is 1")
    p = add("chars", "character multisets of both Lie algebras")
    p.add_argument("--oracle", action="store_true",
                   help="also run the symbolic eigenvalue oracles")
    add("verify", "formula-versus-oracle agreement for both Jacobians")
    p = add("cohomology", "line-bundle cohomology tables on X", needs_input=False)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p = add("hilbert", "Hilbert polynomial of the blowdown centre")
    p.add_argument("--side", choices=("first", "second"), default="first")
    p = sub.add_parser("picard", help="Picard lattice involution and invariant sublattice")
    p.add_argument("--format", choices=("plain", "tree"), default=None)
    p.add_argument("--input", help="instance file (for its swap flag)")
    p.add_argument("--swap", type=lambda v: v == "true", default=True,
                   help="swap flag when no instance is given (true/false)")
    add("verdict", "linearisability verdict for the declared action")
    p = add("random", "generate a random equivariant instance", needs_input=False)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--weights", required=True, help="r0,r1,r2,r3")
    p.add_argument("--exponents", required=True, help="s1,s2,s3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the instance file here")
    return parser


_HANDLERS = {
    "validate": cmd_validate,
    "smooth": cmd_smooth,
    "gfano": cmd_gfano,
    "chars": cmd_chars,
    "verify": cmd_verify,
    "hilbert": cmd_hilbert,
    "verdict": cmd_verdict,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = Report()
    started = time.monotonic()
    try:
        if args.command == "cohomology":
            code = cmd_cohomology(None, args, report)
        elif args.command == "random":
            code = cmd_random(args, report)
        elif args.command == "picard":
            inst = load_instance(args.input) if args.input else None
            code = cmd_picard(inst, args, report)
        else:
            inst = load_instance(args.input)
            _echo_instance(report, inst)
            code = _HANDLERS[args.command](inst, args, report)
    except (ParseError, InvalidModel, InvalidAction, PencilNotInvariant, OSError) as exc:
        report.put("error", str(exc))
        code = EXIT_INVALID
    except (DegreeCapExceeded, SmoothnessInconclusive, InconclusiveCohomology) as exc:
        report.put("error", "inconclusive: %s" % exc)
        code = EXIT_INCONCLUSIVE
    except (OracleError,) as exc:
        report.put("error", str(exc))
        code = EXIT_MATH_FAIL
    elapsed = time.monotonic() - started
    if args.format == "tree":
        sys.stdout.write(report.render_tree())
    else:
        sys.stdout.write(report.render_plain(elapsed))
    return code


if __name__ == "__main__":
    sys.exit(main())
