"""Command-line interface for batch runs on problem files.

Exit codes: 0 verdict computed (whatever the verdict), 1 input error,
2 enumeration budget exceeded, 3 internal consistency failure.
"""

import argparse
import sys

import numpy as np

from . import analysis, search, spectral
from .analysis import GroupValuedFunction, NonUnitaryError
from .groups import FiniteAbelianGroup
from .problemfile import ProblemFileError, complex_pairs, load_problem, render_json

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_INCONSISTENT = 3


def _psi_name(group, p):
    return f"psi{p + 1}={group.element(p)}"


def _emit(args, machine_report, text_lines):
    if args.format == "machine":
        print(render_json(machine_report))
    else:
        for line in text_lines:
            print(line)


def _tol(args, problem):
    return args.tol if args.tol is not None else problem.tolerance


# -- subcommand handlers -------------------------------------------------------------


def cmd_info(args, problem):
    X = problem.gset
    G = X.group
    dims = spectral.component_dimensions(X)
    possible, empty = analysis.bent_existence_precondition(X)
    kernel = [list(G.element(a)) for a in X.kernel_indices]
    report = {
        "orbits": [list(o) for o in X.orbits],
        "kernel": kernel,
        "faithful": X.is_faithful(),
        "dims": dims,
        "characters": [list(c) for c in G.characters()],
        "bent_possible": possible,
        "empty_components": [list(c) for c in empty],
        "tolerance": _tol(args, problem),
    }
    verdict = "YES (necessary condition)" if possible else (
        "NO (" + ", ".join(_psi_name(G, G.element_index(c)) for c in empty) + " empty)"
    )
    text = [
        f"orbits: {len(X.orbits)} {[list(o) for o in X.orbits]}",
        f"faithful: {'yes' if X.is_faithful() else 'no'}",
        "dims: " + ",".join(str(d) for d in dims),
        f"bent possible: {verdict}",
    ]
    _emit(args, report, text)
    return EXIT_OK


def cmd_dual(args, problem):
    X = problem.gset
    D = X.dual_basis
    check = spectral.verify_dual_basis(X, D, _tol(args, problem))
    report = {
        "gdual": [complex_pairs(row) for row in D.matrix],
        "characters": [list(D.character_of(i)) for i in range(D.n)],
        "conj_partner": [int(i) for i in D.conj_partner],
        "verified": check.passed,
        "tolerance": check.tol,
    }
    text = [f"dual basis of {D.n} functions (rows scaled to squared norm n={D.n})"]
    for i in range(D.n):
        vals = ", ".join(f"{v.real:+.6f}{v.imag:+.6f}i" for v in D.matrix[i])
        text.append(f"lambda{i + 1} [{_psi_name(X.group, int(D.psi_index[i]))}]: {vals}")
    text.append(f"orthogonality verified: {'yes' if check.passed else 'NO'}")
    _emit(args, report, text)
    return EXIT_OK


def cmd_fourier(args, problem):
    X = problem.gset
    f = problem.require_function()
    D = X.dual_basis
    spectrum = spectral.fourier(f, D).values
    report = {
        "spectrum": complex_pairs(spectrum),
        "characters": [list(D.character_of(i)) for i in range(D.n)],
        "tolerance": _tol(args, problem),
    }
    text = ["spectrum relative to the canonical dual basis"]
    for i, v in enumerate(spectrum):
        text.append(
            f"f_hat(lambda{i + 1}) [{_psi_name(X.group, int(D.psi_index[i]))}] = "
            f"{v.real:+.9f}{v.imag:+.9f}i"
        )
    _emit(args, report, text)
    return EXIT_OK


def cmd_decompose(args, problem):
    X = problem.gset
    f = problem.require_function()
    G = X.group
    components = [spectral.psi_component(X, p, f) for p in range(G.order)]
    norms_sq = [float(np.linalg.norm(c) ** 2) for c in components]
    report = {
        "characters": [list(c) for c in G.characters()],
        "components": [complex_pairs(c) for c in components],
        "component_norms_sq": norms_sq,
        "tolerance": _tol(args, problem),
    }
    text = ["classical decomposition f = sum of psi-components"]
    for p in range(G.order):
        text.append(f"{_psi_name(G, p)}: |f_psi|^2 = {norms_sq[p]:.9f}")
    _emit(args, report, text)
    return EXIT_OK


def cmd_check_linear(args, problem):
    X = problem.gset
    f = problem.require_function()
    psi = analysis.is_g_linear(X, f, _tol(args, problem))
    report = {
        "verdict": psi is not None,
        "character": list(psi) if psi is not None else None,
        "tolerance": _tol(args, problem),
    }
    if psi is None:
        text = ["not G-linear"]
    else:
        text = [f"G-linear with character {_psi_name(X.group, X.group.element_index(psi))}"]
    _emit(args, report, text)
    return EXIT_OK


def cmd_check_bent(args, problem):
    X = problem.gset
    f = problem.require_function()
    tol = _tol(args, problem)
    criteria = analysis.CRITERIA if args.criterion == "all" else (args.criterion,)
    rep = analysis.bent_report(X, f, criteria=criteria, tol=tol)
    report = {
        "verdict": rep.verdict,
        "criteria": rep.criteria,
        "consistent": rep.consistent,
        "energies": [float(e) for e in rep.per_psi_energy],
        "derivative_sums": complex_pairs(rep.per_alpha_derivative_sum),
        "distance": rep.distance_to_linear,
        "tolerance": rep.tolerance,
    }
    target = X.n * X.n / X.group.order
    flat = np.allclose(rep.per_psi_energy, target, atol=tol * target, rtol=0)
    names = " and ".join(sorted(rep.criteria))
    if rep.verdict:
        suffix = "all criteria agree" if len(rep.criteria) > 1 else f"by {names}"
        text = [f"BENT ({suffix})"]
    else:
        text = [f"NOT BENT (checked {names})"]
    if flat:
        text.append(f"energy {target:.9f} per character; distance {rep.distance_to_linear:.9f}")
    else:
        text.append("energies per character: " + ", ".join(f"{e:.9f}" for e in rep.per_psi_energy))
        text.append(f"distance to G-linear set: {rep.distance_to_linear:.9f}")
    _emit(args, report, text)
    if len(rep.criteria) > 1 and not rep.consistent:
        print("internal consistency failure: bent criteria disagree", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_check_pnl(args, problem):
    g = problem.require_function(kinds=("group_valued",))
    tol = _tol(args, problem)
    rep = analysis.is_g_perfect_nonlinear(g, mode=args.mode, tol=tol)
    report = {
        "verdict": rep.verdict,
        "mode": rep.mode,
        "derivative_counts": [[int(c) for c in row] for row in rep.derivative_counts],
        "bent_per_character": {str(k): v for k, v in rep.bent_per_character.items()},
        "modes_agree": rep.modes_agree,
        "tolerance": rep.tolerance,
    }
    text = ["G-PERFECT NONLINEAR" if rep.verdict else "NOT G-perfect nonlinear"]
    if rep.derivative_counts:
        shown = {tuple(int(c) for c in row) for row in rep.derivative_counts}
        if len(shown) == 1:
            counts = ",".join(str(c) for c in next(iter(shown)))
            text.append(f"derivative distribution {counts} for each nontrivial direction")
        else:
            for a, row in enumerate(rep.derivative_counts, start=1):
                text.append(f"direction {problem.gset.group.element(a)}: counts {list(row)}")
    _emit(args, report, text)
    if rep.mode == "both" and not rep.modes_agree:
        print("internal consistency failure: direct and via_bent modes disagree", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_search_bent(args, problem):
    X = problem.gset
    found = search.search_bent(X, args.q, criterion=args.criterion, tol=_tol(args, problem))
    total = args.q**X.n
    report = {
        "verdict": bool(found),
        "q": args.q,
        "criterion": args.criterion,
        "candidates": total,
        "count": len(found),
        "bent": [list(e) for e in found],
        "tolerance": _tol(args, problem),
    }
    text = [f"{len(found)} bent functions among {total} candidates"]
    text.extend(f"  exponents {list(e)}" for e in found)
    _emit(args, report, text)
    return EXIT_OK


def cmd_search_pnl(args, problem):
    X = problem.gset
    if args.codomain is not None:
        H = FiniteAbelianGroup([int(v) for v in args.codomain.split(",") if v])
    elif isinstance(problem.function, GroupValuedFunction):
        H = problem.function.codomain
    else:
        raise ProblemFileError(
            "search-pnl needs --codomain or a group_valued function in the file"
        )
    criterion = "all" if args.mode == "both" else args.mode
    found = search.search_pnl(X, H, criterion=criterion, tol=_tol(args, problem))
    total = H.order**X.n
    report = {
        "verdict": bool(found),
        "codomain": list(H.invariants),
        "mode": args.mode,
        "candidates": total,
        "count": len(found),
        "pnl": [[list(t) for t in g.value_tuples] for g in found],
        "tolerance": _tol(args, problem),
    }
    text = [f"{len(found)} perfect nonlinear functions among {total} candidates"]
    text.extend(f"  values {g.value_tuples}" for g in found)
    _emit(args, report, text)
    return EXIT_OK


def cmd_verify(args, problem):
    X = problem.gset
    D = X.dual_basis
    tol = args.tol if args.tol is not None else 1e-8
    check = spectral.verify_dual_basis(X, D, tol)
    report = {
        "verdict": check.passed,
        "gram_row_deviation": check.gram_row_deviation,
        "gram_point_deviation": check.gram_point_deviation,
        "linearity_deviation": check.linearity_deviation,
        "conjugation_deviation": check.conjugation_deviation,
        "partner_involution_ok": check.partner_involution_ok,
        "partner_character_ok": check.partner_character_ok,
        "tolerance": tol,
    }
    text = [
        f"dual basis verification: {'PASS' if check.passed else 'FAIL'}",
        f"max |<lambda_i, lambda_j> - n delta_ij| = {check.gram_row_deviation:.3e}",
        f"max |sum_i lambda_i(x) conj(lambda_i(y)) - n delta_xy| = {check.gram_point_deviation:.3e}",
        f"max G-linearity deviation = {check.linearity_deviation:.3e}",
        f"max conjugation-closure deviation = {check.conjugation_deviation:.3e}",
    ]
    _emit(args, report, text)
    return EXIT_OK if check.passed else EXIT_INCONSISTENT


# -- argument parsing ------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gsetfourier",
        description="Fourier analysis, bentness, and perfect nonlinearity on G-sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, helptext, **extra):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("problem", help="path to a JSON problem file")
        p.add_argument("--tol", type=float, default=None, help="comparison tolerance")
        p.add_argument(
            "--format", choices=("text", "machine"), default="text", help="report format"
        )
        for flag, kwargs in extra.items():
            p.add_argument(flag, **kwargs)
        p.set_defaults(handler=handler)
        return p

    add("info", cmd_info, "orbits, kernel, component dimensions, bent precondition")
    add("dual", cmd_dual, "build and print the canonical dual basis")
    add("fourier", cmd_fourier, "Fourier transform of the file's function")
    add("decompose", cmd_decompose, "classical decomposition into psi-components")
    add("check-linear", cmd_check_linear, "test G-linearity of the file's function")
    add(
        "check-bent",
        cmd_check_bent,
        "test bentness of the file's function",
        **{"--criterion": dict(choices=("spectral", "derivatives", "poinsot", "all"), default="all")},
    )
    add(
        "check-pnl",
        cmd_check_pnl,
        "test G-perfect nonlinearity of the file's group-valued function",
        **{"--mode": dict(choices=("direct", "via_bent", "both"), default="both")},
    )
    add(
        "search-bent",
        cmd_search_bent,
        "enumerate all bent functions over q-th roots of unity",
        **{
            "--q": dict(type=int, required=True, help="root-of-unity order"),
            "--criterion": dict(
                choices=("spectral", "derivatives", "poinsot", "all"), default="derivatives"
            ),
        },
    )
    add(
        "search-pnl",
        cmd_search_pnl,
        "enumerate all perfect nonlinear functions into a codomain group",
        **{
            "--codomain": dict(default=None, help="codomain invariants, comma-separated"),
            "--mode": dict(choices=("direct", "via_bent", "both"), default="direct"),
        },
    )
    add("verify", cmd_verify, "verify the orthogonality relations of the built dual basis")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        problem = load_problem(args.problem)
        code = args.handler(args, problem)
    except search.BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except search.CriterionMismatchError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except NonUnitaryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ProblemFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
