"""Command-line front end.

.. code-block:: shell

    holevo simulate --scenario <path> [--out <path>] [--csv] [--tol <real>]
    holevo verify-bound --dim <int> --trials <int> --seed <int>
    holevo search-counterexample --dim <int> --trials <int> --seed <int> \\
        [--dump-dir <path>]

Exit codes: 0 ok, 2 input error, 3 numerical error, 4 property violation.  The
environment variable ``HOLEVO_LOG`` sets the log level (off, info, debug).
"""

import argparse
import datetime
import json
import logging
import os
import sys
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ._version import VERSION
from .evolution import evolve
from .generator_factory import family_factory
from .information import (
    certify_bound,
    holevo_chi,
    max_pairwise_commutator,
    mutual_information,
    shannon_entropy,
)
from .interactions import InteractionUnitary, check_conditions, von_neumann_defect
from .linalg import RealArray, random_probabilities
from .scenario import Report, Scenario, format_matrix, parse_tolerance
from .search import accessible_information_search
from .states import (
    Ensemble,
    density_from_eigensystem,
    pure_state_from_probabilities,
    random_density_matrix,
    random_povm,
)
from .util import (
    BOUND_TOL,
    EVOLVE_UNITARY_TOL,
    FINDING_TOL,
    HERMITIAN_TOL,
    UNITARY_TOL,
    VON_NEUMANN_TOL,
    HolevoError,
    InvalidInputError,
    NoFamilyFoundError,
    NumericalError,
    PropertyViolation,
    configure_logging,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_PROPERTY = 4

MIN_SWEEP_DIM = 2
MAX_SWEEP_DIM = 8


def run_scenario(scenario: Scenario, tol: Optional[float] = None) -> Report:
    """Evolve a scenario and certify the information its apparatus carries.

    Without a POVM the accessible-information search provides the measurement.

    :param scenario: the validated scenario
    :param tol: overrides the scenario's tolerance
    """
    options = scenario.options
    tolerance = options.tolerance if tol is None else tol
    u = scenario.interaction

    model = evolve(scenario.system, scenario.apparatus, u)
    basis = u.pointer_basis
    if basis is None:
        basis = scenario.apparatus_basis
    if basis is None:
        basis = np.eye(u.d_app, dtype=np.complex128)
    conditions = check_conditions(u, scenario.apparatus, basis)
    ensemble = model.ensemble()

    accessible: Optional[float] = None
    povm_info: Optional[float] = None
    if scenario.povm is None:
        best = accessible_information_search(
            ensemble, restarts=options.restarts, seed=options.seed
        )
        accessible = best.information_bits
        cert = certify_bound(ensemble, best.povm, tolerance)
    else:
        cert = certify_bound(ensemble, scenario.povm, tolerance)
        povm_info = cert.mutual_information_bits

    source = shannon_entropy(ensemble.probabilities)
    return Report(
        chi_bits=float(cert.chi_bits),
        source_entropy_bits=float(source),
        accessible_info_bits=accessible,
        povm_info_bits=povm_info,
        information_loss_bits=float(source - cert.mutual_information_bits),
        max_commutator=float(cert.max_pairwise_commutator),
        von_neumann_defect=float(conditions.von_neumann_defect),
        bound_satisfied=bool(
            cert.mutual_information_bits <= cert.chi_bits + tolerance
        ),
        saturated=bool(cert.saturated),
        provenance={
            "seed": options.seed,
            "restarts": options.restarts,
            "version": VERSION,
            "tolerances": {
                "bound": tolerance,
                "hermitian": HERMITIAN_TOL,
                "unitary": UNITARY_TOL,
                "evolve_unitary": EVOLVE_UNITARY_TOL,
            },
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        },
    )


def cmd_simulate(
    scenario_path: str,
    output_path: Optional[str] = None,
    csv_output: bool = False,
    tol: Optional[float] = None,
) -> Report:
    """Run a scenario file and write its report as JSON (or CSV).

    The report goes to `output_path` or to stdout.
    """
    try:
        scenario = Scenario.load(scenario_path)
    except OSError as exc:
        raise InvalidInputError(f"cannot read scenario: {exc}") from exc
    if tol is not None:
        tol = parse_tolerance(tol)
    report = run_scenario(scenario, tol)
    text = report.to_csv() if csv_output else report.dumps() + "\n"
    if output_path is None:
        sys.stdout.write(text)
    else:
        with open(output_path, "w", encoding="utf-8") as fp:
            fp.write(text)
        logger.info("report written to %s", output_path)
    return report


class BoundSweepSummary(NamedTuple):
    """The result of a Holevo-bound property sweep."""

    dim: int
    trials: int
    seed: int
    max_gap_bits: float
    r"""The largest `H(x:y) - \chi` observed."""
    failures: Tuple[int, ...]
    """The trials whose gap exceeded the tolerance."""


def _check_sweep_args(
    dim: int, trials: int, seed: int, max_dim: Optional[int] = None
) -> None:
    if dim < MIN_SWEEP_DIM:
        raise InvalidInputError(f"dim must be at least {MIN_SWEEP_DIM}, got {dim}")
    if max_dim is not None and dim > max_dim:
        raise InvalidInputError(f"dim must be at most {max_dim}, got {dim}")
    if trials < 1:
        raise InvalidInputError(f"trials must be at least 1, got {trials}")
    if seed < 0:
        raise InvalidInputError(f"seed must be nonnegative, got {seed}")


def random_bound_trial(dim: int, rng: np.random.Generator) -> Tuple[float, float]:
    """Draw a random ensemble and POVM and return `(H(x:y), chi)`."""
    n = int(rng.integers(1, dim + 2))
    probabilities = random_probabilities(n, rng)
    states = [
        random_density_matrix(dim, rng, int(rng.integers(1, dim + 1)))
        for _ in range(n)
    ]
    ensemble = Ensemble(zip(probabilities.tolist(), states))
    outcomes = int(rng.integers(2, 2 * dim + 1))
    # the elements must span the whole space
    rank = int(rng.integers(-(-dim // outcomes), dim + 1))
    povm = random_povm(dim, outcomes, rng, rank)
    return mutual_information(ensemble, povm), holevo_chi(ensemble)


def cmd_verify_bound(dim: int, trials: int, seed: int) -> BoundSweepSummary:
    """Check `H(x:y) <= chi` on random ensembles and POVMs.

    Trial `t` draws from ``default_rng([seed, t])``.
    """
    _check_sweep_args(dim, trials, seed, MAX_SWEEP_DIM)
    max_gap = -np.inf
    failures: List[int] = []
    for trial in range(trials):
        info, chi = random_bound_trial(dim, np.random.default_rng([seed, trial]))
        gap = info - chi
        max_gap = max(max_gap, gap)
        if gap > BOUND_TOL:
            logger.warning("trial %d: I = %.12f exceeds chi = %.12f", trial, info, chi)
            failures.append(trial)
    logger.info(
        "verify-bound d=%d: %d trials, max gap %.3g, %d failures",
        dim,
        trials,
        max_gap,
        len(failures),
    )
    return BoundSweepSummary(dim, trials, seed, float(max_gap), tuple(failures))


class Finding(NamedTuple):
    """A Von Neumann family whose conditional states do not commute."""

    trial: int
    commutator: float
    von_neumann_defect: float
    path: Optional[str]


class CounterexampleSummary(NamedTuple):
    """The result of a counterexample search."""

    dim: int
    trials: int
    seed: int
    max_commutator: float
    non_converged: int
    findings: Tuple[Finding, ...]


def _finding_scenario(
    u: InteractionUnitary,
    eigenvalues: RealArray,
    probs: RealArray,
    phases: RealArray,
    seed: int,
    trial: int,
    comm: float,
    defect: float,
) -> Dict[str, Any]:
    """Describe a finding as a loadable scenario with explicit blocks."""
    return {
        "system": {"probs": probs.tolist(), "phases": phases.tolist()},
        "apparatus": {
            "eigenvalues": eigenvalues.tolist(),
            "basis": format_matrix(u.pointer_basis),
        },
        "interaction": {
            "kind": "blocks",
            "blocks": [format_matrix(b) for b in u.blocks],
        },
        "povm": None,
        "options": {"tolerance": BOUND_TOL, "seed": seed, "restarts": 8},
        "finding": {
            "trial": trial,
            "max_commutator": comm,
            "von_neumann_defect": defect,
        },
    }


def cmd_search_counterexample(
    dim: int, trials: int, seed: int, dump_dir: Optional[str] = None
) -> CounterexampleSummary:
    """Look for Von Neumann families with non-commuting conditional states.

    Trial `t` draws a family by projection search, a random apparatus spectrum
    in the family's pointer basis and a random system state from
    ``default_rng([seed, t])``.  Families whose search does not converge are
    counted and skipped.
    """
    _check_sweep_args(dim, trials, seed)
    if dump_dir is not None:
        os.makedirs(dump_dir, exist_ok=True)
    generator = family_factory("projection_search")()

    max_comm = 0.0
    non_converged = 0
    findings: List[Finding] = []
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        try:
            u = generator.generate(dim, rng)
        except NoFamilyFoundError as exc:
            logger.info("trial %d: %s", trial, exc)
            non_converged += 1
            continue
        eigenvalues = random_probabilities(dim, rng)
        probs = random_probabilities(dim, rng)
        phases = rng.uniform(0.0, 2 * np.pi, dim)
        model = evolve(
            pure_state_from_probabilities(probs, phases),
            density_from_eigensystem(eigenvalues, u.pointer_basis),
            u,
        )
        comm = max_pairwise_commutator(model.ensemble())
        max_comm = max(max_comm, comm)
        if comm <= FINDING_TOL:
            continue

        defect = von_neumann_defect(u.blocks, u.pointer_basis)
        if defect > VON_NEUMANN_TOL:
            raise NumericalError(
                f"trial {trial}: family lost the Von Neumann condition "
                f"(defect {defect:.3g})"
            )
        path = None
        if dump_dir is not None:
            path = os.path.join(dump_dir, f"finding-d{dim}-s{seed}-t{trial}.json")
            doc = _finding_scenario(
                u, eigenvalues, probs, phases, seed, trial, comm, defect
            )
            with open(path, "w", encoding="utf-8") as fp:
                json.dump(doc, fp, indent=2)
        logger.info("trial %d: commutator %.3g", trial, comm)
        findings.append(Finding(trial, comm, defect, path))

    if findings and dim <= 3:
        logger.warning(
            "%d families at d=%d have non-commuting conditional states",
            len(findings),
            dim,
        )
    logger.info(
        "search-counterexample d=%d: %d trials, %d findings, %d not converged",
        dim,
        trials,
        len(findings),
        non_converged,
    )
    return CounterexampleSummary(
        dim, trials, seed, max_comm, non_converged, tuple(findings)
    )


def _print_json(doc: Dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def make_parser() -> argparse.ArgumentParser:
    """Return the argument parser."""
    parser = argparse.ArgumentParser(
        prog="holevo",
        description="Simulate measurement interactions and certify the Holevo bound.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a scenario file")
    p.add_argument("--scenario", required=True, help="the scenario JSON file")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
    p.add_argument("--tol", type=float, help="override the scenario tolerance")

    p = sub.add_parser("verify-bound", help="check the Holevo bound on random data")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser(
        "search-counterexample",
        help="look for Von Neumann families with non-commuting states",
    )
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dump-dir", help="write findings as scenario files here")

    return parser


def dispatch(args: argparse.Namespace) -> None:
    """Run the selected command."""
    if args.command == "simulate":
        cmd_simulate(args.scenario, args.out, args.csv, args.tol)
    elif args.command == "verify-bound":
        summary = cmd_verify_bound(args.dim, args.trials, args.seed)
        _print_json(summary._asdict())
        if summary.failures:
            seeds = ", ".join(f"[{summary.seed}, {t}]" for t in summary.failures)
            raise PropertyViolation(
                f"{len(summary.failures)} trials exceed the Holevo bound; "
                f"seeds {seeds}"
            )
    else:
        summary = cmd_search_counterexample(
            args.dim, args.trials, args.seed, args.dump_dir
        )
        doc = summary._asdict()
        doc["findings"] = [f._asdict() for f in summary.findings]
        _print_json(doc)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return the exit code."""
    try:
        configure_logging(os.environ.get("HOLEVO_LOG", "off"))
        args = make_parser().parse_args(argv)
    except InvalidInputError as exc:
        sys.stderr.write(f"holevo: {exc}\n")
        return EXIT_INPUT
    except SystemExit as exc:
        return EXIT_OK if not exc.code else EXIT_INPUT

    try:
        dispatch(args)
    except InvalidInputError as exc:
        sys.stderr.write(f"holevo: input error: {exc}\n")
        return EXIT_INPUT
    except NumericalError as exc:
        sys.stderr.write(f"holevo: numerical error: {exc}\n")
        return EXIT_NUMERICAL
    except PropertyViolation as exc:
        sys.stderr.write(f"holevo: property violated: {exc}\n")
        return EXIT_PROPERTY
    except HolevoError as exc:  # pragma: no cover
        sys.stderr.write(f"holevo: {exc}\n")
        return EXIT_NUMERICAL
    except OSError as exc:
        sys.stderr.write(f"holevo: {exc}\n")
        return EXIT_INPUT
    return EXIT_OK
