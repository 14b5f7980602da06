r"""Scenario files and reports.

A scenario is a JSON document.  Complex numbers are ``[re, im]`` pairs (plain
numbers are accepted as real), matrices are row-major nested arrays::

    {
      "system": {"probs": [0.3, 0.7], "phases": [0.0, 0.0]},
      "apparatus": {"eigenvalues": [1.0, 0.0], "basis": null},
      "interaction": {"kind": "shift"},
      "povm": null,
      "options": {"tolerance": 1e-9, "seed": 0, "restarts": 8}
    }

Interaction kinds:

- ``{"kind": "shift"}``: the shift gate in the apparatus basis,
- ``{"kind": "phase_shift", "phases": [[...], ...]}``: a phase-shift family in
  the apparatus basis,
- ``{"kind": "blocks", "blocks": [matrix, ...]}``: explicit blocks `V_i`,
- ``{"kind": "matrix", "matrix": matrix}``: a full joint unitary, which must be
  system-controlled.
"""

import csv
import io
import json
import re
from typing import Any, Dict, List, NamedTuple, Optional

import numpy as np
import numpy.typing as npt

from .interactions import InteractionUnitary, phase_shift_family, shift_gate
from .linalg import ComplexMatrix
from .states import (
    POVM,
    DensityMatrix,
    PureState,
    density_from_eigensystem,
    pure_state_from_probabilities,
)
from .util import BOUND_TOL, InvalidInputError

INTERACTION_KINDS = ("shift", "phase_shift", "blocks", "matrix")


class ScenarioError(InvalidInputError):
    """A scenario file cannot be parsed or fails validation."""

    def __init__(self, msg: str, section: str = "", line: Optional[int] = None):
        where = f"line {line}: " if line is not None else ""
        what = f"{section}: " if section else ""
        super().__init__(f"{where}{what}{msg}")
        self.msg = msg
        self.section = section
        self.line = line


class ScenarioOptions(NamedTuple):
    """Numerical options of a scenario run."""

    tolerance: float = BOUND_TOL
    seed: int = 0
    restarts: int = 8


def parse_complex(value: Any) -> complex:
    """Parse ``[re, im]`` or a plain number.

    >>> parse_complex([0.5, -1])
    (0.5-1j)
    >>> parse_complex(2)
    (2+0j)
    """
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value, 0.0)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        return complex(value[0], value[1])
    raise InvalidInputError(f"expected a number or [re, im], got {value!r}")


def parse_matrix(rows: Any) -> ComplexMatrix:
    """Parse a row-major nested array of complex numbers."""
    if not isinstance(rows, list) or not rows or not all(
        isinstance(r, list) for r in rows
    ):
        raise InvalidInputError("expected a matrix as a list of rows")
    width = len(rows[0])
    if width == 0 or any(len(r) != width for r in rows):
        raise InvalidInputError("matrix rows differ in length")
    return np.array([[parse_complex(x) for x in r] for r in rows], dtype=np.complex128)


def format_matrix(m: npt.ArrayLike) -> List[List[List[float]]]:
    """Format a matrix as nested ``[re, im]`` pairs."""
    a = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def _real_list(value: Any, name: str) -> List[float]:
    if not isinstance(value, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
    ):
        raise InvalidInputError(f"{name} must be a list of numbers")
    return [float(x) for x in value]


def parse_tolerance(value: Any) -> float:
    """Return `value` as a tolerance: a finite nonnegative number.

    >>> parse_tolerance(1e-9)
    1e-09
    >>> parse_tolerance("abc")
    Traceback (most recent call last):
    ...
    holevo_measurement.util.InvalidInputError: tolerance must be a number, got 'abc'
    """
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise InvalidInputError(f"tolerance must be a number, got {value!r}")
    tol = float(value)
    if not np.isfinite(tol) or tol < 0:
        raise InvalidInputError(f"tolerance must be finite and nonnegative, got {tol}")
    return tol


class Scenario:
    """A validated scenario: system, apparatus, interaction and optional POVM."""

    __slots__ = (
        "system",
        "apparatus",
        "apparatus_basis",
        "interaction",
        "povm",
        "options",
        "_raw",
    )

    def __init__(self, raw: Dict[str, Any]):
        """Validate a decoded scenario document.

        :raises ScenarioError: naming the offending section
        """
        if not isinstance(raw, dict):
            raise ScenarioError("scenario must be a JSON object")
        for key in ("system", "apparatus", "interaction"):
            if key not in raw:
                raise ScenarioError("missing section", key)
        self._raw = raw
        self.system: PureState = self._section("system", self._parse_system)
        self.apparatus_basis: Optional[ComplexMatrix] = None
        self.apparatus: DensityMatrix = self._section(
            "apparatus", self._parse_apparatus
        )
        self.interaction: InteractionUnitary = self._section(
            "interaction", self._parse_interaction
        )
        self.povm: Optional[POVM] = self._section("povm", self._parse_povm)
        self.options: ScenarioOptions = self._section("options", self._parse_options)

    def _section(self, name: str, parse):
        try:
            return parse(self._raw.get(name))
        except ScenarioError:
            raise
        except InvalidInputError as exc:
            raise ScenarioError(str(exc), name) from exc

    @staticmethod
    def _parse_system(raw: Any) -> PureState:
        if not isinstance(raw, dict) or "probs" not in raw:
            raise InvalidInputError("expected {probs, phases}")
        probs = _real_list(raw["probs"], "probs")
        phases = _real_list(raw.get("phases", [0.0] * len(probs)), "phases")
        return pure_state_from_probabilities(probs, phases)

    def _parse_apparatus(self, raw: Any) -> DensityMatrix:
        if not isinstance(raw, dict) or "eigenvalues" not in raw:
            raise InvalidInputError("expected {eigenvalues, basis}")
        eigenvalues = _real_list(raw["eigenvalues"], "eigenvalues")
        if raw.get("basis") is not None:
            self.apparatus_basis = parse_matrix(raw["basis"])
            basis = self.apparatus_basis
        else:
            basis = np.eye(len(eigenvalues))
        return density_from_eigensystem(eigenvalues, basis)

    def _parse_interaction(self, raw: Any) -> InteractionUnitary:
        if not isinstance(raw, dict) or raw.get("kind") not in INTERACTION_KINDS:
            kinds = ", ".join(INTERACTION_KINDS)
            raise InvalidInputError(f"kind must be one of {kinds}")
        kind = raw["kind"]
        d_sys = self.system.dim
        d_app = self.apparatus.dim
        if kind in ("shift", "phase_shift") and d_sys != d_app:
            raise InvalidInputError(
                f"{kind} needs equal dimensions, got system {d_sys}, apparatus {d_app}"
            )
        if kind == "shift":
            return shift_gate(d_app, self.apparatus_basis)
        if kind == "phase_shift":
            rows = raw.get("phases")
            if not isinstance(rows, list):
                raise InvalidInputError("phases must be a list of rows")
            phases = [_real_list(row, "phases") for row in rows]
            return phase_shift_family(d_app, phases, self.apparatus_basis)
        if kind == "blocks":
            blocks = raw.get("blocks")
            if not isinstance(blocks, list):
                raise InvalidInputError("blocks must be a list of matrices")
            u = InteractionUnitary([parse_matrix(b) for b in blocks])
        else:
            u = InteractionUnitary.from_matrix(
                parse_matrix(raw.get("matrix")), d_sys, d_app
            )
        if u.d_sys != d_sys or u.d_app != d_app:
            raise InvalidInputError(
                f"dimension mismatch: {u.d_sys} blocks of size {u.d_app} for "
                f"system {d_sys}, apparatus {d_app}"
            )
        return u

    def _parse_povm(self, raw: Any) -> Optional[POVM]:
        if raw is None:
            return None
        if not isinstance(raw, list):
            raise InvalidInputError("povm must be a list of matrices")
        povm = POVM(parse_matrix(e) for e in raw)
        if povm.dim != self.apparatus.dim:
            raise InvalidInputError(
                f"dimension mismatch: POVM {povm.dim}, apparatus {self.apparatus.dim}"
            )
        return povm

    @staticmethod
    def _parse_options(raw: Any) -> ScenarioOptions:
        if raw is None:
            return ScenarioOptions()
        if not isinstance(raw, dict):
            raise InvalidInputError("options must be an object")
        defaults = ScenarioOptions()
        tolerance = parse_tolerance(raw.get("tolerance", defaults.tolerance))
        seed = raw.get("seed", defaults.seed)
        restarts = raw.get("restarts", defaults.restarts)
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            raise InvalidInputError("seed must be a nonnegative integer")
        if not isinstance(restarts, int) or isinstance(restarts, bool) or restarts < 1:
            raise InvalidInputError("restarts must be a positive integer")
        return ScenarioOptions(tolerance, seed, restarts)

    def to_dict(self) -> Dict[str, Any]:
        """Serialize into the scenario JSON structure."""
        probs = _real_list(self._raw["system"]["probs"], "probs")
        phases = _real_list(
            self._raw["system"].get("phases", [0.0] * len(probs)), "phases"
        )
        interaction: Dict[str, Any] = {"kind": self._raw["interaction"]["kind"]}
        if interaction["kind"] == "phase_shift":
            interaction["phases"] = [
                [float(x) for x in row] for row in self._raw["interaction"]["phases"]
            ]
        elif interaction["kind"] == "blocks":
            interaction["blocks"] = [format_matrix(b) for b in self.interaction.blocks]
        elif interaction["kind"] == "matrix":
            interaction["matrix"] = format_matrix(self.interaction.matrix())
        return {
            "system": {"probs": probs, "phases": phases},
            "apparatus": {
                "eigenvalues": _real_list(
                    self._raw["apparatus"]["eigenvalues"], "eigenvalues"
                ),
                "basis": None
                if self.apparatus_basis is None
                else format_matrix(self.apparatus_basis),
            },
            "interaction": interaction,
            "povm": None
            if self.povm is None
            else [format_matrix(e) for e in self.povm],
            "options": self.options._asdict(),
        }

    def dumps(self) -> str:
        """Serialize into a JSON string."""
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "Scenario":
        """Parse a scenario from JSON text.

        Errors carry the line of the offending section.
        """
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(exc.msg, line=exc.lineno) from exc
        try:
            return cls(raw)
        except ScenarioError as exc:
            if exc.line is None and exc.section:
                raise ScenarioError(
                    exc.msg, exc.section, _line_of(text, exc.section)
                ) from exc
            raise

    @classmethod
    def load(cls, path: str) -> "Scenario":
        """Read a scenario file."""
        with open(path, "r", encoding="utf-8") as fp:
            return cls.loads(fp.read())


def _line_of(text: str, key: str) -> Optional[int]:
    match = re.search(rf'"{re.escape(key)}"\s*:', text)
    if match is None:
        return None
    return text.count("\n", 0, match.start()) + 1


class Report(NamedTuple):
    """The outcome of a simulated measurement."""

    chi_bits: float
    source_entropy_bits: float
    """`H(x)` of the system outcome distribution."""
    accessible_info_bits: Optional[float]
    """The best information found by the search, if it ran."""
    povm_info_bits: Optional[float]
    """The information extracted by the scenario's POVM, if given."""
    information_loss_bits: float
    max_commutator: float
    von_neumann_defect: float
    bound_satisfied: bool
    saturated: bool
    provenance: Dict[str, Any]

    def to_dict(self) -> Dict[str, Any]:
        """Return the report as a JSON-ready dict."""
        return self._asdict()

    def dumps(self) -> str:
        """Return the canonical JSON form."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def flatten(self) -> Dict[str, Any]:
        """Return a flat dict with ``provenance.*`` columns."""
        flat = {k: v for k, v in self.to_dict().items() if k != "provenance"}
        for key, value in self.provenance.items():
            if isinstance(value, dict):
                for sub, subvalue in value.items():
                    flat[f"provenance.{key}.{sub}"] = subvalue
            else:
                flat[f"provenance.{key}"] = value
        return flat

    def to_csv(self) -> str:
        """Return a header row and one data row."""
        flat = self.flatten()
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=list(flat), lineterminator="\n")
        writer.writeheader()
        writer.writerow(flat)
        return out.getvalue()
