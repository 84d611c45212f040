"""Periodic linear systems x' = A(t) x and their on-disk description format.

A system is a dimension m, a period q > 0, and a coefficient rule giving the
m x m complex matrix A(t). A(t) is q-periodic by construction: every
evaluation reduces t modulo q first. Three coefficient kinds are supported:

* constant: A(t) = C
* fourier: A(t) = sum_h [ C_h cos(2*pi*h*t/q) + S_h sin(2*pi*h*t/q) ]
* piecewise: constant matrices on [b_k, b_{k+1}) panels covering [0, q]

The file format is TOML. Matrices are nested row arrays whose entries are
complex literals written with an `i` suffix ("1", "-2.5i", "3+4i"); plain
TOML numbers are accepted for real entries. Unknown keys are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from .errors import ParseError, ValidationError
from .linalg import as_matrix

SIDE_FORWARD = "forward"
SIDE_ADJOINT = "adjoint"


def reduce_time(t: float, period: float) -> float:
    """Reduce t into [0, period). Exact for t already in range (fmod)."""
    r = math.fmod(float(t), period)
    if r < 0.0:
        r += period
    if r >= period:  # fmod can return period after the negative adjustment
        r -= period
    return r


def parse_complex(text) -> complex:
    """Parse a complex literal in 'a+bi' form (also bare reals, '-i', '2i')."""
    if isinstance(text, (int, float)):
        z = complex(text)
    elif isinstance(text, str):
        s = text.strip().replace(" ", "")
        if not s:
            raise ParseError("empty complex literal")
        s = s.replace("i", "j").replace("I", "j")
        try:
            z = complex(s)
        except ValueError as exc:
            raise ParseError(f"bad complex literal {text!r}") from exc
    else:
        raise ParseError(f"bad complex literal {text!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ParseError(f"non-finite complex literal {text!r}")
    return z


def format_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0.0:
        return repr(z.real)
    if z.real == 0.0:
        return f"{z.imag!r}i"
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _parse_matrix(rows, dimension: int, where: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != dimension:
        raise ParseError(f"{where}: expected {dimension} rows")
    out = np.zeros((dimension, dimension), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dimension:
            raise ParseError(f"{where}: row {i} must have {dimension} entries")
        for j, entry in enumerate(row):
            out[i, j] = parse_complex(entry)
    return out


def _format_matrix(m: np.ndarray) -> list[list[str]]:
    return [[format_complex(z) for z in row] for row in np.asarray(m)]


@dataclass(frozen=True, eq=False)
class ConstantCoefficient:
    matrix: np.ndarray

    kind = "constant"

    def evaluate(self, t: float, period: float) -> np.ndarray:
        return self.matrix


@dataclass(frozen=True, eq=False)
class FourierTerm:
    harmonic: int
    cosine: np.ndarray
    sine: np.ndarray


@dataclass(frozen=True, eq=False)
class FourierCoefficient:
    terms: tuple[FourierTerm, ...]

    kind = "fourier"

    def evaluate(self, t: float, period: float) -> np.ndarray:
        base = 2.0 * math.pi * t / period
        m = self.terms[0].cosine.shape[0]
        out = np.zeros((m, m), dtype=np.complex128)
        for term in self.terms:
            angle = term.harmonic * base
            out += math.cos(angle) * term.cosine + math.sin(angle) * term.sine
        return out


@dataclass(frozen=True, eq=False)
class PiecewiseConstantCoefficient:
    breakpoints: tuple[float, ...]  # ascending, first 0, last = period
    matrices: tuple[np.ndarray, ...]  # one per panel, right-continuous

    kind = "piecewise"

    def evaluate(self, t: float, period: float) -> np.ndarray:
        # panels are [b_k, b_{k+1}); t arrives already reduced to [0, period)
        idx = int(np.searchsorted(self.breakpoints, t, side="right")) - 1
        idx = min(max(idx, 0), len(self.matrices) - 1)
        return self.matrices[idx]


Coefficient = ConstantCoefficient | FourierCoefficient | PiecewiseConstantCoefficient


@dataclass(frozen=True, eq=False)
class PeriodicSystem:
    dimension: int
    period: float
    coefficient: Coefficient
    label: str = ""

    def __post_init__(self):
        if self.dimension < 1:
            raise ValidationError(f"dimension must be >= 1, got {self.dimension}")
        if not (self.period > 0.0 and math.isfinite(self.period)):
            raise ValidationError(f"period must be finite and > 0, got {self.period}")
        _validate_coefficient(self.coefficient, self.dimension, self.period)

    def matrix_at(self, t: float) -> np.ndarray:
        return self.coefficient.evaluate(reduce_time(t, self.period), self.period)


@dataclass(frozen=True, eq=False)
class ForcingSpec:
    """Scalar forcing e^{i mu t} applied through a fixed vector b."""

    mu: float
    b: np.ndarray
    side: str = SIDE_FORWARD

    def __post_init__(self):
        if self.side not in (SIDE_FORWARD, SIDE_ADJOINT):
            raise ValidationError(f"side must be '{SIDE_FORWARD}' or '{SIDE_ADJOINT}'")
        b = np.asarray(self.b, dtype=np.complex128)
        if b.ndim != 1:
            raise ValidationError("forcing vector b must be one-dimensional")
        if not np.all(np.isfinite(b.real)) or not np.all(np.isfinite(b.imag)):
            raise ValidationError("forcing vector b must be finite")
        if not math.isfinite(self.mu):
            raise ValidationError("mu must be finite")
        object.__setattr__(self, "b", b)


def _validate_coefficient(coeff, dimension: int, period: float) -> None:
    if isinstance(coeff, ConstantCoefficient):
        as_matrix(coeff.matrix, dimension)
    elif isinstance(coeff, FourierCoefficient):
        if not coeff.terms:
            raise ValidationError("fourier coefficient needs at least one term")
        for term in coeff.terms:
            if term.harmonic < 0:
                raise ValidationError("fourier harmonics must be >= 0")
            as_matrix(term.cosine, dimension)
            as_matrix(term.sine, dimension)
    elif isinstance(coeff, PiecewiseConstantCoefficient):
        bp = coeff.breakpoints
        if len(bp) != len(coeff.matrices) + 1:
            raise ValidationError("need exactly one more breakpoint than panel matrices")
        if bp[0] != 0.0 or not math.isclose(bp[-1], period, rel_tol=0, abs_tol=1e-12 * period):
            raise ValidationError("breakpoints must start at 0 and end at the period")
        if any(b1 <= b0 for b0, b1 in zip(bp, bp[1:])):
            raise ValidationError("breakpoints must be strictly increasing")
        for m in coeff.matrices:
            as_matrix(m, dimension)
    else:
        raise ValidationError(f"unknown coefficient object {type(coeff).__name__}")


def eval_coefficient(system: PeriodicSystem, t: float) -> np.ndarray:
    """A(t) with t reduced modulo the period first."""
    return system.matrix_at(t)


_TOP_KEYS = {"label", "dimension", "period", "coefficient", "forcing"}
_COEFF_KEYS = {
    "constant": {"kind", "matrix"},
    "fourier": {"kind", "terms"},
    "piecewise": {"kind", "breakpoints", "matrices"},
}
_TERM_KEYS = {"harmonic", "cosine", "sine"}
_FORCING_KEYS = {"mu", "b", "side"}


def _reject_unknown(mapping: dict, allowed: set, where: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise ParseError(f"{where}: unknown keys {sorted(unknown)}")


def parse_system(text: str) -> tuple[PeriodicSystem, ForcingSpec | None]:
    """Parse a TOML system description. Returns (system, forcing-or-None)."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"not valid TOML: {exc}") from exc
    _reject_unknown(doc, _TOP_KEYS, "top level")
    for key in ("dimension", "period", "coefficient"):
        if key not in doc:
            raise ParseError(f"missing required key '{key}'")
    dimension = doc["dimension"]
    if not isinstance(dimension, int) or isinstance(dimension, bool):
        raise ParseError("dimension must be an integer")
    period = doc["period"]
    if isinstance(period, int):
        period = float(period)
    if not isinstance(period, float):
        raise ParseError("period must be a number")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise ParseError("label must be a string")

    coeff_tbl = doc["coefficient"]
    if not isinstance(coeff_tbl, dict):
        raise ParseError("[coefficient] must be a table")
    kind = coeff_tbl.get("kind")
    if kind not in _COEFF_KEYS:
        raise ParseError(f"coefficient.kind must be one of {sorted(_COEFF_KEYS)}, got {kind!r}")
    _reject_unknown(coeff_tbl, _COEFF_KEYS[kind], "[coefficient]")

    if kind == "constant":
        if "matrix" not in coeff_tbl:
            raise ParseError("[coefficient]: constant kind requires 'matrix'")
        coeff = ConstantCoefficient(_parse_matrix(coeff_tbl["matrix"], dimension, "coefficient.matrix"))
    elif kind == "fourier":
        terms_raw = coeff_tbl.get("terms")
        if not isinstance(terms_raw, list) or not terms_raw:
            raise ParseError("[coefficient]: fourier kind requires a non-empty 'terms' array")
        terms = []
        for k, tbl in enumerate(terms_raw):
            if not isinstance(tbl, dict):
                raise ParseError(f"coefficient.terms[{k}] must be a table")
            _reject_unknown(tbl, _TERM_KEYS, f"coefficient.terms[{k}]")
            if "harmonic" not in tbl or "cosine" not in tbl:
                raise ParseError(f"coefficient.terms[{k}] needs 'harmonic' and 'cosine'")
            harmonic = tbl["harmonic"]
            if not isinstance(harmonic, int) or isinstance(harmonic, bool) or harmonic < 0:
                raise ParseError(f"coefficient.terms[{k}].harmonic must be an integer >= 0")
            cos = _parse_matrix(tbl["cosine"], dimension, f"coefficient.terms[{k}].cosine")
            if "sine" in tbl:
                sin = _parse_matrix(tbl["sine"], dimension, f"coefficient.terms[{k}].sine")
            else:
                sin = np.zeros((dimension, dimension), dtype=np.complex128)
            terms.append(FourierTerm(harmonic, cos, sin))
        coeff = FourierCoefficient(tuple(terms))
    else:
        bps = coeff_tbl.get("breakpoints")
        mats = coeff_tbl.get("matrices")
        if not isinstance(bps, list) or not isinstance(mats, list):
            raise ParseError("[coefficient]: piecewise kind requires 'breakpoints' and 'matrices'")
        try:
            bp_vals = tuple(float(b) for b in bps)
        except (TypeError, ValueError) as exc:
            raise ParseError("breakpoints must be numbers") from exc
        panels = tuple(_parse_matrix(mm, dimension, f"coefficient.matrices[{k}]")
                       for k, mm in enumerate(mats))
        coeff = PiecewiseConstantCoefficient(bp_vals, panels)

    try:
        system = PeriodicSystem(dimension, period, coeff, label)
    except ValidationError:
        raise

    forcing = None
    if "forcing" in doc:
        tbl = doc["forcing"]
        if not isinstance(tbl, dict):
            raise ParseError("[forcing] must be a table")
        _reject_unknown(tbl, _FORCING_KEYS, "[forcing]")
        if "mu" not in tbl or "b" not in tbl:
            raise ParseError("[forcing] needs 'mu' and 'b'")
        mu = tbl["mu"]
        if isinstance(mu, int):
            mu = float(mu)
        if not isinstance(mu, float):
            raise ParseError("forcing.mu must be a number")
        b_raw = tbl["b"]
        if not isinstance(b_raw, list) or len(b_raw) != dimension:
            raise ParseError(f"forcing.b must be a {dimension}-vector")
        b = np.array([parse_complex(e) for e in b_raw])
        side = tbl.get("side", SIDE_FORWARD)
        if side not in (SIDE_FORWARD, SIDE_ADJOINT):
            raise ParseError(f"forcing.side must be '{SIDE_FORWARD}' or '{SIDE_ADJOINT}'")
        forcing = ForcingSpec(mu, b, side)
    return system, forcing


def _toml_string(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _toml_matrix(m: np.ndarray, indent: str = "") -> str:
    rows = _format_matrix(m)
    inner = ",\n".join(
        indent + "    [" + ", ".join(_toml_string(e) for e in row) + "]" for row in rows)
    return "[\n" + inner + ",\n" + indent + "]"


def serialize_system(system: PeriodicSystem, forcing: ForcingSpec | None = None) -> str:
    """Emit the TOML description; parse_system() inverts this exactly."""
    lines = []
    if system.label:
        lines.append(f"label = {_toml_string(system.label)}")
    lines.append(f"dimension = {system.dimension}")
    lines.append(f"period = {system.period!r}")
    lines.append("")
    lines.append("[coefficient]")
    lines.append(f'kind = "{system.coefficient.kind}"')
    coeff = system.coefficient
    if isinstance(coeff, ConstantCoefficient):
        lines.append(f"matrix = {_toml_matrix(coeff.matrix)}")
    elif isinstance(coeff, FourierCoefficient):
        for term in coeff.terms:
            lines.append("")
            lines.append("[[coefficient.terms]]")
            lines.append(f"harmonic = {term.harmonic}")
            lines.append(f"cosine = {_toml_matrix(term.cosine)}")
            if np.any(term.sine != 0):
                lines.append(f"sine = {_toml_matrix(term.sine)}")
    else:
        bps = ", ".join(repr(b) for b in coeff.breakpoints)
        lines.append(f"breakpoints = [{bps}]")
        inner = ",\n".join("    " + _toml_matrix(m, "    ") for m in coeff.matrices)
        lines.append("matrices = [\n" + inner + ",\n]")
    if forcing is not None:
        lines.append("")
        lines.append("[forcing]")
        lines.append(f"mu = {float(forcing.mu)!r}")
        lines.append("b = [" + ", ".join(_toml_string(format_complex(z)) for z in forcing.b) + "]")
        lines.append(f'side = "{forcing.side}"')
    return "\n".join(lines) + "\n"


def _constant_system(label, period, rows) -> PeriodicSystem:
    m = np.array(rows, dtype=np.complex128)
    return PeriodicSystem(m.shape[0], period, ConstantCoefficient(m), label)


def builtin_examples() -> list[tuple[str, PeriodicSystem, str]]:
    """Built-in named systems with their expected classification."""
    two_pi = 2.0 * math.pi
    return [
        ("rotation", _constant_system("rotation", two_pi, [[0, 1], [-1, 0]]),
         "non-dichotomic"),
        ("hyperbolic-diag", _constant_system("hyperbolic-diag", 1.0, [[-1, 0], [0, 1]]),
         "dichotomic"),
        ("scalar-zero", _constant_system("scalar-zero", 1.0, [[0]]),
         "non-dichotomic"),
        ("damped", _constant_system("damped", 1.0, [[-1, 0], [0, -2]]),
         "stable"),
        ("expansive", _constant_system("expansive", 1.0, [[1, 0], [0, 2]]),
         "expansive"),
    ]


def builtin_system(name: str) -> PeriodicSystem:
    for label, system, _ in builtin_examples():
        if label == name:
            return system
    raise ValidationError(f"unknown builtin system {name!r}")
