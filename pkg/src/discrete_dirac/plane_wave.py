"""Discrete plane waves ``Omega = A psi`` and their amplitude constraints.

``psi`` is the 0-form with coefficients ``prod_mu (1 + i p_mu)**k_mu``; it is an
eigenfunction of every forward difference, ``delta_mu psi = i p_mu psi``.  The
constant even amplitude ``A`` splits as ``A = A_plus + A_minus`` into the parts
that commute (``x, e12, e13, e23``) and anticommute (``e01, e02, e03, e``) with
``e0``; fixing one part determines the other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .clifford import constant_mul, unit_form
from .equations import DEFAULT_TOLERANCE, joyce_residual
from .forms import EVEN, Blade, ConstantForm, DiscreteForm, DomainError, _as_window


class SingularBranchError(DomainError):
    """The requested completion divides by ``m -+ p0 = 0``."""


PLUS_BLADES = ("x", "e12", "e13", "e23")
MINUS_BLADES = ("e01", "e02", "e03", "e0123")
AMPLITUDE_ORDER = ("alpha0", "alpha12", "alpha13", "alpha23", "alpha01", "alpha02", "alpha03", "alpha4")
_FIELD_BLADE = dict(zip(AMPLITUDE_ORDER, PLUS_BLADES + MINUS_BLADES))
SEEDS = {"x": "alpha0", "e12": "alpha12", "e13": "alpha13", "e23": "alpha23",
         "e01": "alpha01", "e02": "alpha02", "e03": "alpha03", "e": "alpha4"}
PLUS_SEEDS = ("x", "e12", "e13", "e23")
MINUS_SEEDS = ("e01", "e02", "e03", "e")

ON_SHELL_TOLERANCE = 1e-12
BRANCH_TOLERANCE = 1e-9


def dispersion_p0(m: float, p1: float, p2: float, p3: float, sign: int = 1) -> float:
    """Energy on the mass shell: ``sign * sqrt(m^2 + p1^2 + p2^2 + p3^2)``."""
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    return sign * math.sqrt(m * m + p1 * p1 + p2 * p2 + p3 * p3)


@dataclass(frozen=True)
class Momentum:
    m: float
    p: tuple[float, float, float]
    p0: float

    @classmethod
    def on_shell(cls, m: float, p, sign: int = 1) -> "Momentum":
        p = tuple(float(v) for v in p)
        return cls(float(m), p, dispersion_p0(m, *p, sign))

    @property
    def components(self) -> tuple[float, float, float, float]:
        """``(p0, p1, p2, p3)``."""
        return (self.p0,) + tuple(self.p)

    @property
    def shell_defect(self) -> float:
        return self.p0 ** 2 - sum(v * v for v in self.p) - self.m ** 2

    @property
    def is_on_shell(self) -> bool:
        return abs(self.shell_defect) <= ON_SHELL_TOLERANCE * max(1.0, self.p0 ** 2)

    def to_json(self) -> dict:
        return {"m": self.m, "p": list(self.p), "p0": self.p0, "on_shell": self.is_on_shell}

    @classmethod
    def from_json(cls, data: dict) -> "Momentum":
        return cls(float(data["m"]), tuple(float(v) for v in data["p"]), float(data["p0"]))


@dataclass(frozen=True)
class Amplitude:
    """Coefficients of the constant even form ``A``."""

    alpha0: complex = 0j
    alpha12: complex = 0j
    alpha13: complex = 0j
    alpha23: complex = 0j
    alpha01: complex = 0j
    alpha02: complex = 0j
    alpha03: complex = 0j
    alpha4: complex = 0j

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, complex(getattr(self, f.name)))

    @classmethod
    def seed(cls, name: str) -> "Amplitude":
        """Unit amplitude on one blade: ``x``, ``e12``, ..., ``e01``, ..., ``e``."""
        if name not in SEEDS:
            raise DomainError(f"unknown seed {name!r}; choose from {sorted(SEEDS)}")
        return cls(**{SEEDS[name]: 1})

    @classmethod
    def from_vector(cls, vec) -> "Amplitude":
        return cls(*[complex(v) for v in vec])

    @classmethod
    def from_form(cls, form: ConstantForm) -> "Amplitude":
        arr = form.as_array()
        if np.any(arr[~EVEN]):
            raise DomainError("amplitude must be an even constant form")
        return cls(**{f: arr[Blade.from_name(b).index] for f, b in _FIELD_BLADE.items()})

    def vector(self) -> np.ndarray:
        return np.array([getattr(self, f) for f in AMPLITUDE_ORDER], dtype=complex)

    def to_form(self) -> ConstantForm:
        return ConstantForm.from_dict({b: getattr(self, f) for f, b in _FIELD_BLADE.items()})

    @property
    def plus(self) -> "Amplitude":
        return Amplitude(self.alpha0, self.alpha12, self.alpha13, self.alpha23)

    @property
    def minus(self) -> "Amplitude":
        return Amplitude(alpha01=self.alpha01, alpha02=self.alpha02, alpha03=self.alpha03, alpha4=self.alpha4)

    def __add__(self, other: "Amplitude") -> "Amplitude":
        return Amplitude.from_vector(self.vector() + other.vector())

    def to_json(self) -> dict:
        return {f: [getattr(self, f).real, getattr(self, f).imag] for f in AMPLITUDE_ORDER}

    @classmethod
    def from_json(cls, data: dict) -> "Amplitude":
        unknown = set(data) - set(AMPLITUDE_ORDER)
        if unknown:
            raise DomainError(f"unknown amplitude fields: {sorted(unknown)}")
        return cls(**{k: complex(*v) for k, v in data.items()})


def _spatial_generator(mom: Momentum) -> ConstantForm:
    """``p1 e0 e1 + p2 e0 e2 + p3 e0 e3`` as a constant form."""
    e0 = unit_form("e0")
    total = ConstantForm.zero()
    for i, p in enumerate(mom.p, start=1):
        total = total + p * constant_mul(e0, unit_form(f"e{i}"))
    return total


def _branch_scale(mom: Momentum) -> float:
    return BRANCH_TOLERANCE * max(mom.m, abs(mom.p0), 1.0)


def derive_A_minus(a_plus: Amplitude, mom: Momentum) -> Amplitude:
    """Complete ``A`` from its ``A_plus`` part: ``A_minus = N A_plus / (m - p0)``.

    ``N = p1 e0e1 + p2 e0e2 + p3 e0e3``.  Any ``A_minus`` part of the input is
    replaced.
    """
    denom = mom.m - mom.p0
    if abs(denom) < _branch_scale(mom):
        raise SingularBranchError(
            f"m - p0 = {denom:.3g} vanishes; complete from A_minus with derive_A_plus instead"
        )
    plus = a_plus.plus
    minus = constant_mul(_spatial_generator(mom), plus.to_form()) * (1 / denom)
    return plus + Amplitude.from_form(minus).minus


def derive_A_plus(a_minus: Amplitude, mom: Momentum) -> Amplitude:
    """Complete ``A`` from its ``A_minus`` part: ``A_plus = -N A_minus / (m + p0)``."""
    denom = mom.m + mom.p0
    if abs(denom) < _branch_scale(mom):
        raise SingularBranchError(
            f"m + p0 = {denom:.3g} vanishes; complete from A_plus with derive_A_minus instead"
        )
    minus = a_minus.minus
    plus = constant_mul(_spatial_generator(mom), minus.to_form()) * (-1 / denom)
    return Amplitude.from_form(plus).plus + minus


def momentum_constraint_residual(a: Amplitude, mom: Momentum) -> float:
    """Max-abs coefficient of ``-(sum_mu p_mu e_mu) A - m A e0``."""
    slash = ConstantForm.zero()
    for mu, p in enumerate(mom.components):
        slash = slash + p * unit_form(f"e{mu}")
    A = a.to_form()
    res = -constant_mul(slash, A) - mom.m * constant_mul(A, unit_form("e0"))
    return res.max_abs()


# Each printed row: {amplitude field: {symbol: integer coefficient}} with
# symbols among m, p0, p1, p2, p3.  Transcribed as printed, misprints included.
PRINTED_CONDITION_38 = (
    {"alpha01": {"m": 1, "p0": -1}, "alpha0": {"p1": -1}, "alpha12": {"p2": -1}, "alpha13": {"p3": -1}},
    {"alpha02": {"m": 1, "p0": -1}, "alpha0": {"p2": -1}, "alpha12": {"p1": 1}, "alpha23": {"p3": -1}},
    {"alpha03": {"m": 1, "p0": -1}, "alpha0": {"p3": -1}, "alpha13": {"p1": 1}, "alpha23": {"p2": 1}},
    {"alpha4": {"m": 1, "p0": -1}, "alpha23": {"p1": -1}, "alpha13": {"p1": 1}, "alpha12": {"p3": -1}},
)
PRINTED_CONDITION_39 = (
    {"alpha0": {"m": 1, "p0": 1}, "alpha01": {"p1": 1}, "alpha02": {"p2": 1}, "alpha03": {"p3": 1}},
    {"alpha12": {"m": 1, "p0": 1}, "alpha02": {"p1": -1}, "alpha01": {"p2": 1}, "alpha4": {"p3": 1}},
    {"alpha13": {"m": 1, "p0": 1}, "alpha03": {"p1": -1}, "alpha4": {"p2": -1}, "alpha01": {"p3": 1}},
    {"alpha23": {"m": 1, "p0": 1}, "alpha4": {"p1": 1}, "alpha03": {"p2": -1}, "alpha02": {"p3": 1}},
)
_SYMBOLS = ("m", "p0", "p1", "p2", "p3")


def _condition_matrix(mom: Momentum, which: int) -> np.ndarray:
    """Rows of ``(m - p0) A_minus - N A_plus = 0`` (``which=38``) or ``(m + p0) A_plus + N A_minus = 0`` (``which=39``).

    Rows follow the blades ``e01, e02, e03, e`` for 38 and ``x, e12, e13, e23``
    for 39; columns follow :data:`AMPLITUDE_ORDER`.  Built column by column
    from blade products of unit amplitudes.
    """
    N = _spatial_generator(mom)
    out_fields = AMPLITUDE_ORDER[4:] if which == 38 else AMPLITUDE_ORDER[:4]
    rows = np.zeros((4, 8), dtype=complex)
    for col, f in enumerate(AMPLITUDE_ORDER):
        unit = Amplitude(**{f: 1})
        if which == 38:
            expr = (mom.m - mom.p0) * unit.minus.to_form() - constant_mul(N, unit.plus.to_form())
        else:
            expr = (mom.m + mom.p0) * unit.plus.to_form() + constant_mul(N, unit.minus.to_form())
        image = Amplitude.from_form(expr).vector()
        idx = [AMPLITUDE_ORDER.index(g) for g in out_fields]
        rows[:, col] = image[idx]
    return rows


def condition_matrix_38(mom: Momentum) -> np.ndarray:
    return _condition_matrix(mom, 38)


def condition_matrix_39(mom: Momentum) -> np.ndarray:
    return _condition_matrix(mom, 39)


def _symbolic_rows(which: int) -> list[dict[str, dict[str, int]]]:
    # every entry is linear in (m, p0, p1, p2, p3): read coefficients off unit momenta
    rows = [dict() for _ in range(4)]
    for sym in _SYMBOLS:
        vals = dict.fromkeys(_SYMBOLS, 0.0)
        vals[sym] = 1.0
        mom = Momentum(vals["m"], (vals["p1"], vals["p2"], vals["p3"]), vals["p0"])
        mat = _condition_matrix(mom, which)
        for r in range(4):
            for c, f in enumerate(AMPLITUDE_ORDER):
                v = mat[r, c]
                if v != 0:
                    assert v.imag == 0 and v.real == round(v.real)
                    rows[r].setdefault(f, {})[sym] = int(round(v.real))
    return rows


def _format_term(field_name: str, coeffs: dict[str, int]) -> str:
    parts = []
    for sym in _SYMBOLS:
        c = coeffs.get(sym, 0)
        if c:
            parts.append(("+" if c > 0 else "-") + ("" if abs(c) == 1 else str(abs(c))) + sym)
    lin = "".join(parts).lstrip("+")
    return f"({lin}){field_name}" if len(parts) > 1 else f"{lin}*{field_name}"


def _format_row(row: dict[str, dict[str, int]]) -> str:
    text = ""
    for f in AMPLITUDE_ORDER:
        if f not in row:
            continue
        term = _format_term(f, row[f])
        if not text:
            text = term
        elif term.startswith("-"):
            text += " - " + term[1:]
        else:
            text += " + " + term
    return text + " = 0"


@dataclass
class ConditionAudit:
    """Term-by-term comparison of the expanded system with its printed form."""

    condition: int
    expanded: list[dict[str, dict[str, int]]]
    printed: list[dict[str, dict[str, int]]]

    @property
    def row_matches(self) -> list[bool]:
        return [e == p for e, p in zip(self.expanded, self.printed)]

    @property
    def discrepancies(self) -> list[dict]:
        out = []
        for r, (e, p) in enumerate(zip(self.expanded, self.printed), start=1):
            for f in AMPLITUDE_ORDER:
                if e.get(f, {}) != p.get(f, {}):
                    out.append({
                        "row": r,
                        "field": f,
                        "printed": _format_term(f, p[f]) if f in p else "0",
                        "expanded": _format_term(f, e[f]) if f in e else "0",
                    })
        return out

    def to_json(self) -> dict:
        data = {
            "condition": self.condition,
            "rows": [_format_row(row) for row in self.expanded],
            "row_matches": self.row_matches,
        }
        if self.discrepancies:
            data["discrepancies"] = self.discrepancies
        return data


def expand_condition_38(mom: Momentum | None = None):
    """Expand the ``A_minus`` constraint into four linear equations.

    Returns ``(matrix, audit)``: the 4x8 coefficient matrix at ``mom`` (or
    ``None`` without a momentum) and the comparison of the symbolic expansion
    with the printed equations.
    """
    audit = ConditionAudit(38, _symbolic_rows(38), [dict(r) for r in PRINTED_CONDITION_38])
    return (condition_matrix_38(mom) if mom is not None else None), audit


def expand_condition_39(mom: Momentum | None = None):
    audit = ConditionAudit(39, _symbolic_rows(39), [dict(r) for r in PRINTED_CONDITION_39])
    return (condition_matrix_39(mom) if mom is not None else None), audit


def numerical_rank(mat: np.ndarray, rel: float = 1e-9) -> int:
    s = np.linalg.svd(np.atleast_2d(mat), compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rel * s[0]))


def kernel_dimension(mat: np.ndarray, rel: float = 1e-9) -> int:
    return mat.shape[1] - numerical_rank(mat, rel)


def hestenes_conditions_check(a: Amplitude, variant: str = "standard", tol: float = 1e-12) -> bool:
    """Whether ``A`` satisfies the amplitude relations that select Hestenes solutions.

    ``standard``: ``alpha0 = -i alpha12``, ``alpha13 = i alpha23``,
    ``alpha01 = i alpha02``, ``alpha03 = -i alpha4``.  ``reversed`` flips every
    ``i``, selecting solutions with the opposite mass sign.
    """
    if variant not in ("standard", "reversed"):
        raise DomainError(f"variant must be 'standard' or 'reversed', got {variant!r}")
    s = 1j if variant == "standard" else -1j
    gaps = (
        a.alpha0 + s * a.alpha12,
        a.alpha13 - s * a.alpha23,
        a.alpha01 - s * a.alpha02,
        a.alpha03 + s * a.alpha4,
    )
    scale = max(1.0, float(np.max(np.abs(a.vector()))))
    return all(abs(g) <= tol * scale for g in gaps)


def psi(mom: Momentum, window) -> DiscreteForm:
    """0-form with coefficients ``prod_mu (1 + i p_mu)**k_mu``."""
    window = _as_window(window)
    factors = [(1 + 1j * p) ** np.arange(n) for p, n in zip(mom.components, window.shape)]
    field = np.einsum("a,b,c,d->abcd", *factors)
    return DiscreteForm.from_components(window, {"x": field})


def psi_dynamic_range(mom: Momentum, window) -> float:
    """``max |psi| / min |psi|`` over the window."""
    window = _as_window(window)
    return math.prod((1 + p * p) ** ((n - 1) / 2) for p, n in zip(mom.components, window.shape))


def build_plane_wave(a: Amplitude, mom: Momentum, window) -> DiscreteForm:
    """``Omega = A psi``."""
    return a.to_form() * psi(mom, window)


@dataclass(frozen=True)
class BasisSolution:
    amplitude: Amplitude
    momentum: Momentum
    seed: str
    completion: str

    @property
    def branch(self) -> str:
        return "+" if self.momentum.p0 > 0 else "-"


def complete_amplitude(seed: Amplitude, mom: Momentum) -> tuple[Amplitude, str]:
    """Complete a seed through the non-singular constraint.

    A pure ``A_plus`` seed goes through :func:`derive_A_minus`, a pure ``A_minus``
    seed through :func:`derive_A_plus`.
    """
    has_plus = np.any(seed.plus.vector())
    has_minus = np.any(seed.minus.vector())
    if has_plus and has_minus:
        raise DomainError("seed must be supported on A_plus or on A_minus, not both")
    if has_minus:
        return derive_A_plus(seed, mom), "A_plus"
    return derive_A_minus(seed, mom), "A_minus"


def solution_basis(m: float, p1: float, p2: float, p3: float) -> list[BasisSolution]:
    """Eight unit-seed plane-wave amplitudes: four for each sign of ``p0``.

    Each sign class is seeded on ``A_plus`` (``x, e12, e13, e23``) unless
    ``m - p0`` vanishes, in which case it is seeded on ``A_minus``.
    """
    if m == 0 and p1 == p2 == p3 == 0:
        raise DomainError("m = 0 and p = 0: only trivial solutions")
    out = []
    for sign in (1, -1):
        mom = Momentum.on_shell(m, (p1, p2, p3), sign)
        use_plus = abs(mom.m - mom.p0) >= _branch_scale(mom)
        seeds = PLUS_SEEDS if use_plus else MINUS_SEEDS
        for s in seeds:
            amp, completed = complete_amplitude(Amplitude.seed(s), mom)
            out.append(BasisSolution(amp, mom, s, completed))
    return out


def joyce_check(a: Amplitude, mom: Momentum, window, tolerance: float = DEFAULT_TOLERANCE):
    return joyce_residual(build_plane_wave(a, mom, window), mom.m, tolerance)
