"""Discrete forms on a finite window of the lattice complex K(4).

A basis element of K(4) at site ``k`` is a tensor product of four 1-D basis
elements, each either point-like (``x``) or edge-like (``e``).  Which of the
four positions carry an ``e`` is the *blade*; there are 16 of them.  A
:class:`DiscreteForm` stores one complex coefficient per (blade, site) pair in
a dense array of shape ``(16, N0, N1, N2, N3)``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Number
from typing import Iterable, NamedTuple

import numpy as np
from sympy.polys.domains import QQ, QQ_I


class DomainError(ValueError):
    """An operation was called outside its domain of definition."""


@dataclass(frozen=True, order=True)
class Blade:
    """Basis element shape: the ascending tuple of axes carrying an e-factor."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if tuple(sorted(set(self.indices))) != tuple(self.indices):
            raise DomainError(f"blade indices must be strictly ascending: {self.indices}")
        if any(i not in range(4) for i in self.indices):
            raise DomainError(f"blade indices must lie in 0..3: {self.indices}")

    @property
    def grade(self) -> int:
        return len(self.indices)

    @property
    def mask(self) -> int:
        return sum(1 << i for i in self.indices)

    @property
    def name(self) -> str:
        if not self.indices:
            return "x"
        return "e" + "".join(str(i) for i in self.indices)

    @property
    def index(self) -> int:
        return BLADE_INDEX[self]

    @classmethod
    def from_name(cls, name: str) -> "Blade":
        if name == "x":
            return cls(())
        if name == "e":
            return cls((0, 1, 2, 3))
        if not name.startswith("e") or not name[1:].isdigit():
            raise DomainError(f"unknown blade name {name!r}")
        return cls(tuple(int(c) for c in name[1:]))

    def __str__(self):
        return self.name


BLADES: tuple[Blade, ...] = tuple(
    Blade(c) for r in range(5) for c in combinations(range(4), r)
)
BLADE_INDEX: dict[Blade, int] = {b: i for i, b in enumerate(BLADES)}
BLADE_NAMES: tuple[str, ...] = tuple(b.name for b in BLADES)
GRADES = np.array([b.grade for b in BLADES])
EVEN = GRADES % 2 == 0


def blade(ref: "Blade | str | int") -> Blade:
    """Coerce a blade name, index or :class:`Blade` to a :class:`Blade`."""
    if isinstance(ref, Blade):
        return ref
    if isinstance(ref, (int, np.integer)):
        return BLADES[int(ref)]
    return Blade.from_name(ref)


class MultiIndex(NamedTuple):
    k0: int
    k1: int
    k2: int
    k3: int


@dataclass(frozen=True)
class Window:
    """Box ``0 <= k_mu < N_mu`` of lattice sites."""

    extents: tuple[int, int, int, int]

    def __post_init__(self):
        ext = tuple(int(n) for n in self.extents)
        if len(ext) != 4 or any(n < 1 for n in ext):
            raise DomainError(f"window needs four positive extents, got {self.extents}")
        object.__setattr__(self, "extents", ext)

    @classmethod
    def cube(cls, n: int) -> "Window":
        return cls((n, n, n, n))

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.extents

    def contains(self, k: Iterable[int]) -> bool:
        k = tuple(k)
        return len(k) == 4 and all(0 <= c < n for c, n in zip(k, self.extents))

    def interior(self, axes: Iterable[int] = range(4)) -> "Window":
        """Sites whose forward shift along each of ``axes`` stays in the window."""
        axes = set(axes)
        return Window(tuple(n - 1 if mu in axes else n for mu, n in enumerate(self.extents)))

    def sites(self) -> Iterable[MultiIndex]:
        for k in np.ndindex(*self.extents):
            yield MultiIndex(*k)

    def __str__(self):
        return "x".join(str(n) for n in self.extents)


def _as_window(w) -> Window:
    if isinstance(w, Window):
        return w
    if isinstance(w, (int, np.integer)):
        return Window.cube(int(w))
    return Window(tuple(w))


def exact_scalar(v):
    """Convert ``v`` to an exact Gaussian rational (floats convert exactly)."""
    if isinstance(v, type(QQ_I.zero)):
        return v
    if isinstance(v, (int, np.integer)):
        return QQ_I(int(v), 0)
    if isinstance(v, Fraction):
        return QQ_I(QQ(v.numerator, v.denominator), 0)
    c = complex(v)
    re, im = Fraction(c.real), Fraction(c.imag)
    return QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))


def _to_complex(v) -> complex:
    if isinstance(v, type(QQ_I.zero)):
        return complex(float(v.x), float(v.y))
    return complex(v)


def _zeros(shape, dtype):
    if np.dtype(dtype) == object:
        out = np.empty(shape, dtype=object)
        out.fill(QQ_I.zero)
        return out
    return np.zeros(shape, dtype=dtype)


class ConstantForm:
    """k-independent form: one coefficient per blade.

    Coefficients are either numpy numbers (``complex128`` or integer) or, when
    built with ``exact=True``, Gaussian rationals held in an object array.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, exact: bool = False):
        arr = np.asarray(coeffs)
        if arr.shape != (16,):
            raise DomainError(f"constant form needs 16 coefficients, got shape {arr.shape}")
        if exact:
            arr = np.array([exact_scalar(v) for v in arr], dtype=object)
        elif arr.dtype == object:
            if any(isinstance(v, type(QQ_I.zero)) for v in arr):
                arr = np.array(arr, dtype=object)
            else:
                arr = arr.astype(complex)
        arr.setflags(write=False)
        self.coeffs = arr

    @classmethod
    def zero(cls, exact: bool = False, dtype=complex) -> "ConstantForm":
        return cls(_zeros(16, object if exact else dtype), exact=exact)

    @classmethod
    def from_dict(cls, terms: dict, exact: bool = False) -> "ConstantForm":
        """Build from ``{blade: coefficient}``; blades may be names or :class:`Blade`."""
        if exact:
            arr = _zeros(16, object)
            for b, v in terms.items():
                arr[blade(b).index] += exact_scalar(v)
        else:
            arr = np.zeros(16, dtype=complex)
            for b, v in terms.items():
                arr[blade(b).index] += v
        return cls(arr, exact=exact)

    @property
    def is_exact(self) -> bool:
        return self.coeffs.dtype == object

    def __getitem__(self, b):
        return self.coeffs[blade(b).index]

    def exact(self) -> "ConstantForm":
        return self if self.is_exact else ConstantForm(self.coeffs, exact=True)

    def to_complex(self) -> "ConstantForm":
        if not self.is_exact:
            return self
        return ConstantForm(np.array([_to_complex(v) for v in self.coeffs], dtype=complex))

    def as_array(self) -> np.ndarray:
        """Complex coefficient vector in blade order."""
        return self.to_complex().coeffs.astype(complex)

    def support(self) -> set[str]:
        return {BLADE_NAMES[i] for i, v in enumerate(self.coeffs) if v != _zero_like(v)}

    def lift(self, window) -> "DiscreteForm":
        """Materialize on ``window``: the same blade map at every site."""
        window = _as_window(window)
        src = self.to_complex().coeffs
        arr = np.broadcast_to(src.reshape(16, 1, 1, 1, 1), (16,) + window.shape).copy()
        return DiscreteForm(arr)

    def grade_part(self, r: int) -> "ConstantForm":
        _check_grade(r)
        arr = self.coeffs.copy()
        mask = GRADES != r
        arr[mask] = _zeros(int(mask.sum()), arr.dtype)
        return ConstantForm(arr)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.as_array())))

    def allclose(self, other: "ConstantForm", atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.as_array() - other.as_array())) <= atol)

    def __eq__(self, other):
        if not isinstance(other, ConstantForm):
            return NotImplemented
        if self.is_exact or other.is_exact:
            a, b = self.exact().coeffs, other.exact().coeffs
            return all(x == y for x, y in zip(a, b))
        return bool(np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, ConstantForm):
            return NotImplemented
        a, b = _align_exactness(self, other)
        return ConstantForm(a.coeffs + b.coeffs)

    def __sub__(self, other):
        if not isinstance(other, ConstantForm):
            return NotImplemented
        a, b = _align_exactness(self, other)
        return ConstantForm(a.coeffs - b.coeffs)

    def __neg__(self):
        return ConstantForm(-self.coeffs)

    def __mul__(self, other):
        from .clifford import clifford_mul

        if isinstance(other, (ConstantForm, DiscreteForm)):
            return clifford_mul(self, other)
        if isinstance(other, (Number, type(QQ_I.zero))):
            if self.is_exact:
                s = exact_scalar(other)
                return ConstantForm(np.array([s * v for v in self.coeffs], dtype=object))
            return ConstantForm(self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Number, type(QQ_I.zero))):
            return self * other
        return NotImplemented

    def __repr__(self):
        terms = [f"{v}*{BLADE_NAMES[i]}" for i, v in enumerate(self.coeffs) if v != _zero_like(v)]
        return "ConstantForm(" + (" + ".join(terms) or "0") + ")"


def _zero_like(v):
    return QQ_I.zero if isinstance(v, type(QQ_I.zero)) else 0


def _align_exactness(a: ConstantForm, b: ConstantForm):
    if a.is_exact != b.is_exact:
        return a.exact(), b.exact()
    return a, b


def _check_grade(r: int):
    if r not in range(5):
        raise DomainError(f"grade must be in 0..4, got {r}")


class DiscreteForm:
    """Inhomogeneous discrete form: coefficient array of shape ``(16, N0, N1, N2, N3)``.

    Instances are immutable; every operation returns a new form.  Integer
    coefficient arrays are kept as integers so linear and Clifford operations
    on them stay exact.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.array(coeffs)
        if arr.ndim != 5 or arr.shape[0] != 16:
            raise DomainError(f"discrete form needs shape (16, N0, N1, N2, N3), got {arr.shape}")
        if arr.dtype == object:
            raise DomainError("discrete forms hold numeric (integer or complex) coefficients")
        Window(arr.shape[1:])
        arr.setflags(write=False)
        self.coeffs = arr

    @classmethod
    def zeros(cls, window, dtype=complex) -> "DiscreteForm":
        return cls(np.zeros((16,) + _as_window(window).shape, dtype=dtype))

    @classmethod
    def from_components(cls, window, components: dict, dtype=complex) -> "DiscreteForm":
        """Build from ``{blade: scalar or (N0,N1,N2,N3) array}``."""
        window = _as_window(window)
        arr = np.zeros((16,) + window.shape, dtype=dtype)
        for b, v in components.items():
            arr[blade(b).index] = v
        return cls(arr)

    @property
    def window(self) -> Window:
        return Window(self.coeffs.shape[1:])

    @property
    def dtype(self):
        return self.coeffs.dtype

    def __getitem__(self, key):
        """``F[blade]`` gives the coefficient field; ``F[blade, k]`` a single value."""
        if isinstance(key, tuple) and len(key) == 2:
            b, k = key
            k = tuple(k)
            if not self.window.contains(k):
                raise DomainError(f"site {k} outside window {self.window}")
            return self.coeffs[(blade(b).index,) + k]
        return self.coeffs[blade(key).index]

    def at(self, k) -> ConstantForm:
        """Blade map at site ``k``."""
        k = tuple(k)
        if not self.window.contains(k):
            raise DomainError(f"site {k} outside window {self.window}")
        return ConstantForm(self.coeffs[(slice(None),) + k])

    def restrict(self, window) -> "DiscreteForm":
        """Leading sub-block on ``window`` (which must fit inside this one)."""
        window = _as_window(window)
        if any(n > m for n, m in zip(window.shape, self.window.shape)):
            raise DomainError(f"cannot restrict {self.window} to larger window {window}")
        return DiscreteForm(self.coeffs[(slice(None),) + tuple(slice(0, n) for n in window.shape)])

    def grade_part(self, r: int) -> "DiscreteForm":
        return grade_part(self, r)

    def max_abs(self) -> float:
        if self.coeffs.size == 0:
            return 0.0
        return float(np.max(np.abs(self.coeffs)))

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def allclose(self, other: "DiscreteForm", atol: float = 0.0, rtol: float = 0.0) -> bool:
        _check_same_window(self, other)
        diff = np.max(np.abs(self.coeffs - other.coeffs), initial=0.0)
        return bool(diff <= atol + rtol * max(self.max_abs(), other.max_abs()))

    def __eq__(self, other):
        if not isinstance(other, DiscreteForm):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, DiscreteForm):
            return NotImplemented
        return linear_combine(1, self, 1, other)

    def __sub__(self, other):
        if not isinstance(other, DiscreteForm):
            return NotImplemented
        return linear_combine(1, self, -1, other)

    def __neg__(self):
        return DiscreteForm(-self.coeffs)

    def __mul__(self, other):
        from .clifford import clifford_mul

        if isinstance(other, (ConstantForm, DiscreteForm)):
            return clifford_mul(self, other)
        if isinstance(other, Number):
            return DiscreteForm(self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return DiscreteForm(other * self.coeffs)
        return NotImplemented

    def __repr__(self):
        return f"DiscreteForm(window={self.window}, dtype={self.dtype}, max_abs={self.max_abs():.3g})"

    # serialization

    def nonzero_entries(self):
        """Yield ``(blade_name, k, value)`` for every nonzero coefficient, blade-major."""
        for idx in zip(*np.nonzero(self.coeffs)):
            yield BLADE_NAMES[idx[0]], tuple(int(c) for c in idx[1:]), complex(self.coeffs[idx])

    def to_json(self) -> dict:
        return {
            "window": list(self.window.shape),
            "coeff": [
                {"blade": b, "k": list(k), "re": v.real, "im": v.imag}
                for b, k, v in self.nonzero_entries()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DiscreteForm":
        window = Window(tuple(data["window"]))
        arr = np.zeros((16,) + window.shape, dtype=complex)
        for entry in data["coeff"]:
            k = tuple(entry["k"])
            if not window.contains(k):
                raise DomainError(f"site {k} outside window {window}")
            arr[(Blade.from_name(entry["blade"]).index,) + k] += complex(entry["re"], entry["im"])
        return cls(arr)

    def to_csv(self, stream=None) -> str:
        buf = stream if stream is not None else io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["blade", "k0", "k1", "k2", "k3", "re", "im"])
        for b, k, v in self.nonzero_entries():
            writer.writerow([b, *k, repr(v.real), repr(v.imag)])
        return buf.getvalue() if stream is None else ""

    @classmethod
    def from_csv(cls, text: str, window) -> "DiscreteForm":
        window = _as_window(window)
        arr = np.zeros((16,) + window.shape, dtype=complex)
        for row in csv.DictReader(io.StringIO(text)):
            k = tuple(int(row[f"k{mu}"]) for mu in range(4))
            if not window.contains(k):
                raise DomainError(f"site {k} outside window {window}")
            arr[(Blade.from_name(row["blade"]).index,) + k] += complex(float(row["re"]), float(row["im"]))
        return cls(arr)


def _check_same_window(f: DiscreteForm, g: DiscreteForm):
    if f.window != g.window:
        raise DomainError(f"window mismatch: {f.window} vs {g.window}")


def grade_part(form: DiscreteForm, r: int) -> DiscreteForm:
    """Grade-``r`` component of ``form``."""
    _check_grade(r)
    arr = form.coeffs.copy()
    arr[GRADES != r] = 0
    return DiscreteForm(arr)


def parity_split(form: DiscreteForm) -> tuple[DiscreteForm, DiscreteForm]:
    """Split into (even, odd) parts: grades {0, 2, 4} and {1, 3}."""
    even = form.coeffs.copy()
    odd = form.coeffs.copy()
    even[~EVEN] = 0
    odd[EVEN] = 0
    return DiscreteForm(even), DiscreteForm(odd)


def is_even(form: DiscreteForm) -> bool:
    return not np.any(form.coeffs[~EVEN])


def linear_combine(a, f: DiscreteForm, b, g: DiscreteForm) -> DiscreteForm:
    """Coefficient-wise ``a*f + b*g``."""
    _check_same_window(f, g)
    return DiscreteForm(a * f.coeffs + b * g.coeffs)
