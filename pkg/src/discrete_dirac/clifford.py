"""Same-site Clifford product of discrete forms, unit forms and projectors.

Products are defined blade by blade: concatenate the index sequences, sort
them by adjacent transpositions (each one flips the sign) and contract equal
neighbours with the metric ``diag(1, -1, -1, -1)``.  Forms living at different
sites multiply to zero, so the product of two discrete forms is taken site by
site.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from sympy.polys.domains import QQ, QQ_I

from .forms import (
    BLADE_INDEX,
    BLADES,
    Blade,
    ConstantForm,
    DiscreteForm,
    DomainError,
    _check_same_window,
    _zeros,
    blade,
)

METRIC = (1, -1, -1, -1)


def metric(mu: int, nu: int) -> int:
    return METRIC[mu] if mu == nu else 0


class SignedBlade(NamedTuple):
    sign: int
    blade: Blade


def _reduce_word(word: list[int]) -> tuple[int, tuple[int, ...]]:
    """Bring a product of generators to canonical ascending form."""
    sign = 1
    word = list(word)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(word) - 1:
            a, b = word[i], word[i + 1]
            if a > b:
                word[i], word[i + 1] = b, a
                sign = -sign
                changed = True
            elif a == b:
                sign *= METRIC[a]
                del word[i : i + 2]
                changed = True
                continue
            i += 1
    return sign, tuple(word)


@dataclass(frozen=True)
class ProductTable:
    """Precomputed 16x16 blade products: ``index[i, j]`` and ``sign[i, j]``."""

    index: np.ndarray
    sign: np.ndarray

    @classmethod
    def build(cls) -> "ProductTable":
        index = np.zeros((16, 16), dtype=np.int64)
        sign = np.zeros((16, 16), dtype=np.int64)
        for i, a in enumerate(BLADES):
            for j, b in enumerate(BLADES):
                s, word = _reduce_word(list(a.indices) + list(b.indices))
                index[i, j] = BLADE_INDEX[Blade(word)]
                sign[i, j] = s
        index.setflags(write=False)
        sign.setflags(write=False)
        return cls(index, sign)

    def mul(self, a, b) -> SignedBlade:
        i, j = blade(a).index, blade(b).index
        return SignedBlade(int(self.sign[i, j]), BLADES[self.index[i, j]])

    def with_flipped_sign(self, a, b) -> "ProductTable":
        """Copy of the table with one product's sign negated (fault injection)."""
        sign = self.sign.copy()
        sign[blade(a).index, blade(b).index] *= -1
        sign.setflags(write=False)
        return ProductTable(self.index, sign)


TABLE = ProductTable.build()


def blade_mul(a, b, table: ProductTable = TABLE) -> SignedBlade:
    """Product of two blades as a single signed blade."""
    return table.mul(a, b)


def _bilinear(a: np.ndarray, b: np.ndarray, table: ProductTable) -> np.ndarray:
    # a, b: coefficient arrays with the blade axis first; trailing axes broadcast
    shape = np.broadcast_shapes(a.shape[1:], b.shape[1:])
    dtype = object if object in (a.dtype, b.dtype) else np.result_type(a.dtype, b.dtype)
    out = _zeros((16,) + shape, dtype)
    for i in _nonzero_rows(a):
        for j in _nonzero_rows(b):
            out[table.index[i, j]] += int(table.sign[i, j]) * (a[i] * b[j])
    return out


def _nonzero_rows(a: np.ndarray) -> list[int]:
    if a.dtype == object:
        return [i for i in range(16) if bool(a[i])]
    return [i for i in range(16) if np.any(a[i])]


def constant_mul(a: ConstantForm, b: ConstantForm, table: ProductTable = TABLE) -> ConstantForm:
    """Clifford product of two constant forms, exact if either factor is exact."""
    if a.is_exact != b.is_exact:
        a, b = a.exact(), b.exact()
    return ConstantForm(_bilinear(a.coeffs, b.coeffs, table))


def clifford_mul(f, g, table: ProductTable = TABLE):
    """Site-wise Clifford product.

    Either factor may be a :class:`ConstantForm`; it then acts identically at
    every site without being materialized on the window.
    """
    if isinstance(f, ConstantForm) and isinstance(g, ConstantForm):
        return constant_mul(f, g, table)
    if isinstance(f, DiscreteForm) and isinstance(g, DiscreteForm):
        _check_same_window(f, g)
        return DiscreteForm(_bilinear(f.coeffs, g.coeffs, table))
    if isinstance(f, ConstantForm) and isinstance(g, DiscreteForm):
        return DiscreteForm(_bilinear(_as_site_constant(f, g), g.coeffs, table))
    if isinstance(f, DiscreteForm) and isinstance(g, ConstantForm):
        return DiscreteForm(_bilinear(f.coeffs, _as_site_constant(g, f), table))
    raise TypeError(f"cannot multiply {type(f).__name__} by {type(g).__name__}")


def _as_site_constant(c: ConstantForm, like: DiscreteForm) -> np.ndarray:
    arr = c.to_complex().coeffs if c.is_exact else c.coeffs
    return arr.reshape((16,) + (1,) * (like.coeffs.ndim - 1))


def unit_form(kind: str, exact: bool = False) -> ConstantForm:
    """Unit constant form ``x``, ``e``, ``e_mu`` or ``e_{mu nu}`` (mu < nu).

    ``kind`` is a blade name such as ``"x"``, ``"e"``, ``"e2"`` or ``"e03"``.
    """
    if kind.startswith("e") and len(kind) == 3 and kind[1:].isdigit() and kind[1] >= kind[2]:
        raise DomainError(f"unit form {kind!r} needs mu < nu")
    b = blade(kind)
    if b.grade == 3:
        raise DomainError(f"unit forms are x, e, e_mu and e_mu_nu; got {kind!r}")
    if exact:
        return ConstantForm.from_dict({b: 1}, exact=True)
    arr = np.zeros(16, dtype=np.int64)
    arr[b.index] = 1
    return ConstantForm(arr)


def projector(kind: str, exact: bool = True) -> ConstantForm:
    """``P_{+-0} = (x +- e0)/2`` or ``P_{+-12} = (x +- i e1 e2)/2``.

    ``kind`` is one of ``"+0"``, ``"-0"``, ``"+12"``, ``"-12"``.
    """
    if kind not in ("+0", "-0", "+12", "-12"):
        raise DomainError(f"unknown projector {kind!r}")
    half = QQ_I(QQ(1, 2), 0)
    sign = 1 if kind[0] == "+" else -1
    x = unit_form("x", exact=True)
    if kind[1:] == "0":
        p = (x + sign * unit_form("e0", exact=True)) * half
    else:
        e12 = constant_mul(unit_form("e1", exact=True), unit_form("e2", exact=True))
        p = (x + e12 * QQ_I(0, sign)) * half
    return p if exact else p.to_complex()
