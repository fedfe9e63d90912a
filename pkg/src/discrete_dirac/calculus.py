"""Forward differences, the discrete exterior derivative and codifferential.

The lattice is unbounded in principle; on a finite window every difference
is evaluated only where the forward shift stays inside the window.  Output
index ``k`` refers to the same lattice site as input index ``k``, so results
live on the leading sub-block of the input window and nothing is padded.
"""
from __future__ import annotations

import numpy as np

from .clifford import TABLE, ProductTable, clifford_mul, unit_form
from .forms import BLADE_INDEX, Blade, DiscreteForm, DomainError, Window

_E = {name: BLADE_INDEX[Blade.from_name(name)] for name in
      ("x", "e0", "e1", "e2", "e3", "e01", "e02", "e03", "e12", "e13", "e23",
       "e012", "e013", "e023", "e123", "e0123")}


def _require(window: Window, axes=range(4)):
    for mu in axes:
        if window.shape[mu] < 2:
            raise DomainError(f"axis {mu} of window {window} has extent < 2; no forward shift fits")


def delta(mu: int, form: DiscreteForm) -> DiscreteForm:
    """Forward difference along axis ``mu`` of every component.

    The result loses the last layer along ``mu`` only.
    """
    if mu not in range(4):
        raise DomainError(f"axis must be 0..3, got {mu}")
    _require(form.window, [mu])
    return DiscreteForm(np.diff(form.coeffs, axis=mu + 1))


class _Diffs:
    """Forward differences of single components, cropped to the full interior."""

    def __init__(self, form: DiscreteForm):
        _require(form.window)
        self.c = form.coeffs
        self.shape = form.window.interior().shape
        self._crop = tuple(slice(0, n) for n in self.shape)

    def __call__(self, mu: int, name: str) -> np.ndarray:
        return np.diff(self.c[_E[name]], axis=mu)[self._crop]

    def empty(self) -> np.ndarray:
        return np.zeros((16,) + self.shape, dtype=self.c.dtype)


def d_c(form: DiscreteForm) -> DiscreteForm:
    """Discrete exterior derivative, grade r -> r + 1, on the interior window."""
    D = _Diffs(form)
    out = D.empty()
    # 0-forms
    for mu in range(4):
        out[_E[f"e{mu}"]] += D(mu, "x")
    # 1-forms
    for mu in range(4):
        for nu in range(mu + 1, 4):
            out[_E[f"e{mu}{nu}"]] += D(mu, f"e{nu}") - D(nu, f"e{mu}")
    # 2-forms
    out[_E["e012"]] += D(0, "e12") - D(1, "e02") + D(2, "e01")
    out[_E["e013"]] += D(0, "e13") - D(1, "e03") + D(3, "e01")
    out[_E["e023"]] += D(0, "e23") - D(2, "e03") + D(3, "e02")
    out[_E["e123"]] += D(1, "e23") - D(2, "e13") + D(3, "e12")
    # 3-forms; 4-forms map to zero
    out[_E["e0123"]] += D(0, "e123") - D(1, "e023") + D(2, "e013") - D(3, "e012")
    return DiscreteForm(out)


def delta_c(form: DiscreteForm) -> DiscreteForm:
    """Discrete codifferential, grade r -> r - 1, on the interior window."""
    D = _Diffs(form)
    out = D.empty()
    # 0-forms map to zero; 1-forms
    out[_E["x"]] += D(0, "e0") - D(1, "e1") - D(2, "e2") - D(3, "e3")
    # 2-forms
    out[_E["e0"]] += D(1, "e01") + D(2, "e02") + D(3, "e03")
    out[_E["e1"]] += D(0, "e01") + D(2, "e12") + D(3, "e13")
    out[_E["e2"]] += D(0, "e02") - D(1, "e12") + D(3, "e23")
    out[_E["e3"]] += D(0, "e03") - D(1, "e13") - D(2, "e23")
    # 3-forms
    out[_E["e01"]] += -D(2, "e012") - D(3, "e013")
    out[_E["e02"]] += D(1, "e012") - D(3, "e023")
    out[_E["e03"]] += D(1, "e013") + D(2, "e023")
    out[_E["e12"]] += D(0, "e012") - D(3, "e123")
    out[_E["e13"]] += D(0, "e013") + D(2, "e123")
    out[_E["e23"]] += D(0, "e023") - D(1, "e123")
    # 4-forms
    out[_E["e012"]] += D(3, "e0123")
    out[_E["e013"]] += -D(2, "e0123")
    out[_E["e023"]] += D(1, "e0123")
    out[_E["e123"]] += D(0, "e0123")
    return DiscreteForm(out)


def dirac_op(form: DiscreteForm) -> DiscreteForm:
    """``d_c + delta_c`` on the interior window."""
    return d_c(form) + delta_c(form)


def dirac_via_clifford(form: DiscreteForm, table: ProductTable = TABLE) -> DiscreteForm:
    """``sum_mu e_mu * delta(mu, form)`` built from blade products.

    Independent of the component formulas in :func:`d_c` and :func:`delta_c`;
    used to cross-check them.
    """
    _require(form.window)
    interior = form.window.interior()
    total = None
    for mu in range(4):
        term = clifford_mul(unit_form(f"e{mu}"), delta(mu, form).restrict(interior), table)
        total = term if total is None else total + term
    return total

