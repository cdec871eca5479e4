"""Affine chart changes for a family with parameters ``ps``.

Homogeneous coordinates are ``(Z_1 : ... : Z_{n+1})``. The base chart is
``Z_{n+1} = 1``. Chart 1 is ``(1 : u_n : ... : u_1)`` and chart ``i >= 2``
is ``(x_1 : ... : x_{i-1} : 1 : x_i : ... : x_n)``. In every other chart the
pulled-back form has a pole only along the last hyperplane at infinity; it is
cleared by the smallest monomial that makes the form polynomial.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .exceptions import ChartOutOfRange, NonQuasiHomogeneousInput
from .fields import AltForm, VectorField, contract, pullback, quasi_weight, rot
from .poly import Poly
from .weights import ParamSet


class ChartData(NamedTuple):
    S: VectorField
    lam: int
    omega: AltForm
    Y: VectorField
    pole_order: int


def chart_images(n: int, chart: int) -> list[Poly]:
    """Base-chart coordinates ``x_k`` as Laurent monomials in chart coordinates."""
    if not 1 <= chart <= n:
        raise ChartOutOfRange(f"chart {chart} outside [1, {n}]")
    return list(_chart_images(n, chart))


@lru_cache(maxsize=None)
def _chart_images(n: int, chart: int) -> tuple[Poly, ...]:
    out = []
    if chart == 1:
        # x_1 = 1/u_1, x_k = u_{n+2-k}/u_1
        e = [0] * n
        e[0] = -1
        out.append(Poly.monomial(e))
        for k in range(2, n + 1):
            e = [0] * n
            e[0] -= 1
            e[n + 1 - k] += 1
            out.append(Poly.monomial(e))
    else:
        for k in range(1, n + 1):
            e = [0] * n
            e[n - 1] -= 1
            if k < chart:
                e[k - 1] += 1
            elif k > chart:
                e[k - 2] += 1
            out.append(Poly.monomial(e))
    return tuple(out)


def chart_diagonal(ps: ParamSet, chart: int) -> tuple[int, ...]:
    """Entries of ``S_i``: ``p_bar`` for chart 1, ``rho_j`` for charts ``i >= 2``."""
    n = ps.n
    if chart == 0:
        return ps.p
    if chart == 1:
        return ps.p_bar
    if not 2 <= chart <= n:
        raise ChartOutOfRange(f"chart {chart} outside [0, {n}]")
    p, pi = ps.p, ps.p[chart - 1]
    rho = [p[k] - pi for k in range(chart - 1)]
    rho += [p[k] - pi for k in range(chart, n)]
    rho.append(-pi)
    return tuple(rho)


def base_form(ps: ParamSet, Y: VectorField) -> AltForm:
    """``omega_Y = (1/tau) i_S i_Y nu`` on the base chart."""
    if ps.tau == 0:
        raise ValueError("tau = 0: the family has no base-chart form")
    return contract(VectorField.diagonal(ps.p), Y) * Fraction(1, ps.tau)


def clear_poles(form: AltForm) -> tuple[AltForm, tuple[int, ...]]:
    """Multiply by the least monomial making every coefficient polynomial."""
    n = form.n
    lows = [0] * n
    for f in form.coeffs.values():
        for i, m in enumerate(f.min_exponents()):
            lows[i] = min(lows[i], m)
    shift = tuple(-x for x in lows)
    if not any(shift):
        return form, shift
    return form.map_coefficients(lambda f: f.shift(shift)), shift


def chart_transform(ps: ParamSet, Y: VectorField, chart: int) -> ChartData:
    n = ps.n
    if not 1 <= chart <= n:
        raise ChartOutOfRange(f"chart {chart} outside [1, {n}]")
    if Y.n != n:
        raise NonQuasiHomogeneousInput("field dimension does not match the weights")
    S = VectorField.diagonal(ps.p)
    if not Y.is_zero() and quasi_weight(S, Y) != ps.lam:
        raise NonQuasiHomogeneousInput(f"field is not quasi-homogeneous of weight {ps.lam}")
    omega = base_form(ps, Y)
    pulled = pullback(omega, chart_images(n, chart))
    cleared, shift = clear_poles(pulled)
    pole_axis = 0 if chart == 1 else n - 1
    if any(s for i, s in enumerate(shift) if i != pole_axis):
        raise NonQuasiHomogeneousInput("unexpected pole outside the hyperplane at infinity")
    S_i = VectorField.diagonal(chart_diagonal(ps, chart))
    return ChartData(S_i, ps.lambda_at(chart), cleared, rot(cleared), shift[pole_axis])
