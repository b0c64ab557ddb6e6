"""
FocalFront - Truncated Taylor Jets

Exact-order truncated Taylor series in one variable (Jet1) and two variables
(Jet2), plus 3-vectors of bivariate jets (JetVec3). Every partial derivative
used by the geometry layer is read off these coefficient arrays.

A Jet2 of order N at base point (u0, v0) stores c[i][j] for i + j <= N and
represents

    sum c[i][j] (u - u0)^i (v - v0)^j

Arithmetic follows the usual power-series calculus: the order of a result is
the lowest order among its operands, and functions of a jet (reciprocal,
square root) are evaluated by composing the jet's non-constant part with the
univariate Taylor series of the function at the constant term.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from math import factorial
from numbers import Real
from typing import Literal, Sequence

import numpy as np

from focalfront.errors import (
    DivisionBySingularJet,
    NotDivisible,
    OrderExceeded,
    SqrtOfNonpositiveJet,
)

logger = logging.getLogger(__name__)

Axis = Literal["u", "v"]

DEFAULT_EPS = 1e-9


@lru_cache(maxsize=None)
def _triangle(order: int) -> np.ndarray:
    """Boolean mask of the indices i + j <= order."""
    idx = np.arange(order + 1)
    mask = np.add.outer(idx, idx) <= order
    mask.setflags(write=False)
    return mask


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


# =============================================================================
# Univariate jets
# =============================================================================


class Jet1:
    """Truncated series in u at u0: sum c[k] (u - u0)^k for k <= N."""

    __slots__ = ("coeffs", "base")

    def __init__(self, coeffs: Sequence[float] | np.ndarray, base: float = 0.0):
        self.coeffs = _frozen(coeffs)
        self.base = float(base)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> float:
        return float(self.coeffs[0])

    def truncate(self, order: int) -> Jet1:
        return Jet1(self.coeffs[: order + 1], self.base)

    def derivative(self, k: int = 1) -> float:
        """k-th derivative at the base point."""
        if k > self.order:
            raise OrderExceeded(f"derivative {k} exceeds order {self.order}", "Jet1.derivative")
        return factorial(k) * float(self.coeffs[k])

    def scale(self) -> float:
        return max(1.0, float(np.max(np.abs(self.coeffs))))

    def _coerce(self, other: Jet1 | float) -> tuple[np.ndarray, np.ndarray]:
        if isinstance(other, Jet1):
            if other.base != self.base:
                raise ValueError("jets expanded at different base points")
            n = min(self.order, other.order)
            return self.coeffs[: n + 1], other.coeffs[: n + 1]
        const = np.zeros_like(self.coeffs)
        const[0] = float(other)
        return self.coeffs, const

    def __add__(self, other: Jet1 | float) -> Jet1:
        a, b = self._coerce(other)
        return Jet1(a + b, self.base)

    __radd__ = __add__

    def __sub__(self, other: Jet1 | float) -> Jet1:
        a, b = self._coerce(other)
        return Jet1(a - b, self.base)

    def __rsub__(self, other: float) -> Jet1:
        return (-self) + other

    def __neg__(self) -> Jet1:
        return Jet1(-self.coeffs, self.base)

    def __mul__(self, other: Jet1 | float) -> Jet1:
        if isinstance(other, Real):
            return Jet1(self.coeffs * float(other), self.base)
        a, b = self._coerce(other)
        n = len(a) - 1
        return Jet1(np.convolve(a, b)[: n + 1], self.base)

    __rmul__ = __mul__

    def __truediv__(self, other: Jet1 | float) -> Jet1:
        if isinstance(other, Real):
            return Jet1(self.coeffs / float(other), self.base)
        a, b = self._coerce(other)
        if abs(b[0]) <= DEFAULT_EPS:
            raise DivisionBySingularJet(
                f"divisor constant term {b[0]:.3e} vanishes", "Jet1.__truediv__"
            )
        q = np.zeros_like(a)
        for k in range(len(a)):
            q[k] = (a[k] - np.dot(b[1 : k + 1], q[k - 1 :: -1][:k])) / b[0]
        return Jet1(q, self.base)

    def shift_down(self, k: int) -> Jet1:
        """Divide by (u - u0)^k, dropping the first k coefficients."""
        return Jet1(self.coeffs[k:], self.base)

    def __repr__(self) -> str:
        return f"Jet1(order={self.order}, base={self.base}, coeffs={self.coeffs.tolist()})"


def vanishing_order(a: Jet1, eps: float = DEFAULT_EPS) -> int:
    """
    Smallest k with |c_k| > eps * scale.

    Returns order + 1 when every coefficient vanishes, meaning "at least N+1".
    """
    threshold = eps * a.scale()
    for k, c in enumerate(a.coeffs):
        if abs(c) > threshold:
            return k
    return a.order + 1


# =============================================================================
# Bivariate jets
# =============================================================================


class Jet2:
    """Truncated bivariate Taylor expansion at a base point."""

    __slots__ = ("coeffs", "base_point")

    def __init__(self, coeffs: np.ndarray, base_point: tuple[float, float] = (0.0, 0.0)):
        coeffs = np.array(coeffs, dtype=float)
        if coeffs.ndim != 2 or coeffs.shape[0] != coeffs.shape[1]:
            raise ValueError("Jet2 coefficients must be a square array")
        coeffs = coeffs * _triangle(coeffs.shape[0] - 1)
        self.coeffs = _frozen(coeffs)
        self.base_point = (float(base_point[0]), float(base_point[1]))

    # -------------------------------------------------------------------------
    # Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def constant(cls, value: float, base_point: tuple[float, float], order: int) -> Jet2:
        coeffs = np.zeros((order + 1, order + 1))
        coeffs[0, 0] = value
        return cls(coeffs, base_point)

    @classmethod
    def coordinate(cls, axis: Axis, base_point: tuple[float, float], order: int) -> Jet2:
        """Jet of the coordinate function u or v itself."""
        coeffs = np.zeros((order + 1, order + 1))
        if axis == "u":
            coeffs[0, 0] = base_point[0]
            if order >= 1:
                coeffs[1, 0] = 1.0
        else:
            coeffs[0, 0] = base_point[1]
            if order >= 1:
                coeffs[0, 1] = 1.0
        return cls(coeffs, base_point)

    # -------------------------------------------------------------------------
    # Accessors
    # -------------------------------------------------------------------------

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def value(self) -> float:
        return float(self.coeffs[0, 0])

    @property
    def gradient(self) -> np.ndarray:
        if self.order < 1:
            raise OrderExceeded("gradient of an order-0 jet", "Jet2.gradient")
        return np.array([self.coeffs[1, 0], self.coeffs[0, 1]])

    def hessian(self) -> np.ndarray:
        return np.array(
            [
                [partial(self, 2, 0), partial(self, 1, 1)],
                [partial(self, 1, 1), partial(self, 0, 2)],
            ]
        )

    def scale(self) -> float:
        return max(1.0, float(np.max(np.abs(self.coeffs))))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def truncate(self, order: int) -> Jet2:
        if order >= self.order:
            return self
        return Jet2(self.coeffs[: order + 1, : order + 1], self.base_point)

    def along_u(self) -> Jet1:
        """Restriction to the line v = v0 through the base point."""
        return Jet1(self.coeffs[:, 0], self.base_point[0])

    def evaluate(self, u: float, v: float) -> float:
        du = (u - self.base_point[0]) ** np.arange(self.order + 1)
        dv = (v - self.base_point[1]) ** np.arange(self.order + 1)
        return float(du @ self.coeffs @ dv)

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------

    def _pair(self, other: Jet2) -> tuple[np.ndarray, np.ndarray, int]:
        if other.base_point != self.base_point:
            raise ValueError(
                f"jets expanded at different base points {self.base_point} and {other.base_point}"
            )
        n = min(self.order, other.order)
        return self.coeffs[: n + 1, : n + 1], other.coeffs[: n + 1, : n + 1], n

    def _const(self, value: float) -> Jet2:
        return Jet2.constant(float(value), self.base_point, self.order)

    def __add__(self, other: Jet2 | float) -> Jet2:
        if isinstance(other, Real):
            other = self._const(other)
        a, b, _ = self._pair(other)
        return Jet2(a + b, self.base_point)

    __radd__ = __add__

    def __sub__(self, other: Jet2 | float) -> Jet2:
        if isinstance(other, Real):
            other = self._const(other)
        a, b, _ = self._pair(other)
        return Jet2(a - b, self.base_point)

    def __rsub__(self, other: float) -> Jet2:
        return self._const(other) - self

    def __neg__(self) -> Jet2:
        return Jet2(-self.coeffs, self.base_point)

    def __mul__(self, other: Jet2 | float) -> Jet2:
        if isinstance(other, Real):
            return Jet2(self.coeffs * float(other), self.base_point)
        if isinstance(other, JetVec3):
            return other * self
        a, b, n = self._pair(other)
        out = np.zeros((n + 1, n + 1))
        for k in range(n + 1):
            for l in range(n + 1 - k):
                if a[k, l] != 0.0:
                    out[k:, l:] += a[k, l] * b[: n + 1 - k, : n + 1 - l]
        return Jet2(out, self.base_point)

    __rmul__ = __mul__

    def __truediv__(self, other: Jet2 | float) -> Jet2:
        if isinstance(other, Real):
            return Jet2(self.coeffs / float(other), self.base_point)
        return self * other.reciprocal()

    def __rtruediv__(self, other: float) -> Jet2:
        return self.reciprocal() * float(other)

    def _compose(self, series: np.ndarray) -> Jet2:
        """Evaluate sum series[k] t^k with t = self - self(0), by Horner's rule."""
        t = Jet2(self.coeffs, self.base_point) - self.value
        result = self._const(series[-1])
        for g_k in series[-2::-1]:
            result = result * t + g_k
        return result

    def reciprocal(self, eps: float = DEFAULT_EPS) -> Jet2:
        b0 = self.value
        if abs(b0) <= eps:
            raise DivisionBySingularJet(
                f"divisor constant term {b0:.3e} is within {eps:.1e} of zero",
                "jet_arith",
            )
        k = np.arange(self.order + 1)
        series = (-1.0) ** k / b0 ** (k + 1)
        return self._compose(series)

    def sqrt(self, eps: float = DEFAULT_EPS) -> Jet2:
        a0 = self.value
        if a0 <= eps:
            raise SqrtOfNonpositiveJet(
                f"constant term {a0:.3e} is not strictly positive", "jet_sqrt"
            )
        series = np.empty(self.order + 1)
        binom = 1.0
        for k in range(self.order + 1):
            series[k] = binom * a0 ** (0.5 - k)
            binom *= (0.5 - k) / (k + 1)
        return self._compose(series)

    # -------------------------------------------------------------------------
    # Calculus
    # -------------------------------------------------------------------------

    def diff_u(self) -> Jet2:
        n = self.order
        if n == 0:
            raise OrderExceeded("cannot differentiate an order-0 jet", "Jet2.diff_u")
        i = np.arange(1, n + 1)[:, None]
        return Jet2(self.coeffs[1:, :n] * i, self.base_point)

    def diff_v(self) -> Jet2:
        n = self.order
        if n == 0:
            raise OrderExceeded("cannot differentiate an order-0 jet", "Jet2.diff_v")
        j = np.arange(1, n + 1)[None, :]
        return Jet2(self.coeffs[:n, 1:] * j, self.base_point)

    def multiply_by_coordinate(self, axis: Axis) -> Jet2:
        """Multiply by (u - u0) or (v - v0); the product is known to order N+1."""
        n = self.order
        out = np.zeros((n + 2, n + 2))
        if axis == "u":
            out[1:, : n + 1] = self.coeffs
        else:
            out[: n + 1, 1:] = self.coeffs
        return Jet2(out, self.base_point)

    def __repr__(self) -> str:
        return f"Jet2(order={self.order}, base_point={self.base_point}, value={self.value:.6g})"


# =============================================================================
# Vectors of jets
# =============================================================================


class JetVec3:
    """Three Jet2 components sharing base point and order."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Jet2]):
        if len(components) != 3:
            raise ValueError("JetVec3 needs exactly three components")
        base = components[0].base_point
        if any(c.base_point != base for c in components):
            raise ValueError("JetVec3 components expanded at different base points")
        n = min(c.order for c in components)
        self.components = tuple(c.truncate(n) for c in components)

    @property
    def x(self) -> Jet2:
        return self.components[0]

    @property
    def y(self) -> Jet2:
        return self.components[1]

    @property
    def z(self) -> Jet2:
        return self.components[2]

    @property
    def order(self) -> int:
        return self.components[0].order

    @property
    def base_point(self) -> tuple[float, float]:
        return self.components[0].base_point

    @property
    def value(self) -> np.ndarray:
        return np.array([c.value for c in self.components])

    def partial(self, i: int, j: int) -> np.ndarray:
        return np.array([partial(c, i, j) for c in self.components])

    def evaluate(self, u: float, v: float) -> np.ndarray:
        return np.array([c.evaluate(u, v) for c in self.components])

    def max_abs(self) -> float:
        return max(c.max_abs() for c in self.components)

    def scale(self) -> float:
        return max(c.scale() for c in self.components)

    def truncate(self, order: int) -> JetVec3:
        return JetVec3([c.truncate(order) for c in self.components])

    def __add__(self, other: JetVec3) -> JetVec3:
        return JetVec3([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: JetVec3) -> JetVec3:
        return JetVec3([a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> JetVec3:
        return JetVec3([-c for c in self.components])

    def __mul__(self, factor: Jet2 | float) -> JetVec3:
        return JetVec3([c * factor for c in self.components])

    __rmul__ = __mul__

    def __truediv__(self, factor: Jet2 | float) -> JetVec3:
        if isinstance(factor, Jet2):
            factor = factor.reciprocal()
            return JetVec3([c * factor for c in self.components])
        return JetVec3([c / factor for c in self.components])

    def dot(self, other: JetVec3) -> Jet2:
        a, b = self.components, other.components
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]

    def cross(self, other: JetVec3) -> JetVec3:
        a, b = self.components, other.components
        return JetVec3(
            [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ]
        )

    def norm(self) -> Jet2:
        return self.dot(self).sqrt()

    def normalized(self) -> JetVec3:
        return self / self.norm()

    def diff_u(self) -> JetVec3:
        return JetVec3([c.diff_u() for c in self.components])

    def diff_v(self) -> JetVec3:
        return JetVec3([c.diff_v() for c in self.components])

    def divide_by_coordinate(self, axis: Axis, eps: float = DEFAULT_EPS) -> JetVec3:
        return JetVec3([divide_by_coordinate(c, axis, eps) for c in self.components])

    def __repr__(self) -> str:
        return f"JetVec3(order={self.order}, base_point={self.base_point}, value={self.value.tolist()})"


def det3(a: JetVec3, b: JetVec3, c: JetVec3) -> Jet2:
    """det(a, b, c) = <a, b x c> as a jet."""
    return a.dot(b.cross(c))


# =============================================================================
# Operations
# =============================================================================


def jet_arith(a: Jet2, b: Jet2, op: Literal["add", "sub", "mul", "div"], eps: float = DEFAULT_EPS) -> Jet2:
    """Truncated series of a (op) b; division is series inversion of b."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a * b.reciprocal(eps)
    raise ValueError(f"unknown jet operation {op!r}")


def jet_sqrt(a: Jet2, eps: float = DEFAULT_EPS) -> Jet2:
    """Series s with s*s = a up to the truncation order."""
    return a.sqrt(eps)


def divide_by_coordinate(a: Jet2, axis: Axis, eps: float = DEFAULT_EPS) -> Jet2:
    """
    Smooth division of a by (v - v0) (or (u - u0)).

    Every coefficient with exponent zero on the chosen axis must vanish
    relative to the largest coefficient; the quotient has order N - 1.
    """
    n = a.order
    if n == 0:
        raise OrderExceeded("cannot divide an order-0 jet", "divide_by_coordinate")
    c = a.coeffs
    threshold = eps * a.scale()
    edge = c[:, 0] if axis == "v" else c[0, :]
    worst = float(np.max(np.abs(edge)))
    if worst >= threshold:
        raise NotDivisible(
            f"jet does not vanish on {axis} = {axis}0 (largest residue {worst:.3e})",
            "divide_by_coordinate",
            axis=axis,
            residue=worst,
        )
    if axis == "v":
        return Jet2(c[:n, 1:], a.base_point)
    return Jet2(c[1:, :n], a.base_point)


def partial(a: Jet2, i: int, j: int) -> float:
    """The mixed partial d^(i+j) a / du^i dv^j at the base point."""
    if i < 0 or j < 0 or i + j > a.order:
        raise OrderExceeded(
            f"partial ({i}, {j}) exceeds jet order {a.order}", "partial", i=i, j=j, order=a.order
        )
    return factorial(i) * factorial(j) * float(a.coeffs[i, j])
