"""Gauss and Appell hypergeometric kernels with real-axis continuation.

The closed-form pressure relations need three evaluation regimes:

* ``gauss_2f1`` for real argument ``z < 1`` (direct series, the Pfaff map
  for ``z < 0``, and the ``1 - z`` connection near the upper endpoint);
* ``gauss_2f1_continued`` for ``z > 1``, where the function is complex and
  the two limits onto the branch cut are conjugates of each other;
* ``appell_f1`` for the two-variable series, including the classical
  boundary reduction at ``x = 1`` to a gamma ratio times a single Gauss
  function of ``y``.

Degenerate parameter combinations (poles of the gamma factors, vanishing
series denominators) raise :class:`DegenerateParameterError` so that flow
solvers can fall back to quadrature.
"""

import math
from dataclasses import dataclass

from ._kernels import MAX_TERMS, gauss_series
from .errors import ConvergenceError, DegenerateParameterError, DomainError

__all__ = [
    "ComplexValue",
    "EvaluationReport",
    "arccosh",
    "appell_f1",
    "gauss_2f1",
    "gauss_2f1_continued",
]

# Parameters closer than this to a non-positive integer are treated as
# degenerate: beyond it the connection coefficients lose fewer than ~7
# digits to cancellation, inside it the quadrature fallback takes over.
INTEGER_WINDOW = 1e-9

# Direct-series cutoff; above it the 1-z connection converges much faster.
_NEAR_ONE = 0.9

BRANCH_ABOVE = "above"
BRANCH_BELOW = "below"


@dataclass(frozen=True)
class ComplexValue:
    """Real/imaginary pair for continued hypergeometric values."""

    re: float
    im: float = 0.0

    def conjugate(self) -> "ComplexValue":
        return ComplexValue(self.re, -self.im)

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class EvaluationReport:
    """Diagnostics attached to a kernel evaluation."""

    value: ComplexValue
    terms_used: int
    converged: bool
    degenerate_parameters: bool = False

    def summary(self) -> str:
        state = "converged" if self.converged else "failed"
        if self.degenerate_parameters:
            state = "degenerate"
        return f"{state} after {self.terms_used} series terms"


def _is_int(x: float) -> bool:
    return abs(x - round(x)) <= INTEGER_WINDOW


def _is_nonpos_int(x: float) -> bool:
    return x <= 0.5 and _is_int(x)


def _rgamma(x: float) -> float:
    """1/Gamma(x); exactly zero at the poles."""
    if _is_nonpos_int(x):
        return 0.0
    return 1.0 / math.gamma(x)


def _is_exact_nonpos_int(x: float) -> bool:
    return x <= 0.0 and x == round(x)


def _terminates(a: float, b: float, c: float) -> bool:
    """True when the series is a polynomial despite any pole of ``c``.

    An exactly non-positive-integer ``a`` or ``b`` truncates the series at
    ``k = -a`` (or ``-b``); the truncation must happen before ``(c)_k``
    vanishes.  Exactness matters: a parameter merely close to an integer
    leaves a tiny tail that still diverges for ``|z| > 1``, so the window
    used for pole detection must not be applied here.
    """
    uppers = [round(p) for p in (a, b) if _is_exact_nonpos_int(p)]
    if not uppers:
        return False
    k_max = -max(uppers)
    if _is_nonpos_int(c) and -round(c) < k_max:
        return False
    return True


def _finite_or_raise(value: float, context: str) -> float:
    if not math.isfinite(value):
        raise ConvergenceError(f"{context} produced a non-finite value")
    return value


def _series_checked(a, b, c, z, context):
    value, terms, ok = gauss_series(a, b, c, z)
    if not ok:
        raise ConvergenceError(
            f"{context}: series for (a={a}, b={b}, c={c}) at z={z} did not "
            f"converge within {MAX_TERMS} terms",
            best_estimate=value,
        )
    return _finite_or_raise(value, context), terms


def arccosh(t: float) -> float:
    """Inverse hyperbolic cosine, ``log(t + sqrt(t^2 - 1))`` for ``t >= 1``."""
    if t < 1.0:
        raise DomainError(f"arccosh requires t >= 1, got {t}")
    return math.acosh(t)


def gauss_2f1(a: float, b: float, c: float, z: float, full_output: bool = False):
    """Gauss hypergeometric function for real argument ``z < 1``.

    Negative arguments are mapped into (0, 1) by the Pfaff transformation
    applied to the larger upper parameter; arguments above 0.9 use the
    ``1 - z`` linear connection when ``c - a - b`` is not an integer.

    Raises
    ------
    DomainError
        If ``z >= 1`` (use :func:`gauss_2f1_continued` past the cut).
    DegenerateParameterError
        If ``c`` is a non-positive integer and the series does not
        terminate first.
    ConvergenceError
        If no route converges within the term cap.
    """
    if z >= 1.0:
        raise DomainError(f"gauss_2f1 requires z < 1, got {z}")
    terminating = _terminates(a, b, c)
    if _is_nonpos_int(c) and not terminating:
        report = EvaluationReport(ComplexValue(math.nan), 0, False, True)
        raise DegenerateParameterError(
            f"gauss_2f1 is undefined for non-positive integer c={c}", report
        )

    if z == 0.0:
        value, terms = 1.0, 0
    elif terminating or 0.0 < z <= _NEAR_ONE:
        value, terms = _series_checked(a, b, c, z, "gauss_2f1")
    elif z < 0.0:
        w = z / (z - 1.0)
        if b > a:
            inner, terms = _series_checked(a, c - b, c, w, "gauss_2f1 (Pfaff)")
            value = (1.0 - z) ** (-a) * inner
        else:
            inner, terms = _series_checked(c - a, b, c, w, "gauss_2f1 (Pfaff)")
            value = (1.0 - z) ** (-b) * inner
    else:
        # 0.9 < z < 1
        s = c - a - b
        if _is_int(s):
            # Logarithmic case: no linear connection, push the series.
            value, terms = _series_checked(a, b, c, z, "gauss_2f1 (near 1)")
        else:
            w = 1.0 - z
            coef1 = math.gamma(c) * math.gamma(s) * _rgamma(c - a) * _rgamma(c - b)
            coef2 = math.gamma(c) * math.gamma(-s) * _rgamma(a) * _rgamma(b)
            v1, t1 = _series_checked(a, b, 1.0 - s, w, "gauss_2f1 (1-z)")
            v2, t2 = _series_checked(c - a, c - b, 1.0 + s, w, "gauss_2f1 (1-z)")
            value = coef1 * v1 + coef2 * w**s * v2
            terms = t1 + t2
    value = _finite_or_raise(value, "gauss_2f1")
    if full_output:
        return value, EvaluationReport(ComplexValue(value), terms, True)
    return value


def _branch_sign(branch: str) -> float:
    """Sign of the imaginary part of ``log(1 - z)`` on the chosen side.

    Approaching ``z > 1`` from above puts ``1 - z`` just below the negative
    real axis, so ``arg(1 - z) -> -pi``; from below, ``+pi``.
    """
    if branch == BRANCH_ABOVE:
        return -1.0
    if branch == BRANCH_BELOW:
        return 1.0
    raise DomainError(f"branch must be 'above' or 'below', got {branch!r}")


def _continued_arg_1m1z(a, b, c, z, sign):
    """Connection in powers of ``1 - 1/z``; needs ``c - a - b`` non-integer."""
    s = c - a - b
    w = 1.0 - 1.0 / z
    coef1 = math.gamma(c) * math.gamma(s) * _rgamma(c - a) * _rgamma(c - b)
    coef2 = math.gamma(c) * math.gamma(-s) * _rgamma(a) * _rgamma(b)
    v1, t1 = _series_checked(a, a - c + 1.0, 1.0 - s, w, "continuation (1-1/z)")
    v2, t2 = _series_checked(c - a, 1.0 - a, 1.0 + s, w, "continuation (1-1/z)")
    # (1 - z)^s = (z - 1)^s * exp(i*pi*s*sign)
    mag = (z - 1.0) ** s * z ** (a - c) * coef2 * v2
    re = coef1 * z ** (-a) * v1 + mag * math.cos(math.pi * s)
    im = mag * math.sin(math.pi * s) * sign
    return re, im, t1 + t2


def _continued_arg_1z(a, b, c, z, sign):
    """Connection in powers of ``1/z``; needs ``b - a`` non-integer."""
    u = 1.0 / z
    coef1 = math.gamma(c) * math.gamma(b - a) * _rgamma(b) * _rgamma(c - a)
    coef2 = math.gamma(c) * math.gamma(a - b) * _rgamma(a) * _rgamma(c - b)
    v1, t1 = _series_checked(a, 1.0 - c + a, 1.0 - b + a, u, "continuation (1/z)")
    v2, t2 = _series_checked(b, 1.0 - c + b, 1.0 - a + b, u, "continuation (1/z)")
    # (-z)^(-p) = z^(-p) * exp(-i*pi*p*sign)
    m1 = coef1 * z ** (-a) * v1
    m2 = coef2 * z ** (-b) * v2
    re = m1 * math.cos(math.pi * a) + m2 * math.cos(math.pi * b)
    im = -sign * (m1 * math.sin(math.pi * a) + m2 * math.sin(math.pi * b))
    return re, im, t1 + t2


def gauss_2f1_continued(a: float, b: float, c: float, z: float,
                        branch: str = BRANCH_ABOVE, full_output: bool = False):
    """Gauss hypergeometric function continued onto the cut ``z > 1``.

    ``branch`` selects the limit ``z + i0`` ("above") or ``z - i0``
    ("below"); the two results are complex conjugates.  The continuation
    uses the linear connection in ``1 - 1/z`` when ``c - a - b`` is not an
    integer and the ``1/z`` connection when ``b - a`` is not; if both
    differences are integers the parameters are degenerate here and the
    caller must integrate numerically.
    """
    sign = _branch_sign(branch)
    if z <= 1.0:
        raise DomainError(f"gauss_2f1_continued requires z > 1, got {z}")
    if _terminates(a, b, c):
        value, terms = _series_checked(a, b, c, z, "gauss_2f1_continued")
        result = ComplexValue(value, 0.0)
        if full_output:
            return result, EvaluationReport(result, terms, True)
        return result
    if _is_nonpos_int(c):
        report = EvaluationReport(ComplexValue(math.nan), 0, False, True)
        raise DegenerateParameterError(
            f"gauss_2f1_continued is undefined for non-positive integer c={c}",
            report,
        )

    routes = []
    if not _is_int(c - a - b):
        routes.append(_continued_arg_1m1z)
    if not _is_int(b - a):
        routes.append(_continued_arg_1z)
        if z > 2.0:
            # 1/z is the smaller expansion variable past z = 2.
            routes.reverse()
    if not routes:
        report = EvaluationReport(ComplexValue(math.nan), 0, False, True)
        raise DegenerateParameterError(
            "no continuation route: both c-a-b and b-a are integers "
            f"(a={a}, b={b}, c={c})",
            report,
        )

    last_error = None
    for route in routes:
        try:
            re, im, terms = route(a, b, c, z, sign)
        except ConvergenceError as exc:
            last_error = exc
            continue
        result = ComplexValue(
            _finite_or_raise(re, "gauss_2f1_continued"),
            _finite_or_raise(im, "gauss_2f1_continued"),
        )
        if full_output:
            return result, EvaluationReport(result, terms, True)
        return result
    raise last_error


def _appell_series(a, b1, b2, c, x, y):
    """Single-index expansion of the double series.

    Sums over the ``x`` index with a fresh Gauss series in ``y`` per term;
    this keeps the implementation distinct from the naive double loop used
    as the independent oracle in the tests.
    """
    coeff = 1.0
    total = 0.0
    terms = 0
    consec = 0
    for m in range(MAX_TERMS):
        inner, t = _series_checked(a + m, b2, c + m, y, "appell_f1 (inner)")
        term = coeff * inner
        total += term
        terms += t + 1
        if abs(term) <= 1e-16 * max(abs(total), 1e-300):
            consec += 1
            if consec >= 3:
                return total, terms
        else:
            consec = 0
        coeff *= (a + m) * (b1 + m) / ((c + m) * (m + 1.0)) * x
    raise ConvergenceError(
        f"appell_f1 double series did not converge within {MAX_TERMS} outer terms",
        best_estimate=total,
    )


def appell_f1(a: float, b1: float, b2: float, c: float, x: float, y: float,
              branch: str = BRANCH_ABOVE, full_output: bool = False):
    """Appell hypergeometric function of two real arguments.

    Supported domains:

    * ``|x| < 1`` and ``|y| < 1``: the convergent double series;
    * ``x = 1`` with ``c - a - b1 > 0``: the classical boundary reduction
      to ``Gamma(c)Gamma(c-a-b1) / (Gamma(c-a)Gamma(c-b1)) *
      gauss_2f1(a, b2; c-b1; y)``, with ``y > 1`` handled by continuation
      on the selected ``branch``.

    The value is returned as a :class:`ComplexValue`; inside the polydisc
    its imaginary part is zero.
    """
    # (c)_{m+n} vanishing is fatal unless (a)_{m+n} truncates the double
    # series first.
    if _is_nonpos_int(c) and not (_is_exact_nonpos_int(a) and round(c) <= round(a)):
        report = EvaluationReport(ComplexValue(math.nan), 0, False, True)
        raise DegenerateParameterError(
            f"appell_f1 is undefined for non-positive integer c={c}", report
        )

    if b2 == 0.0 and abs(x) < 1.0:
        value, rep = gauss_2f1(a, b1, c, x, full_output=True)
        result = ComplexValue(value)
        return (result, rep) if full_output else result
    if b1 == 0.0 and abs(y) < 1.0:
        value, rep = gauss_2f1(a, b2, c, y, full_output=True)
        result = ComplexValue(value)
        return (result, rep) if full_output else result

    if x == 1.0:
        s = c - a - b1
        if s <= 0.0:
            raise DomainError(
                f"appell_f1 boundary x=1 requires c - a - b1 > 0, got {s}"
            )
        if _is_nonpos_int(c) or _is_nonpos_int(c - a) or _is_nonpos_int(c - b1):
            report = EvaluationReport(ComplexValue(math.nan), 0, False, True)
            raise DegenerateParameterError(
                "appell_f1 boundary reduction hits a gamma pole "
                f"(c-a={c - a}, c-b1={c - b1})",
                report,
            )
        coef = (math.gamma(c) * math.gamma(s)
                * _rgamma(c - a) * _rgamma(c - b1))
        if y < 1.0:
            inner, rep = gauss_2f1(a, b2, c - b1, y, full_output=True)
            result = ComplexValue(coef * inner)
            terms = rep.terms_used
        elif y == 1.0:
            raise DomainError("appell_f1 corner x = y = 1 is not supported")
        else:
            inner, rep = gauss_2f1_continued(a, b2, c - b1, y, branch,
                                             full_output=True)
            result = ComplexValue(coef * inner.re, coef * inner.im)
            terms = rep.terms_used
        _finite_or_raise(result.re, "appell_f1")
        _finite_or_raise(result.im, "appell_f1")
        if full_output:
            return result, EvaluationReport(result, terms, True)
        return result

    if abs(x) < 1.0 and abs(y) < 1.0:
        value, terms = _appell_series(a, b1, b2, c, x, y)
        result = ComplexValue(_finite_or_raise(value, "appell_f1"))
        if full_output:
            return result, EvaluationReport(result, terms, True)
        return result

    raise DomainError(
        f"appell_f1 arguments (x={x}, y={y}) outside the supported domain: "
        "|x| < 1 and |y| < 1, or x = 1 exactly"
    )
