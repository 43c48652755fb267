"""Special-function kernel: Bessel J of real order, its positive zeros, Gamma.

Everything here works on plain Python floats. Three regimes are used for
J_nu(x):

* ascending power series when x is small or small against the order,
* Miller backward recurrence normalised by the Neumann-type sum
  (x/2)^v = sum_k (v+2k) Gamma(v+k)/k! J_{v+2k}(x) for the middle range,
* the Hankel asymptotic expansion for the fractional base order followed by
  forward recurrence when x is large and exceeds the order.
"""

import math

from .exceptions import ConvergenceError, DimensionError, DomainError

__all__ = [
    "B0",
    "B1",
    "C1",
    "C2",
    "bessel_j",
    "bessel_j_pair",
    "bessel_j_derivative",
    "bessel_zero",
    "bessel_zeros",
    "bessel_zeros_below",
    "gamma",
    "log_gamma",
    "unit_ball_volume",
    "semiclassical_constant",
]

# Airy-type constants from Abramowitz & Stegun 9.5.14-9.5.16, kept at the
# printed 7-8 digits. They only feed the asymptotic-expansion checks.
B0 = 1.1131028
B1 = 1.484606
C1 = 1.8557571
C2 = 1.033150

_EPS = 2.220446049250313e-16
_HANKEL_MIN_X = 25.0
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Lanczos approximation, g = 7, n = 9 (Godfrey's coefficient set).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _lanczos_sum(z):
    # z is the shifted argument x - 1
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    return acc


def gamma(x: float) -> float:
    """Gamma function for x > 0.

    Integers up to 23 are returned exactly from the factorial, everything
    else goes through the Lanczos sum (with the reflection formula below 1/2).
    """
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"gamma requires a finite x > 0, got {x!r}")
    if x == math.floor(x) and x <= 23.0:
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        # Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    a = _lanczos_sum(z)
    if x < 140.0:
        return _SQRT_2PI * t ** (z + 0.5) * math.exp(-t) * a
    # split the power to postpone overflow
    half = t ** ((z + 0.5) / 2.0)
    return _SQRT_2PI * half * (half * math.exp(-t)) * a


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"log_gamma requires a finite x > 0, got {x!r}")
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    if x < 30.0:
        return math.log(gamma(x))
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


def _check_order(nu):
    nu = float(nu)
    if not nu >= -0.5 or math.isinf(nu):
        raise DomainError(f"Bessel order must be >= -1/2, got {nu!r}")
    return nu


def _series(nu, x):
    """Ascending series; accurate when x^2 is not large against nu + 1."""
    if nu == 0.0 or (nu > 0 and nu == math.floor(nu) and nu < 100):
        pref = (0.5 * x) ** nu / math.factorial(int(nu))
    else:
        pref = math.exp(nu * math.log(0.5 * x) - log_gamma(nu + 1.0))
    q = -0.25 * x * x
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        term *= q / (k * (nu + k))
        total += term
        if abs(term) <= 1e-17 * abs(total) and k > 2:
            break
        if k > 500:
            raise ConvergenceError(f"power series for J_{nu}({x}) did not converge")
    return pref * total


def _hankel(nu, x):
    """Hankel asymptotic expansion; only used for x >= 25 and nu < 2."""
    mu = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    term = 1.0
    k = 0
    last = math.inf
    while True:
        k += 1
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        mag = abs(term)
        if mag > last or mag < 1e-18:
            break
        last = mag
        # terms alternate between Q (odd k) and P (even k), with sign (-1)^floor(k/2)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q += sign * term
        else:
            p += sign * term
    phase = (0.5 * nu + 0.25) * math.pi
    cos_chi = math.cos(x) * math.cos(phase) + math.sin(x) * math.sin(phase)
    sin_chi = math.sin(x) * math.cos(phase) - math.cos(x) * math.sin(phase)
    return math.sqrt(2.0 / (math.pi * x)) * (p * cos_chi - q * sin_chi)


def _base_order(nu):
    # fractional base order in [0, 1), or nu itself on [-1/2, 0)
    if nu < 0.0:
        return nu, 0
    steps = int(math.floor(nu))
    return nu - steps, steps


def _forward(nu, x):
    """Hankel for the base orders, then forward recurrence up to nu + 1."""
    nu0, steps = _base_order(nu)
    j_lo = _hankel(nu0, x)
    j_hi = _hankel(nu0 + 1.0, x)
    order = nu0 + 1.0
    for _ in range(steps):
        j_lo, j_hi = j_hi, (2.0 * order / x) * j_hi - j_lo
        order += 1.0
    return j_lo, j_hi


def _miller(nu, x):
    """Backward recurrence from a high start order, normalised at the base order."""
    nu0, steps = _base_order(nu)
    top = max(x, nu + 1.0)
    extra = int(20.0 + 3.0 * top ** (1.0 / 3.0) + 0.5 * math.sqrt(top) + 15.0)
    start = int(math.ceil(max(x, nu + 1.0) - nu0)) + extra
    if start % 2:
        start += 1
    # f[m] is proportional to J_{nu0 + m}
    f_next = 0.0
    f_cur = 1e-280
    vals = [0.0] * (start + 2)
    vals[start] = f_cur
    for m in range(start, 0, -1):
        order = nu0 + m
        f_prev = (2.0 * order / x) * f_cur - f_next
        f_next, f_cur = f_cur, f_prev
        vals[m - 1] = f_cur
        if abs(f_cur) > 1e250:
            for i in range(m - 1, start + 1):
                vals[i] *= 1e-250
            f_cur *= 1e-250
            f_next *= 1e-250
    # normalisation: (x/2)^nu0 / Gamma(nu0+1) = sum_k c_k J_{nu0+2k}
    coef = 1.0
    acc = vals[0]
    for k in range(1, start // 2 + 1):
        if k == 1:
            coef = nu0 + 2.0
        else:
            coef *= (nu0 + 2.0 * k) * (nu0 + k - 1.0) / ((nu0 + 2.0 * k - 2.0) * k)
        acc += coef * vals[2 * k]
    target = math.exp(nu0 * math.log(0.5 * x) - log_gamma(nu0 + 1.0)) if nu0 != 0.0 else 1.0
    scale = target / acc
    return vals[steps] * scale, vals[steps + 1] * scale


def _pair(nu, x):
    if x == 0.0:
        return (1.0 if nu == 0.0 else 0.0), 0.0
    if x <= 2.0 or x * x <= nu + 1.0:
        return _series(nu, x), _series(nu + 1.0, x)
    if x >= _HANKEL_MIN_X and nu + 1.0 <= 0.5 * x:
        return _forward(nu, x)
    return _miller(nu, x)


def bessel_j_pair(nu: float, x: float) -> tuple[float, float]:
    """Return ``(J_nu(x), J_{nu+1}(x))`` from a single evaluation."""
    nu = _check_order(nu)
    x = float(x)
    if not x >= 0.0 or math.isinf(x):
        raise DomainError(f"Bessel argument must be a finite x >= 0, got {x!r}")
    return _pair(nu, x)


def bessel_j(nu: float, x: float) -> float:
    """Bessel function of the first kind J_nu(x) for nu >= -1/2, x >= 0.

    Parameters
    ----------
    nu : float
        Order, ``nu >= -1/2``.
    x : float
        Argument, ``x >= 0``.

    Returns
    -------
    float
        J_nu(x), to about 1e-13 absolute on 0 <= x <= 100, 0 <= nu <= 10.
    """
    return bessel_j_pair(nu, x)[0]


def bessel_j_derivative(nu: float, x: float) -> float:
    """J_nu'(x) via J_nu' = (nu/x) J_nu - J_{nu+1}."""
    j, j1 = bessel_j_pair(nu, x)
    if x == 0.0:
        if nu == 0.0:
            return 0.0
        if nu == 1.0:
            return 0.5
        raise DomainError("J_nu'(0) is singular or zero; not needed here")
    return (nu / x) * j - j1


def _mcmahon(nu, p):
    """McMahon large-zero expansion and the magnitude of its first omitted term."""
    mu = 4.0 * nu * nu
    beta = (p + 0.5 * nu - 0.25) * math.pi
    b8 = 8.0 * beta
    t1 = (mu - 1.0) / b8
    t2 = 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 ** 3)
    t3 = 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8 ** 5)
    t4 = (
        64.0 * (mu - 1.0)
        * (6949.0 * mu ** 3 - 153855.0 * mu ** 2 + 1585743.0 * mu - 6277237.0)
        / (105.0 * b8 ** 7)
    )
    return beta - t1 - t2 - t3 - t4, abs(t4), abs(t1)


def _refine(nu, lo, hi, guess, tol=4e-16):
    """Safeguarded Newton inside a sign-change bracket [lo, hi]."""
    f_lo = bessel_j(nu, lo)
    f_hi = bessel_j(nu, hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise ConvergenceError(f"no sign change for J_{nu} on [{lo}, {hi}]")
    x = guess if lo < guess < hi else 0.5 * (lo + hi)
    for _ in range(100):
        j, j1 = _pair(nu, x)
        if j == 0.0:
            return x
        if (j > 0) == (f_lo > 0):
            lo, f_lo = x, j
        else:
            hi = x
        deriv = (nu / x) * j - j1
        step = j / deriv if deriv != 0.0 else math.inf
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
            step = x - x_new
        if abs(step) <= tol * max(1.0, abs(x_new)) or hi - lo <= tol * max(1.0, abs(lo)):
            return x_new
        x = x_new
    raise ConvergenceError(f"Newton iteration for a zero of J_{nu} did not converge")


def _first_zero(nu):
    # j_{nu,1} > sqrt(nu (nu + 2)) for nu >= 0 and >= pi/2 for nu in [-1/2, 0);
    # consecutive zeros are more than 2.5 apart, so unit steps cannot skip one.
    start = math.sqrt(nu * (nu + 2.0)) if nu > 0 else 1.5
    start = max(start, 1.5)
    a = start
    fa = bessel_j(nu, a)
    for _ in range(100000):
        b = a + 1.0
        fb = bessel_j(nu, b)
        if fa == 0.0:
            return a
        if (fa > 0) != (fb > 0) or fb == 0.0:
            guess, _, _ = _mcmahon(nu, 1)
            return _refine(nu, a, b, guess)
        a, fa = b, fb
    raise ConvergenceError(f"could not bracket the first zero of J_{nu}")


def _next_zero_bracket(nu, prev):
    # Sturm comparison for u = sqrt(x) J_nu(x), u'' + (1 - (nu^2 - 1/4)/x^2) u = 0
    q = 1.0 - (nu * nu - 0.25) / (prev * prev)
    if nu > 0.5:
        lo, hi = prev + math.pi, prev + math.pi / math.sqrt(q)
    elif nu < 0.5:
        lo, hi = prev + math.pi / math.sqrt(q), prev + math.pi
    else:
        lo = hi = prev + math.pi
    pad = 1e-6 * (1.0 + hi - lo) + 1e-9 * prev
    return lo - pad, hi + pad


def _zero_sequence(nu):
    """Generator over j_{nu,1}, j_{nu,2}, ... computed one after another."""
    z = _first_zero(nu)
    yield z
    while True:
        lo, hi = _next_zero_bracket(nu, z)
        z = _refine(nu, lo, hi, 0.5 * (lo + hi))
        yield z


def bessel_zero(nu: float, p: int) -> float:
    """p-th positive zero j_{nu,p} of J_nu.

    Large zeros are seeded from McMahon's expansion and solved locally; small
    ones are walked up from the first zero, each bracketed by Sturm
    comparison bounds on the gap to the previous zero.

    Raises
    ------
    ConvergenceError
        If no sign change is found in a bracket that must contain the zero.
    """
    nu = _check_order(nu)
    if int(p) != p or p < 1:
        raise DomainError(f"zero index must be a positive integer, got {p!r}")
    p = int(p)
    if nu == 0.5:
        # closed form J_{1/2}(x) = sqrt(2/(pi x)) sin x
        return p * math.pi
    guess, omitted, first = _mcmahon(nu, p)
    if p > 1 and omitted < 1e-3 and first < 0.25:
        try:
            return _refine(nu, guess - 0.5, guess + 0.5, guess)
        except ConvergenceError:
            pass
    for i, z in enumerate(_zero_sequence(nu), start=1):
        if i == p:
            return z
    raise AssertionError("unreachable")


def bessel_zeros(nu: float, count: int) -> list[float]:
    """First ``count`` positive zeros of J_nu, in increasing order."""
    nu = _check_order(nu)
    out = []
    if count <= 0:
        return out
    for z in _zero_sequence(nu):
        out.append(z)
        if len(out) == count:
            return out
    return out


def bessel_zeros_below(nu: float, xmax: float) -> list[float]:
    """All positive zeros of J_nu that are <= xmax."""
    nu = _check_order(nu)
    out = []
    lower = math.sqrt(nu * (nu + 2.0)) if nu > 0 else 0.0
    if xmax <= lower:
        return out
    for z in _zero_sequence(nu):
        if z > xmax:
            break
        out.append(z)
    return out


def _check_dim(n):
    if int(n) != n or n < 2:
        raise DimensionError(f"dimension must be an integer >= 2, got {n!r}")
    return int(n)


def unit_ball_volume(n: int) -> float:
    """Volume C_n = pi^{n/2} / Gamma(n/2 + 1) of the unit n-ball."""
    n = _check_dim(n)
    if n > 300:
        return math.exp(0.5 * n * math.log(math.pi) - log_gamma(0.5 * n + 1.0))
    return math.pi ** (0.5 * n) / gamma(0.5 * n + 1.0)


def semiclassical_constant(n: int) -> float:
    """Weyl constant L_n^cl = C_n / (2 pi)^n."""
    n = _check_dim(n)
    return unit_ball_volume(n) / (2.0 * math.pi) ** n
