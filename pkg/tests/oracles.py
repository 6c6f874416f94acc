"""Independent high-precision reference values (mpmath)."""
import mpmath as mp

mp.mp.dps = 30


def j0(x):
    return float(mp.besselj(0, x))


def y0(x):
    return float(mp.bessely(0, x))


def e1(x):
    return float(mp.e1(x))


def sqrt_principal(z):
    return mp.sqrt(z)


def green_t2(x1, x2, k1, k2, tail=80.0):
    """Eq. gz2 by adaptive quadrature, integrated far past the E1(14) truncation."""
    k1, k2, x1, x2 = map(mp.mpf, (k1, k2, x1, x2))

    def f(t):
        s = mp.sqrt(t * t + 2 * t * k2 + k1 * k1)
        return mp.exp(-x2 * t - 1j * x1 * s) / s

    upper = tail / x2
    I = mp.quad(f, mp.linspace(0, upper, 40))
    return complex(mp.exp(-1j * x1 * k1) * mp.re(I) / (2 * mp.pi))


def green_t1(x1, x2, k1, k2, energy=1.0, upper=80.0):
    """Eq. gz1 by adaptive quadrature with breakpoints around t = sqrt(E)."""
    k1, k2, x1, x2 = map(mp.mpf, (k1, k2, x1, x2))
    e = mp.mpf(energy)
    root = mp.sqrt(e)

    def f(t):
        sa = mp.sqrt(t * t + 2j * t * k2 - k1 * k1)
        return mp.exp(1j * x2 * t - x1 * sa) / sa

    pts = sorted({mp.mpf(0), root - mp.mpf("0.1"), root - k2, root, root + k2,
                  root + mp.mpf("0.1")} | {mp.mpf(v) for v in (2, 4, 8, 16, 32)})
    pts = [p for p in pts if p >= 0] + [mp.mpf(upper) / x1]
    I = mp.quad(f, pts)
    return complex(mp.exp(-1j * x1 * k1) * mp.re(I) / (2 * mp.pi))


def upper_limit_t1(x1, k1, k2, energy=1.0):
    t = 2 * abs(mp.mpf(k1))
    a = (t + 1j * mp.mpf(k2)) ** 2 - energy
    c1 = mp.cos(mp.arg(mp.sqrt(a)))
    return float(max(14 * mp.mpf(2) ** 0.25 / (x1 * c1), t)), float(c1)
