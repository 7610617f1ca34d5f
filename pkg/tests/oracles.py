"""Independent reference computations used by the tests.

Nothing here imports the package's numerics; brute force is the point.
"""
import numpy as np

# Frozen values. Each was produced by the brute-force routine named beside it.
RIEMANN_QUARTER_ROOT = 0.8995658832114335  # midpoint(((1-t)^2+t^2)^(1/4), 10**6)
MERCER_H_SQRT = {"lhs": 9.0, "rhs": 21.661406724982257}  # f=t^2, h=sqrt, xs=(1,2,4)
MERCER_LEMMA_SQRT_RHS = 19.69539645199498  # f=t^2, h=sqrt, (x,y,z)=(1,4,2), by hand


def midpoint_rule(g, n=10**6):
    t = (np.arange(n) + 0.5) / n
    return float(np.mean(g(t)))


def poly_integral01(coeffs):
    """Exact integral over [0, 1] of sum c_k t^k."""
    return float(sum(c / (k + 1) for k, c in enumerate(coeffs)))


def hh_norm_1d(x, y, p):
    """Closed form of int_0^1 |(1-t)x + ty|^p dt for scalars x != y."""
    F = lambda u: np.sign(u) * abs(u) ** (p + 1) / (p + 1)
    return float((F(y) - F(x)) / (y - x))


def chord(phi, m, M):
    pm, pM = float(phi(m)), float(phi(M))
    return (pM - pm) / (M - m), (M * pm - m * pM) / (M - m)


def brute_beta(f, g, h, alpha, m, M, n=100_001):
    """max over an n-point grid of the complementary-Jensen maximand."""
    mu_f, nu_f = chord(f, m, M)
    mu_h, nu_h = chord(h, 0.0, 1.0)
    t = np.linspace(m, M, n)
    psi = mu_h * (mu_f * t + nu_f) + nu_h * (f(m) + f(M)) - alpha * g(t)
    k = int(np.argmax(psi))
    return float(psi[k]), float(t[k])


def min_gap(lhs, rhs):
    return float(np.linalg.eigvalsh(np.asarray(rhs) - np.asarray(lhs))[0])


def square_via_product(a):
    a = np.asarray(a)
    return a @ a


def random_unitary(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))
