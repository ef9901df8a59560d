"""Closed-form focal-value polynomials used as ground truth.

``UPSILON1`` and ``UPSILON2`` are the numerators of the third and fifth
Lyapunov constants at the unit equilibrium as functions of ``(K, b)``;
``F1`` and ``G1`` are the numerators of the third constants at the first and
third equilibria of the ``(alpha, beta)`` family; ``H1`` and ``H2`` are the
coefficients of the pseudo-remainder of ``F1`` by ``PHI``. The strings use
the expression grammar of :func:`leslie_hopf.algebra.parse`.
"""
from functools import lru_cache

from ..algebra import parse

UPSILON1_TEXT = (
    "6*K^2*b^3 - K*b^4 - 4*K^2*b^2 - 15*K*b^3 + 6*K^2*b - 3*K*b^2 + b^3 - 21*K*b - 3*b^2 "
    "+ 15*b + 3"
)

UPSILON2_TEXT = (
    "220*K^6*b^7 - 152*K^5*b^8 + 21*K^4*b^9 + 2622*K^6*b^6 - 3413*K^5*b^7 + 1184*K^4*b^8 "
    "- 91*K^3*b^9 - 5534*K^6*b^5 - 12074*K^5*b^6 + 10498*K^4*b^7 - 1845*K^3*b^8 + "
    "4*K^2*b^9 + 6428*K^6*b^4 + 29321*K^5*b^5 + 16227*K^4*b^6 - 8248*K^3*b^7 - 13*K^2*b^8 "
    "- 4592*K^6*b^3 - 37012*K^5*b^4 - 67760*K^4*b^5 + 6762*K^3*b^6 - 3010*K^2*b^7 + "
    "4*K*b^8 + 1094*K^6*b^2 + 35821*K^5*b^3 + 80087*K^4*b^4 + 88726*K^3*b^5 - "
    "22986*K^2*b^6 + 289*K*b^7 + 82*K^6*b - 10058*K^5*b^2 - 113282*K^4*b^3 - "
    "80428*K^3*b^4 - 54164*K^2*b^5 + 1108*K*b^6 - 8*b^7 - 1217*K^5*b + 38497*K^4*b^2 + "
    "182632*K^3*b^3 + 43778*K^2*b^4 - 1209*K*b^5 + 13*b^6 + 7067*K^4*b - 80562*K^3*b^2 - "
    "151882*K^2*b^3 - 20614*K*b^4 + 48*b^5 + 69*K^4 - 20395*K^3*b + 100022*K^2*b^2 + "
    "53967*K*b^3 + 525*b^4 - 663*K^3 + 32316*K^2*b - 72528*K*b^2 - 4416*b^3 + 1983*K^2 - "
    "27735*K*b + 24423*b^2 - 2466*K + 10584*b + 1215"
)

F1_TEXT = (
    "6*alpha^5*beta^3 + 11*alpha^4*beta^4 + 6*alpha^3*beta^5 - 4*alpha^5*beta^2 - "
    "15*alpha^4*beta^3 - 15*alpha^3*beta^4 - 4*alpha^2*beta^5 + 6*alpha^5*beta + "
    "9*alpha^4*beta^2 - 2*alpha^3*beta^3 + 9*alpha^2*beta^4 + 6*alpha*beta^5 + "
    "3*alpha^4*beta - 12*alpha^3*beta^2 - 12*alpha^2*beta^3 + 3*alpha*beta^4 - "
    "12*alpha^3*beta - 34*alpha^2*beta^2 - 12*alpha*beta^3 + 3*alpha^3 + 3*beta^3 + "
    "9*alpha^2 + 18*alpha*beta + 9*beta^2 + 9*alpha + 9*beta + 3"
)

G1_TEXT = (
    "3*alpha^3*beta^5 + 9*alpha^2*beta^6 + 9*alpha*beta^7 + 3*beta^8 + 6*alpha^5*beta^2 + "
    "3*alpha^4*beta^3 - 12*alpha^3*beta^4 + 18*alpha*beta^6 + 9*beta^7 - 4*alpha^5*beta + "
    "9*alpha^4*beta^2 - 12*alpha^3*beta^3 - 34*alpha^2*beta^4 + 9*beta^6 + 6*alpha^5 - "
    "15*alpha^4*beta - 2*alpha^3*beta^2 - 12*alpha^2*beta^3 - 12*alpha*beta^4 + 3*beta^5 "
    "+ 11*alpha^4 - 15*alpha^3*beta + 9*alpha^2*beta^2 + 3*alpha*beta^3 + 6*alpha^3 - "
    "4*alpha^2*beta + 6*alpha*beta^2"
)

H1_TEXT = (
    "139*alpha^8 - 562*alpha^7 + 854*alpha^6 - 372*alpha^5 - 306*alpha^4 - 18*alpha^3 + "
    "486*alpha^2 + 243"
)

H2_TEXT = (
    "138*alpha^9 - 481*alpha^8 + 442*alpha^7 + 110*alpha^6 - 552*alpha^5 + 114*alpha^4 + "
    "90*alpha^3 + 486*alpha^2 + 162*alpha + 243"
)

H3_TEXT = (
    "277*alpha^9 - 1043*alpha^8 + 1296*alpha^7 - 262*alpha^6 - 858*alpha^5 + 96*alpha^4 "
    "+ 576*alpha^3 + 486*alpha^2 + 405*alpha + 243"
)

PHI_TEXT = "(alpha + 3)*beta^2 - (alpha^2 - 4*alpha - 3)*beta - 2*alpha^3 - alpha^2 + alpha"

# coefficients of epsilon^0 .. epsilon^5 after substituting
# alpha = (epsilon + beta)/(epsilon + 1) into G1 and clearing denominators
G1_BAR_COEFFS_TEXT = (
    "24*beta^7 + 48*beta^6 + 16*beta^5 - 16*beta^4 - 8*beta^3",
    "84*beta^7 + 216*beta^6 + 168*beta^5 - 8*beta^4 - 60*beta^3 - 16*beta^2",
    "114*beta^7 + 408*beta^6 + 414*beta^5 + 136*beta^4 - 82*beta^3 - 80*beta^2 - 14*beta",
    "75*beta^7 + 354*beta^6 + 527*beta^5 + 206*beta^4 + 17*beta^3 - 90*beta^2 - 59*beta - 6",
    "24*beta^7 + 141*beta^6 + 294*beta^5 + 199*beta^4 - 20*beta^3 + 19*beta^2 - 58*beta - 23",
    "3*beta^7 + 21*beta^6 + 57*beta^5 + 63*beta^4 + 5*beta^3 - 13*beta^2 + 15*beta - 23",
)

RESULTANT_CONSTANT = -3221225472
PHI1_TEXT = "K^3 - 6*K^2 + 9*K - 3"
PHI2_TEXT = "K^2 - 4*K + 1"
PSI1_TEXT = "23*K^7 - 191*K^6 + 715*K^5 - 1555*K^4 + 1077*K^3 - 493*K^2 + 41*K - 1"
PSI2_TEXT = "K^3 - 6*K^2 + 9*K - 3"


@lru_cache(maxsize=None)
def upsilon1():
    return parse(UPSILON1_TEXT, ("K", "b"))


@lru_cache(maxsize=None)
def upsilon2():
    return parse(UPSILON2_TEXT, ("K", "b"))


@lru_cache(maxsize=None)
def f1():
    return parse(F1_TEXT, ("alpha", "beta"))


@lru_cache(maxsize=None)
def g1():
    return parse(G1_TEXT, ("alpha", "beta"))


@lru_cache(maxsize=None)
def h1():
    return parse(H1_TEXT, ("alpha",))


@lru_cache(maxsize=None)
def h2():
    return parse(H2_TEXT, ("alpha",))


@lru_cache(maxsize=None)
def h3():
    return parse(H3_TEXT, ("alpha",))


@lru_cache(maxsize=None)
def phi():
    return parse(PHI_TEXT, ("alpha", "beta"))


@lru_cache(maxsize=None)
def g1_bar_coefficients():
    return tuple(parse(t, ("beta",)) for t in G1_BAR_COEFFS_TEXT)


@lru_cache(maxsize=None)
def phi1():
    return parse(PHI1_TEXT, ("K",))


@lru_cache(maxsize=None)
def phi2():
    return parse(PHI2_TEXT, ("K",))


@lru_cache(maxsize=None)
def psi1():
    return parse(PSI1_TEXT, ("K",))


@lru_cache(maxsize=None)
def psi2():
    return parse(PSI2_TEXT, ("K",))
