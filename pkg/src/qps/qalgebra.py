"""q-deformed oscillator algebra {A, A+, N} realized on the Rogers-Szego basis.

Polynomial form: A = D_q (the Jackson derivative) and
A+ = (1 + y) - (1 - q) y D_q, which act as ladders

    A  H_n = [n]_q H_{n-1},      A+ H_n = H_{n+1},      N H_n = n H_n.

Matrix form: the same actions written in the truncated {H_0 .. H_nmax}
basis, where the defining relations

    [A, A+] = q^N,   [N, A+] = A+,   [N, A] = -A,
    A A+ - q A+ A = 1,   A+ A = [N]_q

hold exactly on the interior block (the top row/column of a truncated
matrix picks up artifacts because A+ maps H_nmax outside the space, so all
relation checks exclude index nmax).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qseries import QParam, qnumber
from .rspoly import Polynomial, jackson_derivative, rs_coefficients


@dataclass(frozen=True)
class StateVector:
    """Coefficients over the {H_n} basis (index = quantum number n)."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("StateVector needs at least one coefficient")

    @classmethod
    def basis_state(cls, n: int, n_max: int) -> "StateVector":
        if not (0 <= n <= n_max):
            raise ValueError(f"need 0 <= n <= n_max, got n={n}, n_max={n_max}")
        c = [0j] * (n_max + 1)
        c[n] = 1.0 + 0j
        return cls(tuple(c))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=complex)


@dataclass(frozen=True)
class LadderMatrices:
    """Matrix realizations of A, A+ and N on the truncated {H_n} basis.

    a_mat carries [n]_q on its first superdiagonal, adag_mat ones on its
    first subdiagonal, n_mat is diag(0..n_max); columns index the input
    basis element.
    """

    a_mat: np.ndarray
    adag_mat: np.ndarray
    n_mat: np.ndarray

    @property
    def n_max(self) -> int:
        return self.a_mat.shape[0] - 1

    def apply_a(self, sv: StateVector) -> StateVector:
        return StateVector(tuple(self.a_mat @ sv.as_array()))

    def apply_adag(self, sv: StateVector) -> StateVector:
        return StateVector(tuple(self.adag_mat @ sv.as_array()))


def apply_A_poly(p: Polynomial, qp: QParam) -> Polynomial:
    """Annihilation in polynomial form: A p = D_q p."""
    return jackson_derivative(p, qp)


def apply_Adag_poly(p: Polynomial, qp: QParam) -> Polynomial:
    """Creation in polynomial form: A+ p = (1 + y) p - (1 - q) y D_q p."""
    if p.is_zero():
        return Polynomial.zero()
    one_plus_y_p = p + p.times_y()
    correction = jackson_derivative(p, qp).times_y().scale(qp.one_minus_qpow(1))
    return one_plus_y_p - correction


def build_ladder_matrices(n_max: int, qp: QParam) -> LadderMatrices:
    """Ladder and number-operator matrices on the basis H_0 .. H_nmax."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    dim = n_max + 1
    a = np.zeros((dim, dim), dtype=complex)
    adag = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        a[n - 1, n] = qnumber(n, qp)
        adag[n, n - 1] = 1.0
    n_mat = np.diag(np.arange(dim, dtype=float)).astype(complex)
    return LadderMatrices(a, adag, n_mat)


def rs_basis_expand(p: Polynomial, qp: QParam) -> list[complex]:
    """Expand a polynomial over the {H_n} basis.

    Repeated leading-coefficient elimination: H_n is monic, so the change of
    basis is upper triangular with unit diagonal and needs no linear solve.
    Returns coefficients c with p = sum_n c[n] H_n.
    """
    work = list(p.coeffs)
    out = [0j] * max(1, len(work))
    while work:
        d = len(work) - 1
        lead = work.pop()
        if lead == 0:
            continue
        out[d] = lead
        if d > 0:
            hn = rs_coefficients(d, qp).coeffs
            for r in range(d):
                work[r] -= lead * hn[r]
    return out


@dataclass(frozen=True)
class AlgebraReport:
    """Residuals of the defining relations on the interior truncated block."""

    n_max: int
    q: float
    tol: float
    residuals: dict[str, float]
    passed: bool
    failures: tuple[str, ...]
    #: max deviation of the interior [A, A+] block from the identity;
    #: approaches 0 as q -> 1, where the undeformed oscillator is recovered
    classical_commutator_deviation: float = field(default=float("nan"))

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "q": self.q,
            "tol": self.tol,
            "residuals": dict(self.residuals),
            "passed": self.passed,
            "failures": list(self.failures),
            "classical_commutator_deviation": self.classical_commutator_deviation,
        }


def verify_algebra(n_max: int, qp: QParam, tol: float) -> AlgebraReport:
    """Check the defining relations in matrix form; residuals are max-norms
    over the interior block 0..n_max-1, where truncation artifacts vanish."""
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    if not (tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol}")
    mats = build_ladder_matrices(n_max, qp)
    a, adag, n_mat = mats.a_mat, mats.adag_mat, mats.n_mat
    dim = n_max + 1
    eye = np.eye(dim, dtype=complex)
    q_pow_n = np.diag(np.array([qp.qpow(k) for k in range(dim)], dtype=complex))
    qnum_n = np.diag(np.array([qnumber(k, qp) for k in range(dim)], dtype=complex))

    def interior_max(x: np.ndarray) -> float:
        return float(np.max(np.abs(x[:n_max, :n_max])))

    comm = a @ adag - adag @ a
    deviations = {
        "comm_a_adag_minus_qN": comm - q_pow_n,
        "comm_N_adag_minus_adag": n_mat @ adag - adag @ n_mat - adag,
        "comm_N_a_plus_a": n_mat @ a - a @ n_mat + a,
        "aadag_minus_q_adaga_minus_one": a @ adag - qp.q * (adag @ a) - eye,
        "adaga_minus_qnumber_N": adag @ a - qnum_n,
    }
    residuals = {name: interior_max(dev) for name, dev in deviations.items()}
    failures = tuple(name for name, r in residuals.items() if not (r < tol))
    return AlgebraReport(
        n_max=n_max,
        q=qp.q,
        tol=tol,
        residuals=residuals,
        passed=not failures,
        failures=failures,
        classical_commutator_deviation=interior_max(comm - eye),
    )
