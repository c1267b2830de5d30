"""Bentness of unitary functions on a G-set and perfect nonlinearity into a group.

A unitary f is *bent* when every character carries the same spectral energy
n^2/m; equivalently (and tested as such) when every nontrivial derivative
f'_alpha(x) = f(alpha x) conj(f(x)) sums to zero over X, and equivalently when
the translate functions x -> f(alpha x) have flat mean squared group spectrum.
"""

from dataclasses import dataclass

import numpy as np

from .groups import DEFAULT_TOL, FiniteAbelianGroup
from .gsets import GSet
from .spectral import psi_component, spectral_energy_by_psi

CRITERIA = ("spectral", "derivatives", "poinsot")


class NonUnitaryError(ValueError):
    """Raised when a bent test receives a function with values off the unit circle."""


def _require_unitary(f, tol):
    f = np.asarray(f, dtype=np.complex128)
    worst = float(np.max(np.abs(np.abs(f) - 1.0)))
    if worst > tol:
        raise NonUnitaryError(
            f"bentness is defined for unitary functions only; max | |f(x)| - 1 | = {worst:.3e}"
        )
    return f


# -- derivatives -----------------------------------------------------------------


def derivative(X, f, alpha, tol=DEFAULT_TOL):
    """Derivative f'_alpha(x) = f(alpha x) f(x)^{-1} on the support of f.

    Requires f nonzero with a G-invariant zero set; entries of the result are
    0 at zeros of f. Unitary functions always qualify and give unitary
    derivatives.
    """
    f = X._check_function(f)
    a = alpha if isinstance(alpha, (int, np.integer)) else X.group.element_index(alpha)
    support = np.abs(f) > tol
    if not support.any():
        raise ValueError("the zero function is not differentiable")
    for orbit in X.orbits:
        hits = support[list(orbit)]
        if hits.any() and not hits.all():
            raise ValueError(
                f"zero set is not G-invariant: orbit {orbit} mixes zeros and support"
            )
    out = np.zeros(X.n, dtype=np.complex128)
    moved = X.table[a]
    out[support] = f[moved[support]] / f[support]
    return out


def derivative_sums(X, f):
    """sum_x f(alpha x) conj(f(x)) for every group element, ordered by element index."""
    f = X._check_function(f)
    return np.conj(f) @ f[X.table].T  # entry a: sum_x f(a.x) conj(f(x))


def has_totally_balanced_derivatives(X, f, tol=DEFAULT_TOL):
    """True iff every nontrivial derivative of a unitary f sums to zero.

    Returns (verdict, sums) with the per-element sums included for reporting.
    """
    f = _require_unitary(f, tol)
    sums = derivative_sums(X, f)
    verdict = bool(np.max(np.abs(sums[1:]), initial=0.0) <= tol * X.n)
    return verdict, sums


def is_g_linear(X, f, tol=DEFAULT_TOL):
    """The unique character psi with f(alpha x) = psi(alpha) f(x), or None.

    The zero function is rejected (every character would qualify).
    """
    f = X._check_function(f)
    scale = float(np.linalg.norm(f))
    if scale <= tol:
        raise ValueError("the zero function is linear for every character")
    for p in range(X.group.order):
        psi_vals = X.group.char_table[p]
        dev = max(
            float(np.linalg.norm(f[X.table[a]] - psi_vals[a] * f))
            for a in range(X.group.order)
        )
        if dev <= tol * scale:
            return X.group.element(p)
    return None


# -- bent criteria -----------------------------------------------------------------


def is_bent_spectral(f, D, tol=DEFAULT_TOL):
    """Flat-energy test: every character energy equals n^2/m within tol (relative).

    Returns (verdict, energies); the verdict does not depend on which dual
    basis is used.
    """
    f = _require_unitary(f, tol)
    energies = spectral_energy_by_psi(f, D)
    n, m = D.n, D.gset.group.order
    target = n * n / m
    verdict = bool(np.max(np.abs(energies - target)) <= tol * target)
    return verdict, energies


def is_bent_poinsot(X, f, tol=DEFAULT_TOL):
    """Translate-spectrum test: (1/n) sum_x |fhat_x(psi)|^2 = m for every psi.

    fhat_x(psi) = m * (psi-conjugate component of f at x), so the check runs on
    the classical decomposition and never touches a dual basis.
    """
    f = _require_unitary(f, tol)
    m, n = X.group.order, X.n
    for p in range(m):
        comp = psi_component(X, p, f)
        mean_sq = (m * m / n) * float(np.linalg.norm(comp) ** 2)
        if abs(mean_sq - m) > tol * m:
            return False
    return True


def bent_existence_precondition(X):
    """Necessary condition for bent functions: no character component is empty.

    Returns (possible, empty_characters) where the second entry lists the
    exponent tuples of characters with zero-dimensional components.
    """
    from .spectral import component_dimensions

    dims = component_dimensions(X)
    empty = [X.group.element(p) for p, d in enumerate(dims) if d == 0]
    return (not empty), empty


def distance_to_g_linear(f, D, tol=DEFAULT_TOL):
    """Distance from a unitary f to the set of G-linear functions.

    Uses the closed form sqrt(n - max_psi |f_psi|^2); the bound
    sqrt((m-1) n / m) is attained exactly by the bent functions.
    """
    f = _require_unitary(f, tol)
    energies = spectral_energy_by_psi(f, D)  # |f_psi|^2 = energy / n
    n = D.n
    return float(np.sqrt(max(n - energies.max() / n, 0.0)))


@dataclass
class BentReport:
    """Joint outcome of the requested bent criteria for one function."""

    verdict: bool
    criteria: dict  # criterion name -> bool
    consistent: bool
    per_psi_energy: np.ndarray
    per_alpha_derivative_sum: np.ndarray
    distance_to_linear: float
    tolerance: float


def bent_report(X, f, criteria=CRITERIA, tol=DEFAULT_TOL):
    """Run the requested bent criteria and collect the evidence in one report."""
    unknown = set(criteria) - set(CRITERIA)
    if unknown:
        raise ValueError(f"unknown bent criteria: {sorted(unknown)}")
    D = X.dual_basis
    results = {}
    if "spectral" in criteria:
        results["spectral"], energies = is_bent_spectral(f, D, tol)
    else:
        energies = spectral_energy_by_psi(_require_unitary(f, tol), D)
    if "derivatives" in criteria:
        results["derivatives"], sums = has_totally_balanced_derivatives(X, f, tol)
    else:
        sums = derivative_sums(X, np.asarray(f, dtype=np.complex128))
    if "poinsot" in criteria:
        results["poinsot"] = is_bent_poinsot(X, f, tol)
    verdicts = set(results.values())
    return BentReport(
        verdict=all(results.values()),
        criteria=results,
        consistent=len(verdicts) == 1,
        per_psi_energy=energies,
        per_alpha_derivative_sum=sums,
        distance_to_linear=distance_to_g_linear(f, D, tol),
        tolerance=tol,
    )


# -- pseudo-convolution ----------------------------------------------------------


def pseudo_convolution(X, f, g):
    """The function on the group alpha -> sum_x conj(f(x)) g(alpha x)."""
    f = X._check_function(f)
    g = X._check_function(g)
    return g[X.table] @ np.conj(f)


def pseudo_convolution_spectrum(f, g, D):
    """Group transform of the pseudo-convolution, per character:

    (m/n) sum_{lambda in psi-block} conj(f_hat(lambda)) g_hat(lambda).
    """
    from .spectral import fourier

    fh = fourier(f, D).values
    gh = fourier(g, D).values
    m = D.gset.group.order
    out = np.zeros(m, dtype=np.complex128)
    np.add.at(out, D.psi_index, np.conj(fh) * gh)
    return out * (m / D.n)


# -- group-valued functions and perfect nonlinearity ----------------------------


class GroupValuedFunction:
    """A function from a G-set into a finite abelian group H.

    Values are stored as H-element indices; ``value_tuples`` exposes them as
    residue tuples.
    """

    def __init__(self, domain: GSet, codomain: FiniteAbelianGroup, values):
        self.domain = domain
        self.codomain = codomain
        values = np.asarray(values, dtype=np.int64)
        if values.shape != (domain.n,):
            raise ValueError(f"expected {domain.n} values, got shape {values.shape}")
        if values.min() < 0 or values.max() >= codomain.order:
            raise ValueError("values must be element indices of the codomain")
        self.values = values
        self.values.setflags(write=False)

    @classmethod
    def from_tuples(cls, domain, codomain, tuples):
        return cls(domain, codomain, [codomain.element_index(t) for t in tuples])

    @property
    def value_tuples(self):
        return [self.codomain.element(i) for i in self.values]

    def derivative(self, alpha):
        """g'_alpha(x) = g(alpha x) g(x)^{-1}, again H-valued."""
        a = alpha if isinstance(alpha, (int, np.integer)) else self.domain.group.element_index(alpha)
        H = self.codomain
        moved = self.values[self.domain.table[a]]
        diff = H.multiplication_table[moved, H.negation_indices[self.values]]
        return GroupValuedFunction(self.domain, H, diff)

    def compose_character(self, xi):
        """The unitary function x -> xi(g(x)) for a character xi of the codomain."""
        p = xi if isinstance(xi, (int, np.integer)) else self.codomain.element_index(xi)
        return self.codomain.char_table[p, self.values]

    def __eq__(self, other):
        return (
            isinstance(other, GroupValuedFunction)
            and self.domain is other.domain
            and self.codomain == other.codomain
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        return f"GroupValuedFunction({list(self.codomain.invariants)}, values={self.values.tolist()})"


def counting_function(g: GroupValuedFunction):
    """Number of preimages of each codomain element, by element index; sums to n."""
    return np.bincount(g.values, minlength=g.codomain.order)


def _direct_pnl(g):
    H, X = g.codomain, g.domain
    counts = []
    if X.n % H.order != 0:
        # |H| must divide |X| for any derivative to be evenly balanced
        for a in range(1, X.group.order):
            counts.append(counting_function(g.derivative(a)))
        return False, counts
    quota = X.n // H.order
    verdict = True
    for a in range(1, X.group.order):
        c = counting_function(g.derivative(a))
        counts.append(c)
        if not np.all(c == quota):
            verdict = False
    return verdict, counts


def _via_bent_pnl(g, tol):
    X = g.domain
    D = X.dual_basis
    per_xi = {}
    for p in range(1, g.codomain.order):
        ok, _ = is_bent_spectral(g.compose_character(p), D, tol)
        per_xi[g.codomain.element(p)] = ok
    return all(per_xi.values()), per_xi


@dataclass
class PnlReport:
    """Outcome of the perfect-nonlinearity test in the requested mode(s)."""

    verdict: bool
    mode: str
    derivative_counts: list  # per nontrivial alpha, when the direct mode ran
    bent_per_character: dict  # nontrivial xi -> bool, when the via_bent mode ran
    modes_agree: bool
    tolerance: float


def is_g_perfect_nonlinear(g: GroupValuedFunction, mode="direct", tol=DEFAULT_TOL):
    """Test whether every nontrivial derivative of g is evenly balanced.

    ``direct`` counts derivative values; ``via_bent`` checks that xi o g is
    bent for every nontrivial character xi of the codomain; ``both`` runs the
    two and reports whether they agree.
    """
    if mode not in ("direct", "via_bent", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    counts, per_xi = [], {}
    agree = True
    if mode in ("direct", "both"):
        direct, counts = _direct_pnl(g)
        verdict = direct
    if mode in ("via_bent", "both"):
        via, per_xi = _via_bent_pnl(g, tol)
        verdict = via
    if mode == "both":
        agree = direct == via
        verdict = direct and via
    return PnlReport(
        verdict=verdict,
        mode=mode,
        derivative_counts=counts,
        bent_per_character=per_xi,
        modes_agree=agree,
        tolerance=tol,
    )
