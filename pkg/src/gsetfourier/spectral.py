"""Spectral decomposition of C^X and Fourier transforms on a G-set.

For each character psi, the psi-linear functions (f(alpha x) = psi(alpha) f(x))
form a subspace of C^X, and C^X is their orthogonal direct sum. A *dual basis*
of X is an orthogonal basis of C^X made of such functions, each of squared
norm n, closed under complex conjugation; it plays the role the dual group
plays for the regular action, and supports a Fourier transform

    f_hat(lambda) = sum_x f(x) lambda(x)

with inversion g_hat(x) = (1/n) sum_lambda g(lambda) conj(lambda(x)).
"""

from dataclasses import dataclass, field

import numpy as np

#: a projected residual with norm <= GS_ZERO_FACTOR * sqrt(n) counts as zero
GS_ZERO_FACTOR = 1e-7


def psi_component(X, psi, f):
    """Projection of ``f`` onto the psi-linear subspace: (1/m) psi * f."""
    p = psi if isinstance(psi, (int, np.integer)) else X.group.element_index(psi)
    return X.convolve(X.group.char_table[p], f) / X.group.order


def _projected_indicators(X, p):
    """(n, n) matrix whose column y is the psi_p-projection of the indicator of y."""
    m, n = X.group.order, X.n
    psi = X.group.char_table[p]
    cols = np.arange(n)
    P = np.zeros((n, n), dtype=np.complex128)
    for a in range(m):
        # the projection of 1_y picks up psi(a)/m at the point a.y
        P[X.table[a], cols] += psi[a] / m
    return P


def _orthonormalize(candidates, n, scale):
    """Gram-Schmidt with zero rejection; survivors are scaled to norm sqrt(n).

    Two elimination passes keep the result orthogonal to working precision;
    the construction is deterministic in the candidate order.
    """
    zero_tol = GS_ZERO_FACTOR * np.sqrt(n)
    basis = []
    for v in candidates:
        w = np.array(v, dtype=np.complex128)
        for _ in range(2):
            for b in basis:
                w -= (np.vdot(b, w) / n) * b
        nrm = np.linalg.norm(w)
        if nrm <= zero_tol:
            continue
        basis.append(w * (scale / nrm))
    return basis


def _canonical_phase(v):
    """Rescale by a unit so the first coordinate of modulus > 1e-7 is real positive."""
    idx = np.nonzero(np.abs(v) > 1e-7)[0]
    j = int(idx[0])
    pivot = v[j]
    return v * (np.conj(pivot) / abs(pivot))


def _component_basis(X, p, conj_p):
    """Orthogonal basis of the psi_p-linear subspace, each vector of norm sqrt(n).

    For a self-conjugate character the candidates are replaced by their real
    and imaginary parts, so every basis vector is exactly real-valued.
    """
    n = X.n
    P = _projected_indicators(X, p)
    if p == conj_p:
        candidates = []
        for y in range(n):
            c = P[:, y]
            candidates.append(c + np.conj(c))
            candidates.append(1j * (c - np.conj(c)))
    else:
        candidates = [P[:, y] for y in range(n)]
    basis = _orthonormalize(candidates, n, np.sqrt(n))
    return [_canonical_phase(v) for v in basis]


def component_dimension(X, psi):
    """Dimension of the psi-linear subspace of C^X."""
    p = psi if isinstance(psi, (int, np.integer)) else X.group.element_index(psi)
    return len(_component_basis(X, p, int(X.group.negation_indices[p])))


def component_dimensions(X):
    """Dimensions of all components in canonical character order; they sum to n."""
    return [component_dimension(X, p) for p in range(X.group.order)]


class DualBasis:
    """An n-normal orthogonal basis of C^X made of G-linear functions.

    ``matrix`` holds the basis functions as rows; ``psi_index[i]`` is the
    canonical index of the character lambda_i transforms under, and
    ``conj_partner`` is the involution with conj(matrix[i]) == matrix[conj_partner[i]]
    exactly (bit-for-bit).
    """

    def __init__(self, gset, matrix, psi_index, conj_partner):
        self.gset = gset
        self.matrix = np.asarray(matrix, dtype=np.complex128)
        self.psi_index = np.asarray(psi_index, dtype=np.int64)
        self.conj_partner = np.asarray(conj_partner, dtype=np.int64)
        if self.matrix.shape != (gset.n, gset.n):
            raise ValueError(f"dual basis must be {gset.n} functions of length {gset.n}")
        self.matrix.setflags(write=False)
        self.psi_index.setflags(write=False)
        self.conj_partner.setflags(write=False)

    @property
    def n(self):
        return self.gset.n

    def character_of(self, i):
        """Exponent tuple of the character attached to lambda_i."""
        return self.gset.group.element(int(self.psi_index[i]))

    def indices_for_psi(self, psi):
        """Indices of the basis functions lying in the psi-component."""
        p = psi if isinstance(psi, (int, np.integer)) else self.gset.group.element_index(psi)
        return np.nonzero(self.psi_index == p)[0]

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"DualBasis(n={self.n}, group={list(self.gset.group.invariants)})"


def build_dual_basis(X):
    """Construct the canonical dual basis of a G-set.

    Characters are visited in canonical order; a character whose conjugate
    was already processed receives the conjugated basis of its partner, which
    makes conjugation closure exact. Within one character, indicator
    projections are orthogonalized in point order, so the output is
    deterministic (identical matrices bit-for-bit across runs).
    """
    group = X.group
    neg = group.negation_indices
    blocks = {}
    for p in range(group.order):
        cp = int(neg[p])
        if cp < p:
            continue  # handled together with its conjugate below
        blocks[p] = _component_basis(X, p, cp)
        if cp != p:
            blocks[cp] = [np.conj(v) for v in blocks[p]]

    rows, psi_index = [], []
    positions = {}
    for p in range(group.order):
        for j, v in enumerate(blocks[p]):
            positions[(p, j)] = len(rows)
            rows.append(v)
            psi_index.append(p)

    conj_partner = np.empty(len(rows), dtype=np.int64)
    for (p, j), i in positions.items():
        conj_partner[i] = positions[(int(neg[p]), j)]

    matrix = np.vstack(rows) if rows else np.zeros((0, X.n), dtype=np.complex128)
    if matrix.shape[0] != X.n:
        raise RuntimeError(
            f"component bases span {matrix.shape[0]} of {X.n} dimensions; "
            "this indicates an invalid action table"
        )
    return DualBasis(X, matrix, psi_index, conj_partner)


@dataclass
class DualBasisCheck:
    """Outcome of verifying the defining conditions of a dual basis."""

    tol: float
    gram_row_deviation: float  # max |<lambda_i, lambda_j> - n [i=j]|
    gram_point_deviation: float  # max |sum_i lambda_i(x) conj(lambda_i(y)) - n [x=y]|
    linearity_deviation: float  # max |lambda(a x) - psi_lambda(a) lambda(x)|
    conjugation_deviation: float  # max |conj(lambda_i) - lambda_{partner(i)}|
    partner_involution_ok: bool
    partner_character_ok: bool

    @property
    def passed(self):
        return (
            self.gram_row_deviation <= self.tol
            and self.gram_point_deviation <= self.tol
            and self.linearity_deviation <= self.tol
            and self.conjugation_deviation <= self.tol
            and self.partner_involution_ok
            and self.partner_character_ok
        )


def verify_dual_basis(X, D, tol=1e-8):
    """Check both orthogonality relations, G-linearity, and conjugation closure."""
    n = X.n
    L = D.matrix
    gram = L @ L.conj().T
    point = L.conj().T @ L  # (x, y) entry: sum_i conj(lambda_i(x)) lambda_i(y)
    eye = n * np.eye(n)
    lin_dev = 0.0
    for a in range(X.group.order):
        psi_vals = X.group.char_table[D.psi_index, a]  # psi_lambda(a) per row
        dev = np.abs(L[:, X.table[a]] - psi_vals[:, None] * L).max() if n else 0.0
        lin_dev = max(lin_dev, float(dev))
    conj_dev = float(np.abs(np.conj(L) - L[D.conj_partner]).max())
    partner = D.conj_partner
    involution_ok = bool(np.array_equal(partner[partner], np.arange(n)))
    character_ok = bool(
        np.array_equal(D.psi_index[partner], X.group.negation_indices[D.psi_index])
    )
    return DualBasisCheck(
        tol=tol,
        gram_row_deviation=float(np.abs(gram - eye).max()),
        gram_point_deviation=float(np.abs(point - eye).max()),
        linearity_deviation=lin_dev,
        conjugation_deviation=conj_dev,
        partner_involution_ok=involution_ok,
        partner_character_ok=character_ok,
    )


# -- Fourier transforms on X ---------------------------------------------------


@dataclass
class Spectrum:
    """A function on the dual basis, indexed like the basis it is relative to."""

    values: np.ndarray
    basis: DualBasis = field(repr=False)


def fourier(f, D):
    """Fourier transform on X: f_hat(lambda_i) = sum_x f(x) lambda_i(x)."""
    f = D.gset._check_function(f)
    return Spectrum(D.matrix @ f, D)


def fourier_inverse(g, D=None):
    """Inverse transform: (1/n) sum_i g(lambda_i) conj(lambda_i(x))."""
    if isinstance(g, Spectrum):
        if D is not None and D is not g.basis:
            raise ValueError("spectrum was taken relative to a different dual basis")
        values, D = g.values, g.basis
    else:
        if D is None:
            raise ValueError("a raw spectrum vector needs its dual basis")
        values = np.asarray(g, dtype=np.complex128)
        if values.shape != (D.n,):
            raise ValueError(f"spectrum must have length {D.n}, got shape {values.shape}")
    return values @ np.conj(D.matrix) / D.n


def spectral_energy_by_psi(f, D):
    """Per-character energy: for each psi, sum of |f_hat(conj lambda)|^2 over the psi-block.

    Entry p equals the squared spectral norm of the psi_p-component of f; the
    entries sum to <f_hat, f_hat> = n <f, f>.
    """
    fh = fourier(f, D).values
    sq = np.abs(fh[D.conj_partner]) ** 2
    energies = np.zeros(D.gset.group.order)
    np.add.at(energies, D.psi_index, sq)
    return energies


def convolution_transform(sigma, f, D):
    """Spectrum of sigma * f, computed as sigma_hat(psi_lambda) * f_hat(lambda)."""
    sigma_hat = D.gset.group.fourier(sigma)
    fh = fourier(f, D).values
    return Spectrum(sigma_hat[D.psi_index] * fh, D)


def shifted_inner_product(f, g, alpha, D):
    """<alpha^{-1} f, g> evaluated spectrally.

    Equals (1/n) sum_psi psi(alpha) sum_{lambda in psi-block} f_hat(conj lambda)
    conj(g_hat(conj lambda)), and agrees with the direct sum sum_x f(alpha x) conj(g(x)).
    """
    group = D.gset.group
    a = alpha if isinstance(alpha, (int, np.integer)) else group.element_index(alpha)
    fh = fourier(f, D).values[D.conj_partner]
    gh = fourier(g, D).values[D.conj_partner]
    psi_vals = group.char_table[D.psi_index, a]
    return complex(np.sum(psi_vals * fh * np.conj(gh)) / D.n)
