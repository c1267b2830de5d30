"""Finite abelian groups, their characters, and Fourier transforms on the group.

A group is described by its invariant factors ``[n_1, ..., n_k]``; elements
are residue tuples added componentwise. Elements and characters are both
enumerated lexicographically on their tuples, so index 0 is the identity
(resp. the principal character) and the dual group carries the same indexing
scheme as the group itself.
"""

from functools import cached_property
from itertools import product
from math import lcm, prod

import numpy as np

#: default comparison tolerance for complex values built from roots of unity
DEFAULT_TOL = 1e-9


class FiniteAbelianGroup:
    """Direct product of cyclic groups Z_{n_1} x ... x Z_{n_k}.

    The empty invariant list gives the trivial group of order 1.
    """

    def __init__(self, invariants):
        invariants = tuple(int(d) for d in invariants)
        if any(d < 2 for d in invariants):
            raise ValueError(f"invariant factors must be >= 2, got {list(invariants)}")
        self.invariants = invariants
        self.rank = len(invariants)
        self.order = prod(invariants)

    def __repr__(self):
        return f"FiniteAbelianGroup({list(self.invariants)})"

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and self.invariants == other.invariants

    def __hash__(self):
        return hash(self.invariants)

    # -- element enumeration ------------------------------------------------

    @cached_property
    def elements(self):
        """(order, rank) array of residue tuples in lexicographic order."""
        rows = list(product(*(range(d) for d in self.invariants)))
        return np.array(rows, dtype=np.int64).reshape(self.order, self.rank)

    def element_index(self, residues):
        """Index of a residue tuple (reduced modulo the invariants)."""
        residues = tuple(residues)
        if len(residues) != self.rank:
            raise ValueError(f"expected {self.rank} residues, got {len(residues)}")
        idx = 0
        for r, d in zip(residues, self.invariants):
            idx = idx * d + (int(r) % d)
        return idx

    def element(self, index):
        """Residue tuple of the element at ``index``."""
        return tuple(int(r) for r in self.elements[index])

    @cached_property
    def negation_indices(self):
        """Index map alpha -> alpha^{-1}; doubles as the character conjugation map."""
        inv = np.array(self.invariants, dtype=np.int64)
        neg = (-self.elements) % inv if self.rank else self.elements
        return np.array([self.element_index(row) for row in neg], dtype=np.int64)

    @cached_property
    def multiplication_table(self):
        """(order, order) table of products: table[a, b] = index of alpha_a * alpha_b."""
        m = self.order
        table = np.empty((m, m), dtype=np.int64)
        inv = np.array(self.invariants, dtype=np.int64)
        for a in range(m):
            rows = (self.elements[a] + self.elements) % inv if self.rank else self.elements
            table[a] = [self.element_index(row) for row in rows]
        return table

    def multiply(self, a, b):
        """Product of two elements given by index."""
        return int(self.multiplication_table[a, b])

    # -- characters ----------------------------------------------------------

    @cached_property
    def _phase_roots(self):
        L = lcm(*self.invariants) if self.rank else 1
        return L, np.exp(2j * np.pi * np.arange(L) / L)

    @cached_property
    def char_table(self):
        """(order, order) complex table: char_table[i, j] = psi_i(alpha_j).

        Phases are accumulated as exact integers modulo lcm(invariants) and
        evaluated through a single root-of-unity lookup.
        """
        L, roots = self._phase_roots
        if self.rank == 0:
            return np.ones((1, 1), dtype=np.complex128)
        weights = np.array([L // d for d in self.invariants], dtype=np.int64)
        phases = (self.elements * weights) @ self.elements.T % L
        return roots[phases]

    def character_value(self, chi, alpha):
        """Value psi(alpha) for a character and element, each a tuple or an index."""
        i = chi if isinstance(chi, (int, np.integer)) else self.element_index(chi)
        j = alpha if isinstance(alpha, (int, np.integer)) else self.element_index(alpha)
        return complex(self.char_table[i, j])

    def characters(self):
        """All characters as exponent tuples, in canonical (lexicographic) order."""
        return [self.element(i) for i in range(self.order)]

    @cached_property
    def regular_character(self):
        """The function with value ``order`` at the identity and 0 elsewhere."""
        rho = np.zeros(self.order, dtype=np.complex128)
        rho[0] = self.order
        return rho

    # -- transforms on the group ----------------------------------------------

    def _check_length(self, values, what):
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != (self.order,):
            raise ValueError(f"{what} must have length {self.order}, got shape {values.shape}")
        return values

    def fourier(self, sigma):
        """Fourier transform on the group: sigma_hat(psi) = sum_a sigma(a) psi(a)."""
        sigma = self._check_length(sigma, "function on the group")
        return self.char_table @ sigma

    def fourier_inverse(self, tau):
        """Inverse transform: tau_hat(a) = (1/m) sum_psi tau(conj psi) psi(a)."""
        tau = self._check_length(tau, "function on the dual group")
        return tau[self.negation_indices] @ self.char_table / self.order

    def convolve(self, tau, sigma):
        """Convolution on the group: (tau*sigma)(a) = sum_b tau(b) sigma(b^{-1} a)."""
        tau = self._check_length(tau, "left factor")
        sigma = self._check_length(sigma, "right factor")
        shift = self.multiplication_table[self.negation_indices]
        return tau @ sigma[shift]


def make_group(invariants):
    """Build a finite abelian group from its invariant factors."""
    return FiniteAbelianGroup(invariants)
