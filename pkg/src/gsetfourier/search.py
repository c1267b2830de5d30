"""Exhaustive search oracles over root-of-unity and group-valued alphabets.

Candidates are enumerated as exponent vectors in lexicographic order and only
materialized as complex vectors when needed. The derivative-balance and
evenly-balanced inner loops run on the compiled kernel when the extension is
available, with a numpy fallback selected at import time; both produce
identical results. The spectral and translate-spectrum criteria are evaluated
in vectorized chunks.
"""

from itertools import product

import numpy as np

from . import _core_py
from .analysis import GroupValuedFunction
from .groups import DEFAULT_TOL
from .gsets import roots_of_unity_function
from .spectral import _projected_indicators

try:
    from . import _core

    _impl = _core
except ImportError:  # extension not built; numpy fallback
    _core = None
    _impl = _core_py

#: candidate budget for exhaustive searches
MAX_CANDIDATES = 10**8

_CHUNK = 1 << 12

BENT_CRITERIA = ("derivatives", "spectral", "poinsot")
PNL_CRITERIA = ("direct", "via_bent")


class BudgetError(RuntimeError):
    """Raised when an enumeration would exceed the candidate budget."""


class CriterionMismatchError(RuntimeError):
    """Raised when criteria that must agree return different result sets."""


def backend_name():
    """Which kernel implementation was selected at import ("compiled" or "python")."""
    return "python" if _impl is _core_py else "compiled"


def _check_budget(total, what):
    if total > MAX_CANDIDATES:
        raise BudgetError(f"{what} would enumerate {total} candidates (budget {MAX_CANDIDATES})")


def _exponent_rows(indices, n, q):
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (np.asarray(indices, dtype=np.int64)[:, None] // weights) % q


def enumerate_exponents(n, q):
    """All exponent vectors in [0, q)^n, lexicographically, as tuples."""
    _check_budget(q**n, f"exponent space of size {q}^{n}")
    yield from product(range(q), repeat=n)


def enumerate_unitary(X, q):
    """All functions x -> exp(2 pi i e(x) / q) on X, in lexicographic exponent order."""
    if q < 1:
        raise ValueError("root order must be >= 1")
    for exps in enumerate_exponents(X.n, q):
        yield roots_of_unity_function(exps, q)


# -- bent search -------------------------------------------------------------------


def _search_bent_derivatives(X, q, tol, impl):
    act = np.ascontiguousarray(X.table[1:], dtype=np.int64)
    if act.shape[0] == 0:  # trivial group: nothing to balance
        return np.arange(q**X.n, dtype=np.int64)
    return impl.balanced_derivative_search(act, q, tol * X.n)


def _chunked_indices(total):
    for start in range(0, total, _CHUNK):
        yield np.arange(start, min(start + _CHUNK, total), dtype=np.int64)


def _flat_energy_mask(F, D, tol):
    """Rows of the candidate matrix F whose per-character energies are all n^2/m."""
    n, m = D.n, D.gset.group.order
    target = n * n / m
    selector = np.zeros((n, m))
    selector[np.arange(n), D.psi_index] = 1.0
    conj_rows = D.matrix[D.conj_partner]  # row i evaluates f_hat at conj(lambda_i)
    energies = (np.abs(F @ conj_rows.T) ** 2) @ selector
    return np.all(np.abs(energies - target) <= tol * target, axis=1)


def _search_bent_spectral(X, q, tol):
    D = X.dual_basis
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    hits = []
    for idx in _chunked_indices(q**X.n):
        F = roots[_exponent_rows(idx, X.n, q)]
        hits.append(idx[_flat_energy_mask(F, D, tol)])
    return np.concatenate(hits)


def _search_bent_poinsot(X, q, tol):
    n, m = X.n, X.group.order
    projectors = [_projected_indicators(X, p) for p in range(m)]
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    hits = []
    for idx in _chunked_indices(q**n):
        F = roots[_exponent_rows(idx, n, q)]
        ok = np.ones(len(idx), dtype=bool)
        for p in range(m):
            comp = F @ projectors[p].T  # row b = psi_p-component of candidate b
            mean_sq = (m * m / n) * (np.abs(comp) ** 2).sum(axis=1)
            ok &= np.abs(mean_sq - m) <= tol * m
        hits.append(idx[ok])
    return np.concatenate(hits)


def search_bent(X, q, criterion="derivatives", tol=DEFAULT_TOL, backend=None):
    """All bent functions on X over q-th roots of unity, as exponent tuples.

    ``criterion`` is one of "derivatives", "spectral", "poinsot", or "all";
    "all" runs the three and raises CriterionMismatchError if they disagree.
    ``backend`` optionally forces the derivative kernel ("compiled"/"python").
    """
    if q < 1:
        raise ValueError("root order must be >= 1")
    _check_budget(q**X.n, f"bent search over {q}^{X.n} functions")
    impl = _select_backend(backend)
    searchers = {
        "derivatives": lambda: _search_bent_derivatives(X, q, tol, impl),
        "spectral": lambda: _search_bent_spectral(X, q, tol),
        "poinsot": lambda: _search_bent_poinsot(X, q, tol),
    }
    if criterion == "all":
        results = {name: run() for name, run in searchers.items()}
        reference = results["derivatives"]
        for name, found in results.items():
            if not np.array_equal(found, reference):
                raise CriterionMismatchError(
                    f"criteria disagree: derivatives found {len(reference)} functions, "
                    f"{name} found {len(found)}"
                )
        indices = reference
    elif criterion in searchers:
        indices = searchers[criterion]()
    else:
        raise ValueError(f"unknown criterion {criterion!r}")
    rows = _exponent_rows(indices, X.n, q)
    return [tuple(int(v) for v in row) for row in rows]


def _select_backend(backend):
    if backend is None:
        return _impl
    if backend == "python":
        return _core_py
    if backend == "compiled":
        if _core is None:
            raise RuntimeError("compiled kernel requested but the extension is not built")
        return _core
    raise ValueError(f"unknown backend {backend!r}")


# -- perfect nonlinearity search ----------------------------------------------------


def _search_pnl_direct(X, H, impl):
    act = np.ascontiguousarray(X.table[1:], dtype=np.int64)
    total = H.order**X.n
    if act.shape[0] == 0:
        return np.arange(total, dtype=np.int64)
    # diff[i, j] = index of h_i h_j^{-1}
    diff = np.ascontiguousarray(H.multiplication_table[:, H.negation_indices], dtype=np.int64)
    return impl.evenly_balanced_search(act, diff, H.order)


def _search_pnl_via_bent(X, H, tol):
    n, h = X.n, H.order
    if n % h != 0:
        return np.empty(0, dtype=np.int64)
    D = X.dual_basis
    hits = []
    for idx in _chunked_indices(h**n):
        V = _exponent_rows(idx, n, h)
        ok = np.ones(len(idx), dtype=bool)
        for p in range(1, h):
            F = H.char_table[p][V]  # xi_p composed with each candidate
            ok &= _flat_energy_mask(F, D, tol)
        hits.append(idx[ok])
    return np.concatenate(hits)


def search_pnl(X, H, criterion="direct", tol=DEFAULT_TOL, backend=None):
    """All perfect nonlinear functions from X into H, as GroupValuedFunction objects.

    ``criterion`` is "direct", "via_bent", or "all" (which cross-checks the two).
    """
    _check_budget(H.order**X.n, f"nonlinearity search over {H.order}^{X.n} functions")
    impl = _select_backend(backend)
    if criterion == "all":
        direct = _search_pnl_direct(X, H, impl)
        via = _search_pnl_via_bent(X, H, tol)
        if not np.array_equal(direct, via):
            raise CriterionMismatchError(
                f"criteria disagree: direct found {len(direct)}, via_bent found {len(via)}"
            )
        indices = direct
    elif criterion == "direct":
        indices = _search_pnl_direct(X, H, impl)
    elif criterion == "via_bent":
        indices = _search_pnl_via_bent(X, H, tol)
    else:
        raise ValueError(f"unknown criterion {criterion!r}")
    rows = _exponent_rows(indices, X.n, H.order)
    return [GroupValuedFunction(X, H, row) for row in rows]
