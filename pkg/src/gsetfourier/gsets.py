"""Finite G-sets with validated action tables, and the unitary space C^X.

Functions on a G-set are plain complex vectors indexed by point order; the
inner product is <f,g> = sum_x f(x) conj(g(x)).
"""

from functools import cached_property

import numpy as np

from .groups import DEFAULT_TOL


class ActionError(ValueError):
    """Raised when a table or generator set does not define a group action."""


class GSet:
    """A finite set of n points with an action of a finite abelian group.

    The action is stored as a full (order, n) table: ``table[a, x]`` is the
    index of alpha_a . x. Instances are immutable after validation and safe
    to share across threads.
    """

    def __init__(self, group, table, validate=True):
        self.group = group
        self.table = np.ascontiguousarray(table, dtype=np.int64)
        if self.table.ndim != 2 or self.table.shape[0] != group.order:
            raise ActionError(
                f"action table must have shape ({group.order}, n), got {self.table.shape}"
            )
        self.n = int(self.table.shape[1])
        if self.n < 1:
            raise ActionError("a G-set needs at least one point")
        self.table.setflags(write=False)
        if validate:
            self._validate()

    # -- construction ----------------------------------------------------------

    @classmethod
    def from_generators(cls, group, n, generator_images):
        """Build a G-set from one permutation per canonical generator e_1..e_k.

        ``generator_images`` is either a sequence of k permutations (image
        lists, 0-indexed) or a mapping with keys "e1".."ek". The generator
        e_j is the element with residue 1 in position j and 0 elsewhere.
        """
        k = group.rank
        if isinstance(generator_images, dict):
            missing = [f"e{j + 1}" for j in range(k) if f"e{j + 1}" not in generator_images]
            if missing:
                raise ActionError(f"missing generator permutations: {', '.join(missing)}")
            extra = set(generator_images) - {f"e{j + 1}" for j in range(k)}
            if extra:
                raise ActionError(f"unknown generator keys: {sorted(extra)}")
            perms = [generator_images[f"e{j + 1}"] for j in range(k)]
        else:
            perms = list(generator_images)
            if len(perms) != k:
                raise ActionError(f"expected {k} generator permutations, got {len(perms)}")

        gens = []
        for j, perm in enumerate(perms):
            perm = np.asarray(perm, dtype=np.int64)
            if perm.shape != (n,) or not _is_permutation(perm, n):
                raise ActionError(f"generator e{j + 1} image is not a permutation of {n} points")
            gens.append(perm)

        identity = np.arange(n, dtype=np.int64)
        for j, (perm, d) in enumerate(zip(gens, group.invariants)):
            power = identity
            for _ in range(d):
                power = perm[power]
            if not np.array_equal(power, identity):
                raise ActionError(f"generator e{j + 1} raised to order {d} is not the identity")
        for i in range(k):
            for j in range(i + 1, k):
                if not np.array_equal(gens[i][gens[j]], gens[j][gens[i]]):
                    raise ActionError(f"generators e{i + 1} and e{j + 1} do not commute")

        table = np.empty((group.order, n), dtype=np.int64)
        for a, residues in enumerate(group.elements):
            row = identity
            for perm, r in zip(gens, residues):
                for _ in range(int(r)):
                    row = perm[row]
            table[a] = row
        return cls(group, table)

    @classmethod
    def from_table(cls, group, table):
        """Build a G-set from a full action table, validating the axioms."""
        return cls(group, table)

    def _validate(self):
        m, n = self.group.order, self.n
        if self.table.min() < 0 or self.table.max() >= n:
            raise ActionError("action table entries must be point indices in [0, n)")
        identity = np.arange(n, dtype=np.int64)
        if not np.array_equal(self.table[0], identity):
            raise ActionError("identity row of the action table is not the identity permutation")
        for a in range(m):
            if not _is_permutation(self.table[a], n):
                raise ActionError(
                    f"row for element {self.group.element(a)} is not a permutation"
                )
        mul = self.group.multiplication_table
        for a in range(m):
            # (alpha beta) x == alpha (beta x) for all beta, x at once
            if not np.array_equal(self.table[mul[a]], self.table[a][self.table]):
                raise ActionError(
                    f"action is not compatible with the group law at element {self.group.element(a)}"
                )

    def __repr__(self):
        return f"GSet({self.group!r}, n={self.n})"

    # -- structure ---------------------------------------------------------------

    @cached_property
    def orbits(self):
        """Partition of the points under the action, each orbit sorted, ordered by minimum."""
        seen = np.zeros(self.n, dtype=bool)
        orbits = []
        for x in range(self.n):
            if seen[x]:
                continue
            orbit = np.unique(self.table[:, x])
            seen[orbit] = True
            orbits.append(tuple(int(y) for y in orbit))
        return orbits

    @cached_property
    def kernel_indices(self):
        """Indices of group elements acting as the identity permutation."""
        identity = np.arange(self.n, dtype=np.int64)
        return tuple(a for a in range(self.group.order) if np.array_equal(self.table[a], identity))

    def is_faithful(self):
        return self.kernel_indices == (0,)

    def stabilizer_indices(self, x):
        """Indices of group elements fixing the point ``x``."""
        return tuple(int(a) for a in np.nonzero(self.table[:, x] == x)[0])

    # -- action on functions --------------------------------------------------------

    def _check_function(self, f):
        f = np.asarray(f, dtype=np.complex128)
        if f.shape != (self.n,):
            raise ValueError(f"function must have length {self.n}, got shape {f.shape}")
        return f

    def act(self, alpha, f):
        """(alpha f)(x) = f(alpha^{-1} x) for an element given by index or tuple."""
        a = alpha if isinstance(alpha, (int, np.integer)) else self.group.element_index(alpha)
        f = self._check_function(f)
        return f[self.table[self.group.negation_indices[a]]]

    def convolve(self, sigma, f):
        """Group-to-set convolution: (sigma * f)(x) = sum_a sigma(a) f(a^{-1} x)."""
        sigma = np.asarray(sigma, dtype=np.complex128)
        if sigma.shape != (self.group.order,):
            raise ValueError(
                f"group function must have length {self.group.order}, got shape {sigma.shape}"
            )
        f = self._check_function(f)
        translated = f[self.table[self.group.negation_indices]]  # (m, n), row a = f(a^{-1} x)
        return sigma @ translated

    @cached_property
    def dual_basis(self):
        """The canonical dual basis of C^X (built once per G-set and cached)."""
        from .spectral import build_dual_basis

        return build_dual_basis(self)


def make_gset(group, n, generator_images):
    """Build a G-set from generator permutations (see GSet.from_generators)."""
    return GSet.from_generators(group, n, generator_images)


def _is_permutation(row, n):
    return np.array_equal(np.sort(row), np.arange(n, dtype=np.int64))


# -- the unitary space C^X ------------------------------------------------------


def inner(f, g):
    """<f, g> = sum_x f(x) conj(g(x))."""
    f = np.asarray(f, dtype=np.complex128)
    g = np.asarray(g, dtype=np.complex128)
    if f.shape != g.shape:
        raise ValueError(f"length mismatch: {f.shape} vs {g.shape}")
    return complex(np.vdot(g, f))


def norm(f):
    """Length |f| = sqrt(<f, f>)."""
    return float(np.linalg.norm(np.asarray(f, dtype=np.complex128)))


def distance(f, g):
    """d(f, g) = |f - g|."""
    f = np.asarray(f, dtype=np.complex128)
    g = np.asarray(g, dtype=np.complex128)
    if f.shape != g.shape:
        raise ValueError(f"length mismatch: {f.shape} vs {g.shape}")
    return float(np.linalg.norm(f - g))


def set_distance(f, functions):
    """Minimum distance from ``f`` to a nonempty collection of functions."""
    functions = list(functions)
    if not functions:
        raise ValueError("set_distance needs a nonempty collection")
    return min(distance(f, g) for g in functions)


def is_unitary(f, tol=DEFAULT_TOL):
    """True when every value of ``f`` has modulus 1 within ``tol``."""
    f = np.asarray(f, dtype=np.complex128)
    return bool(np.max(np.abs(np.abs(f) - 1.0)) <= tol)


def indicator(n, x):
    """Characteristic function of the point ``x`` in an n-point set."""
    f = np.zeros(n, dtype=np.complex128)
    f[x] = 1.0
    return f


def roots_of_unity_function(exponents, q):
    """Materialize x -> exp(2 pi i e(x) / q) from an integer exponent vector."""
    if q < 1:
        raise ValueError("root order must be >= 1")
    exponents = np.asarray(exponents, dtype=np.int64) % q
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    return roots[exponents]
