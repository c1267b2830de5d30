"""Problem files: JSON descriptions of a group, an action, and optionally a function.

Schema (unknown keys are rejected)::

    {
      "group": [2, 2],                      // invariant factors; [] = trivial group
      "action": {
        "points": 6,
        "generators": {                     // one permutation per generator e1..ek
          "e1": [0, 1, 3, 2, 5, 4],
          "e2": [1, 0, 2, 3, 5, 4]
        }
      },
      "function": {                         // optional; one of three kinds
        "kind": "roots_of_unity", "order": 3, "exponents": [0, 1, 0, 1, 0, 1]
        // "kind": "complex", "values": [[re, im], ...]
        // "kind": "group_valued", "codomain": [3], "values": [[0], [1], ...]
      },
      "tolerance": 1e-9                     // optional
    }

Machine-readable reports render every float with 17 significant digits and
every complex number as an (re, im) pair, so output round-trips exactly and
repeated runs are byte-identical.
"""

import json

import numpy as np

from .analysis import GroupValuedFunction
from .groups import DEFAULT_TOL, FiniteAbelianGroup
from .gsets import GSet, roots_of_unity_function


class ProblemFileError(ValueError):
    """Raised for malformed or invalid problem files."""


class Problem:
    """Parsed problem file: a G-set plus an optional function on it."""

    def __init__(self, gset, function=None, function_kind=None, tolerance=DEFAULT_TOL):
        self.gset = gset
        self.function = function
        self.function_kind = function_kind
        self.tolerance = tolerance

    def require_function(self, kinds=("roots_of_unity", "complex")):
        if self.function is None:
            raise ProblemFileError("this subcommand needs a \"function\" entry in the problem file")
        if self.function_kind not in kinds:
            raise ProblemFileError(
                f"this subcommand needs a function of kind {' or '.join(kinds)}, "
                f"got {self.function_kind}"
            )
        return self.function


def _expect_keys(mapping, required, optional, where):
    if not isinstance(mapping, dict):
        raise ProblemFileError(f"{where} must be an object")
    unknown = set(mapping) - set(required) - set(optional)
    if unknown:
        raise ProblemFileError(f"unknown keys in {where}: {sorted(unknown)}")
    missing = [k for k in required if k not in mapping]
    if missing:
        raise ProblemFileError(f"missing keys in {where}: {missing}")


def _parse_function(entry, gset):
    _expect_keys(entry, ["kind"], ["order", "exponents", "values", "codomain"], '"function"')
    kind = entry["kind"]
    n = gset.n
    if kind == "roots_of_unity":
        _expect_keys(entry, ["kind", "order", "exponents"], [], 'function of kind "roots_of_unity"')
        q = entry["order"]
        exps = entry["exponents"]
        if not isinstance(q, int) or q < 1:
            raise ProblemFileError('"order" must be a positive integer')
        if not isinstance(exps, list) or len(exps) != n:
            raise ProblemFileError(f'"exponents" must be a list of {n} integers')
        return roots_of_unity_function(exps, q), kind
    if kind == "complex":
        _expect_keys(entry, ["kind", "values"], [], 'function of kind "complex"')
        pairs = entry["values"]
        if not isinstance(pairs, list) or len(pairs) != n:
            raise ProblemFileError(f'"values" must be a list of {n} (re, im) pairs')
        try:
            values = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
        except (TypeError, ValueError) as exc:
            raise ProblemFileError(f'bad complex pair in "values": {exc}') from None
        return values, kind
    if kind == "group_valued":
        _expect_keys(entry, ["kind", "codomain", "values"], [], 'function of kind "group_valued"')
        try:
            codomain = FiniteAbelianGroup(entry["codomain"])
        except (TypeError, ValueError) as exc:
            raise ProblemFileError(f'bad "codomain": {exc}') from None
        tuples = entry["values"]
        if not isinstance(tuples, list) or len(tuples) != n:
            raise ProblemFileError(f'"values" must be a list of {n} element tuples')
        try:
            return GroupValuedFunction.from_tuples(gset, codomain, tuples), kind
        except (TypeError, ValueError) as exc:
            raise ProblemFileError(f'bad group-valued function: {exc}') from None
    raise ProblemFileError(f'unknown function kind {kind!r}')


def parse_problem(text):
    """Parse and validate problem-file text; raises ProblemFileError with positions."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    _expect_keys(data, ["group", "action"], ["function", "tolerance"], "the problem file")
    try:
        group = FiniteAbelianGroup(data["group"])
    except (TypeError, ValueError) as exc:
        raise ProblemFileError(f'bad "group": {exc}') from None
    _expect_keys(data["action"], ["points", "generators"], [], '"action"')
    points = data["action"]["points"]
    if not isinstance(points, int) or points < 1:
        raise ProblemFileError('"points" must be a positive integer')
    generators = data["action"]["generators"]
    if not isinstance(generators, dict):
        raise ProblemFileError('"generators" must map "e1".."ek" to permutations')
    try:
        gset = GSet.from_generators(group, points, generators)
    except ValueError as exc:
        raise ProblemFileError(f"invalid action: {exc}") from None
    tolerance = data.get("tolerance", DEFAULT_TOL)
    if not isinstance(tolerance, (int, float)) or tolerance <= 0:
        raise ProblemFileError('"tolerance" must be a positive number')
    function = kind = None
    if "function" in data:
        function, kind = _parse_function(data["function"], gset)
    return Problem(gset, function, kind, float(tolerance))


def load_problem(path):
    """Read and parse a problem file from disk."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_problem(text)


# -- deterministic report rendering ------------------------------------------------


def _format_float(x):
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"cannot serialize non-finite float {x}")
    return format(float(x), ".17g")


def render_json(obj):
    """Render a report as JSON with floats at 17 significant digits.

    Key order follows insertion order and floats are formatted identically
    across runs, so equal reports serialize to identical bytes.
    """
    pieces = []
    _render(obj, pieces)
    return "".join(pieces)


def _render(obj, out):
    if isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(key)))
            out.append(": ")
            _render(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, value in enumerate(obj):
            if i:
                out.append(", ")
            _render(value, out)
        out.append("]")
    elif isinstance(obj, bool) or obj is None:
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (complex, np.complexfloating)):
        _render([obj.real, obj.imag], out)
    elif isinstance(obj, (float, np.floating)):
        out.append(_format_float(obj))
    elif isinstance(obj, np.ndarray):
        _render(obj.tolist(), out)
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} in a report")


def complex_pairs(values):
    """List of (re, im) pairs for a complex vector, ready for render_json."""
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=np.complex128)]
