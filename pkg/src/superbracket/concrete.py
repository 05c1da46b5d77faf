"""Finite-dimensional superalgebras given by structure constants.

An algebra is a pair of bilinear tables (product and bracket) over an
indexed graded basis, with an optional unit vector and a claimed theory.
Everything is exact; validation and identity checking substitute basis
vectors exhaustively, which is complete for the multilinear identities
involved.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import permutations, product as iproduct

from .core import AlgebraError, Bracket, Gen, Prod, Sum, Var, scalar, scalar_str
from . import identities

CLAIMS = ("none", "poisson", "genp", "jb", "gp")


def vzero(dim):
    return tuple([Fraction(0)] * dim)


def vbasis(dim, i):
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(dim))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    c = Fraction(c)
    return tuple(c * x for x in a)


def is_zero_vec(a):
    return all(x == 0 for x in a)


class StructureAlgebra:
    """Superalgebra from sparse multiplication tables.

    ``product`` and ``bracket`` map index pairs (i, j) to sparse rows
    [(k, coefficient), ...]; missing pairs are zero.  Tables are stored for
    every ordered pair as given; bilinearity is by construction.
    """

    def __init__(self, dim, parities, product, bracket=None, unit=None, claim="none"):
        if claim not in CLAIMS:
            raise AlgebraError(f"unknown claim {claim!r}")
        self.dim = int(dim)
        self.parities = tuple(int(p) & 1 for p in parities)
        if len(self.parities) != self.dim:
            raise AlgebraError("parity list length != dimension")
        self.product = _check_table(product, self.dim)
        self.bracket_table = _check_table(bracket or {}, self.dim)
        self.unit = tuple(Fraction(x) for x in unit) if unit is not None else None
        if self.unit is not None and len(self.unit) != self.dim:
            raise AlgebraError("unit vector length != dimension")
        self.claim = claim

    # -- bilinear operations ------------------------------------------------

    def mul(self, a, b):
        return self._apply(self.product, a, b)

    def bracket(self, a, b):
        return self._apply(self.bracket_table, a, b)

    def deriv(self, a):
        """Bracket with the unit; only defined on unital algebras."""
        if self.unit is None:
            raise AlgebraError("derivation needs a unit (none declared)")
        return self.bracket(a, self.unit)

    def _apply(self, table, a, b):
        out = [Fraction(0)] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                row = table.get((i, j))
                if not row:
                    continue
                c = ai * bj
                for k, coeff in row:
                    out[k] += c * coeff
        return tuple(out)

    def parity_of(self, v):
        """Parity of a homogeneous vector; raises when supports mix parities."""
        seen = {self.parities[i] for i, x in enumerate(v) if x}
        if len(seen) > 1:
            raise AlgebraError("vector is not parity-homogeneous")
        return seen.pop() if seen else 0

    # -- validation -----------------------------------------------------------

    def validate(self):
        """Check the structural identities and the claimed theory's axioms.

        Returns a :class:`Report`; each check carries a witness tuple on
        failure.
        """
        ops = VectorOps(self)
        basis = [vbasis(self.dim, i) for i in range(self.dim)]
        checks = []

        def run(name, arity, fn):
            for idx in iproduct(range(self.dim), repeat=arity):
                res = fn(*(basis[i] for i in idx))
                if not is_zero_vec(res):
                    checks.append(_check(name, idx, self.parities, res))
                    return
            checks.append(_check(name, None, None, None))

        run("supercommutativity", 2, lambda a, b: identities.supercommutativity_residual(ops, a, b))
        run("associativity", 3, lambda a, b, c: identities.associativity_residual(ops, a, b, c))
        if self.unit is not None:
            run("unit", 1, lambda a: identities.unit_residual(ops, self.unit, a))
        run("anticommutativity", 2, lambda a, b: identities.anticommutativity_residual(ops, a, b))
        if self.claim in ("genp", "jb"):
            if self.unit is None:
                raise AlgebraError(f"claim {self.claim!r} needs a unit for the derivation")
            run("deformed-leibniz", 3, lambda a, b, c: identities.deformed_leibniz_residual(ops, a, b, c))
            if self.claim == "genp":
                run("jacobi", 3, lambda a, b, c: identities.jacobi_residual(ops, a, b, c))
            else:
                run("deformed-jacobi", 3, lambda a, b, c: identities.deformed_jacobi_residual(ops, a, b, c))
        elif self.claim == "gp":
            run("leibniz", 3, lambda a, b, c: identities.leibniz_residual(ops, a, b, c))
        elif self.claim == "poisson":
            run("leibniz", 3, lambda a, b, c: identities.leibniz_residual(ops, a, b, c))
            run("jacobi", 3, lambda a, b, c: identities.jacobi_residual(ops, a, b, c))
        return Report(checks)

    # -- term evaluation --------------------------------------------------------

    def evaluate(self, term, bindings=None):
        """Evaluate a term tree; leaves are Var/Gen names bound to vectors.

        The generator name "1" denotes the unit when the algebra has one.
        """
        bindings = bindings or {}

        def ev(t):
            if isinstance(t, (Gen, Var)):
                if t.name in bindings:
                    return tuple(Fraction(x) for x in bindings[t.name])
                if isinstance(t, Gen) and t.name == "1":
                    if self.unit is None:
                        raise AlgebraError("term uses the unit but the algebra has none")
                    return self.unit
                raise AlgebraError(f"unbound leaf {t.name!r}")
            if isinstance(t, Prod):
                return self.mul(ev(t.left), ev(t.right))
            if isinstance(t, Bracket):
                return self.bracket(ev(t.left), ev(t.right))
            if isinstance(t, Sum):
                out = vzero(self.dim)
                for c, sub in t.terms:
                    out = vadd(out, vscale(c, ev(sub)))
                return out
            raise AlgebraError(f"not a term: {t!r}")

        return ev(term)

    def is_identity(self, term):
        """Whether the term vanishes under every basis substitution of its Vars.

        The term must be homogeneous in each Var; non-multilinear inputs are
        multilinearized first (lossless in characteristic zero).  Returns
        ``(True, None)`` or ``(False, witness_assignment)``.
        """
        term = multilinearize(term)
        names = sorted(_var_names(term))
        basis = [vbasis(self.dim, i) for i in range(self.dim)]
        for idx in iproduct(range(self.dim), repeat=len(names)):
            binding = {n: basis[i] for n, i in zip(names, idx)}
            res = self.evaluate(term, binding)
            if not is_zero_vec(res):
                return False, {
                    "assignment": dict(zip(names, idx)),
                    "residual": [scalar_str(x) for x in res],
                }
        return True, None

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "parity": list(self.parities),
            "product": _table_json(self.product),
            "bracket": _table_json(self.bracket_table),
            "claim": self.claim,
        }
        if self.unit is not None:
            out["unit"] = [scalar_str(x) for x in self.unit]
        return out

    @classmethod
    def from_json(cls, data) -> "StructureAlgebra":
        if isinstance(data, str):
            data = json.loads(data)
        unit = None
        if data.get("unit") is not None:
            unit = [scalar(str(x)) for x in data["unit"]]
        return cls(
            data["dim"],
            data["parity"],
            _table_from_json(data.get("product", {})),
            _table_from_json(data.get("bracket", {})),
            unit,
            data.get("claim", "none"),
        )


class VectorOps:
    """identities.py adapter over a structure algebra's vectors."""

    def __init__(self, algebra: StructureAlgebra):
        self.algebra = algebra

    def mul(self, a, b):
        return self.algebra.mul(a, b)

    def bracket(self, a, b):
        return self.algebra.bracket(a, b)

    def deriv(self, a):
        return self.algebra.deriv(a)

    def parity(self, a):
        return self.algebra.parity_of(a)

    def scale(self, c, a):
        return vscale(c, a)

    def add(self, a, b):
        return vadd(a, b)

    def sub(self, a, b):
        return vsub(a, b)


class Report:
    """Outcome of a validation or criteria run: one entry per identity."""

    def __init__(self, checks):
        self.checks = list(checks)

    @property
    def ok(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def failed(self):
        return [c for c in self.checks if c["status"] != "pass"]

    def to_json(self):
        return self.checks

    def __repr__(self):
        word = "ok" if self.ok else "FAIL"
        return f"<report {word}: {[c['identity'] for c in self.failed()]}>"


def _check(name, idx, parities, residual):
    if idx is None:
        return {"identity": name, "status": "pass"}
    return {
        "identity": name,
        "status": "fail",
        "witness": {
            "indices": list(idx),
            "parities": [parities[i] for i in idx],
            "residual": [scalar_str(x) for x in residual],
        },
    }


def _check_table(table, dim):
    out = {}
    for (i, j), row in table.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise AlgebraError(f"table index ({i},{j}) out of range")
        cleaned = []
        for k, coeff in row:
            if not 0 <= k < dim:
                raise AlgebraError(f"table target index {k} out of range")
            coeff = Fraction(coeff)
            if coeff:
                cleaned.append((int(k), coeff))
        if cleaned:
            out[(i, j)] = tuple(cleaned)
    return out


def _table_json(table):
    return {
        f"{i},{j}": [[k, scalar_str(c)] for k, c in row]
        for (i, j), row in sorted(table.items())
    }


def _table_from_json(data):
    out = {}
    for key, row in data.items():
        i, j = (int(x) for x in key.split(","))
        out[(i, j)] = [(int(k), scalar(str(c))) for k, c in row]
    return out


# -- multilinearization -------------------------------------------------------

def multilinearize(term):
    """Replace repeated Vars by sums over fresh labeled copies.

    Requires the term to be homogeneous in each Var (an error otherwise);
    multilinear inputs come back unchanged.
    """
    degrees = _var_degrees(term)
    for name, deg in degrees.items():
        if deg > 1:
            term = _polarize(term, name, deg)
    return term


def _var_names(term):
    if isinstance(term, Var):
        return {term.name}
    if isinstance(term, Gen):
        return set()
    if isinstance(term, (Prod, Bracket)):
        return _var_names(term.left) | _var_names(term.right)
    if isinstance(term, Sum):
        out = set()
        for _, t in term.terms:
            out |= _var_names(t)
        return out
    raise AlgebraError(f"not a term: {term!r}")


def _var_degrees(term):
    if isinstance(term, Var):
        return {term.name: 1}
    if isinstance(term, Gen):
        return {}
    if isinstance(term, (Prod, Bracket)):
        out = dict(_var_degrees(term.left))
        for n, d in _var_degrees(term.right).items():
            out[n] = out.get(n, 0) + d
        return out
    if isinstance(term, Sum):
        branch = None
        for _, t in term.terms:
            d = _var_degrees(t)
            if branch is None:
                branch = d
            elif branch != d:
                raise AlgebraError("term is not homogeneous in its variables")
        return branch or {}
    raise AlgebraError(f"not a term: {term!r}")


def _polarize(term, name, deg):
    labels = [f"{name}#{t}" for t in range(deg)]
    pieces = []
    for perm in permutations(labels):
        counter = [0]
        pieces.append((Fraction(1), _relabel(term, name, perm, counter)))
    return Sum(tuple(pieces))


def _relabel(term, name, labels, counter):
    if isinstance(term, Var):
        if term.name != name:
            return term
        idx = counter[0]
        counter[0] += 1
        return Var(labels[idx])
    if isinstance(term, Gen):
        return term
    if isinstance(term, Prod):
        return Prod(_relabel(term.left, name, labels, counter),
                    _relabel(term.right, name, labels, counter))
    if isinstance(term, Bracket):
        return Bracket(_relabel(term.left, name, labels, counter),
                       _relabel(term.right, name, labels, counter))
    if isinstance(term, Sum):
        out = []
        for c, t in term.terms:
            sub_counter = [counter[0]]
            out.append((c, _relabel(t, name, labels, sub_counter)))
        counter[0] = sub_counter[0]
        return Sum(tuple(out))
    raise AlgebraError(f"not a term: {term!r}")


# -- built-in algebras ---------------------------------------------------------

def wronskian_algebra(m: int) -> StructureAlgebra:
    """Truncated polynomial ring Q[t]/(t^m) with the d/dt Wronskian bracket.

    {t^i, t^j} = (i - j) t^{i+j-1} truncated.  Note the truncation ideal is
    not d/dt-stable, so the deformed Leibniz identity fails on triples that
    reach the boundary; the validator reports this honestly.
    """
    if m < 2:
        raise AlgebraError("need m >= 2")
    product = {}
    bracket = {}
    for i in range(m):
        for j in range(m):
            if i + j < m:
                product[(i, j)] = [(i + j, Fraction(1))]
            if i != j and 0 <= i + j - 1 < m:
                bracket[(i, j)] = [(i + j - 1, Fraction(i - j))]
    return StructureAlgebra(m, [0] * m, product, bracket, vbasis(m, 0), "genp")


def euler_wronskian_algebra(m: int) -> StructureAlgebra:
    """Q[t]/(t^m) with the Euler derivation t d/dt: {t^i,t^j} = (i-j) t^{i+j}.

    The truncation ideal is stable under t d/dt, so this one is a genuinely
    validated generalized Poisson algebra.
    """
    if m < 2:
        raise AlgebraError("need m >= 2")
    product = {}
    bracket = {}
    for i in range(m):
        for j in range(m):
            if i + j < m:
                product[(i, j)] = [(i + j, Fraction(1))]
                if i != j:
                    bracket[(i, j)] = [(i + j, Fraction(i - j))]
    return StructureAlgebra(m, [0] * m, product, bracket, vbasis(m, 0), "genp")


def zero_product_algebra(bracket, parities=None, dim=None) -> StructureAlgebra:
    """Anticommutative bracket with the zero product: always a GP algebra."""
    if dim is None:
        dim = 1 + max(max(i, j, *(k for k, _ in row)) for (i, j), row in bracket.items())
    parities = list(parities) if parities is not None else [0] * dim
    alg = StructureAlgebra(dim, parities, {}, bracket, None, "gp")
    ops = VectorOps(alg)
    for i in range(dim):
        for j in range(dim):
            res = identities.anticommutativity_residual(
                ops, vbasis(dim, i), vbasis(dim, j)
            )
            if not is_zero_vec(res):
                raise AlgebraError(f"bracket table not anticommutative at ({i},{j})")
    return alg


def nonlie_example_algebra() -> StructureAlgebra:
    """Three-dimensional anticommutative non-Lie algebra with zero product.

    {e1,e2} = e2, {e1,e3} = e3, {e2,e3} = e1; the Jacobiator on (e1,e2,e3)
    is 2 e1, so the bracket is not a Lie bracket.
    """
    one = Fraction(1)
    bracket = {
        (0, 1): [(1, one)], (1, 0): [(1, -one)],
        (0, 2): [(2, one)], (2, 0): [(2, -one)],
        (1, 2): [(0, one)], (2, 1): [(0, -one)],
    }
    return zero_product_algebra(bracket, dim=3)


def zero_bracket_poisson(m: int) -> StructureAlgebra:
    """Q[t]/(t^m) with the zero bracket: a degenerate Poisson algebra."""
    product = {}
    for i in range(m):
        for j in range(m):
            if i + j < m:
                product[(i, j)] = [(i + j, Fraction(1))]
    return StructureAlgebra(m, [0] * m, product, {}, vbasis(m, 0), "poisson")


def adjoin_unit(algebra: StructureAlgebra, claim=None) -> StructureAlgebra:
    """Adjoin a unit acting as identity, bracketing to zero.

    Plain Leibniz survives unit adjunction, so a GP algebra stays GP.
    """
    if algebra.unit is not None:
        raise AlgebraError("algebra already has a unit")
    d = algebra.dim + 1
    product = {(0, 0): [(0, Fraction(1))]}
    for i in range(algebra.dim):
        product[(0, i + 1)] = [(i + 1, Fraction(1))]
        product[(i + 1, 0)] = [(i + 1, Fraction(1))]
    for (i, j), row in algebra.product.items():
        product[(i + 1, j + 1)] = [(k + 1, c) for k, c in row]
    bracket = {
        (i + 1, j + 1): [(k + 1, c) for k, c in row]
        for (i, j), row in algebra.bracket_table.items()
    }
    return StructureAlgebra(
        d,
        (0,) + algebra.parities,
        product,
        bracket,
        vbasis(d, 0),
        claim or algebra.claim,
    )


def untwisted_algebra(algebra: StructureAlgebra, claim="jb") -> StructureAlgebra:
    """Inverse derivation twist on the tables: bracket + (aD(b) - D(a)b)/2.

    Applied to a generalized Poisson algebra this produces a Jordan-bracket
    algebra (distinguished derivation halves).  Requires a unit and checks
    that the derivation a -> {a,1} really derives the product.
    """
    if algebra.unit is None:
        raise AlgebraError("untwisting needs a unit")
    basis = [vbasis(algebra.dim, i) for i in range(algebra.dim)]
    for a in basis:
        for b in basis:
            lhs = algebra.deriv(algebra.mul(a, b))
            rhs = vadd(algebra.mul(algebra.deriv(a), b), algebra.mul(a, algebra.deriv(b)))
            if not is_zero_vec(vsub(lhs, rhs)):
                raise AlgebraError("bracket-with-unit is not a derivation of the product")
    half = Fraction(1, 2)
    bracket = {}
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            corr = vsub(
                algebra.mul(basis[i], algebra.deriv(basis[j])),
                algebra.mul(algebra.deriv(basis[i]), basis[j]),
            )
            vec = vadd(algebra.bracket(basis[i], basis[j]), vscale(half, corr))
            row = [(k, c) for k, c in enumerate(vec) if c]
            if row:
                bracket[(i, j)] = row
    return StructureAlgebra(
        algebra.dim, algebra.parities, dict(algebra.product), bracket,
        algebra.unit, claim,
    )


def load_algebra(path) -> StructureAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return StructureAlgebra.from_json(json.load(fh))


def dump_algebra(algebra: StructureAlgebra, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra.to_json(), fh, indent=1)
