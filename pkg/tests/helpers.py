"""Shared test utilities: random element generators and independent oracles.

The oracles here deliberately avoid the package's straightening machinery:
signs come from brute-force bubble sorts, Lie brackets are evaluated in
(super) matrix algebras, and multilinear dimensions come from expanding raw
bracketings inside the free associative superalgebra.
"""

from fractions import Fraction
from itertools import permutations

from superbracket.core import Alphabet
from superbracket.engine import FreeAlgebra
from superbracket.speedups import rank_mod_p

PRIME = 2_147_483_647


def sgn(bit):
    return -1 if (bit & 1) else 1


def max_word_degree(element):
    return max(
        (sum(key[0] * exp for key, _, exp in m) for m in element.terms),
        default=0,
    )


def random_homogeneous(algebra, rng, max_degree=5, max_terms=3):
    """Random parity-homogeneous element of word degree <= max_degree."""
    alphabet = algebra.alphabet
    if not hasattr(algebra, "basis"):
        return _random_tree_homogeneous(algebra, rng, max_degree, max_terms)
    for _ in range(100):
        degs = [0] * alphabet.size
        for _ in range(rng.randint(1, max_degree)):
            degs[rng.randrange(alphabet.size)] += 1
        monos = algebra.basis(tuple(degs))
        if not monos:
            continue
        picks = rng.sample(monos, min(len(monos), rng.randint(1, max_terms)))
        coeffs = [Fraction(rng.choice([1, 2, 3, -1, -2]), rng.choice([1, 1, 2])) for _ in picks]
        el = algebra.element(zip(coeffs, picks))
        if not el.is_zero():
            return el
    raise AssertionError("could not sample a random element")


def _random_tree_homogeneous(algebra, rng, max_degree, max_terms):
    """Sample by evaluating random trees over one leaf multiset, which keeps
    every term in a single multidegree (hence one parity)."""
    names = list(algebra.alphabet.names())

    def build(leaves):
        if len(leaves) == 1:
            return algebra.gen(leaves[0])
        cut = rng.randint(1, len(leaves) - 1)
        left, right = build(leaves[:cut]), build(leaves[cut:])
        return algebra.mul(left, right) if rng.random() < 0.5 else algebra.bracket(left, right)

    for _ in range(100):
        leaves = [rng.choice(names) for _ in range(rng.randint(1, max_degree))]
        total = algebra.zero()
        for _ in range(rng.randint(1, max_terms)):
            shuffled = leaves[:]
            rng.shuffle(shuffled)
            total = total + build(shuffled).scale(
                Fraction(rng.choice([1, 2, -1]), rng.choice([1, 2]))
            )
        if not total.is_zero():
            return total
    raise AssertionError("could not sample a random element")


def random_term(alphabet, rng, depth=3, allow_unit=True):
    """Random raw term tree over the alphabet."""
    from superbracket.core import Bracket, Gen, Prod

    names = list(alphabet.names())
    if allow_unit:
        names.append(alphabet.unit.name)
    if depth == 0 or rng.random() < 0.35:
        return Gen(rng.choice(names))
    left = random_term(alphabet, rng, depth - 1, allow_unit)
    right = random_term(alphabet, rng, depth - 1, allow_unit)
    return Prod(left, right) if rng.random() < 0.5 else Bracket(left, right)


# -- bubble-sort sign oracle ---------------------------------------------------

def bubble_shuffle_sign(parities, order):
    """Sign of sorting ``order`` ascending, one adjacent swap at a time,
    flipping the sign whenever both swapped entries are odd."""
    arr = list(order)
    par = {src: parities[src] for src in order}
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(arr) - 1):
            if arr[i] > arr[i + 1]:
                if par[arr[i]] and par[arr[i + 1]]:
                    sign = -sign
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                changed = True
    return sign


# -- (super) matrix oracles ------------------------------------------------------

def random_matrix(rng, n, parity=None, block=None):
    """Random rational matrix; with block = (p, q) and a parity, the matrix
    is block-diagonal (even) or block-off-diagonal (odd) for gl(p|q)."""
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if block is not None:
                p, _ = block
                even_cell = (i < p) == (j < p)
                if parity == 0 and not even_cell:
                    continue
                if parity == 1 and even_cell:
                    continue
            mat[i][j] = Fraction(rng.randint(-3, 3))
    return mat


def mat_mul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_zero(n):
    return [[Fraction(0)] * n for _ in range(n)]


def mat_is_zero(a):
    return all(x == 0 for row in a for x in row)


def super_commutator(a, b, pa, pb):
    """ab - (-1)^{|a||b|} ba."""
    return mat_add(mat_mul(a, b), mat_scale(-sgn(pa & pb), mat_mul(b, a)))


def eval_word_in_matrices(alphabet, word, assignment):
    """Evaluate a raw bracket word with generators mapped to graded matrices.

    Returns (matrix, parity).  The assignment maps generator index to a
    matrix of the generator's parity.
    """
    if isinstance(word, int):
        return assignment[word], alphabet.parities[word]
    (ml, pl) = eval_word_in_matrices(alphabet, word[0], assignment)
    (mr, pr) = eval_word_in_matrices(alphabet, word[1], assignment)
    return super_commutator(ml, mr, pl, pr), (pl + pr) & 1


def eval_combination_in_matrices(alphabet, combo, assignment, n):
    out = mat_zero(n)
    for w, c in combo.items():
        out = mat_add(out, mat_scale(c, eval_word_in_matrices(alphabet, w.word, assignment)[0]))
    return out


# -- free-Lie multilinear dimension oracle ------------------------------------------

def all_binary_trees(labels):
    if len(labels) == 1:
        yield labels[0]
        return
    for i in range(1, len(labels)):
        for left in all_binary_trees(labels[:i]):
            for right in all_binary_trees(labels[i:]):
                yield (left, right)


def tensor_expand(tree, parities):
    """Expand a bracketing into the free associative superalgebra.

    Returns ({word tuple: coefficient}, parity) with [a,b] = ab - (-1)^{|a||b|} ba.
    """
    if not isinstance(tree, tuple):
        return {(tree,): 1}, parities[tree]
    left, pl = tensor_expand(tree[0], parities)
    right, pr = tensor_expand(tree[1], parities)
    out = {}
    s = sgn(pl & pr)
    for wl, cl in left.items():
        for wr, cr in right.items():
            out[wl + wr] = out.get(wl + wr, 0) + cl * cr
            out[wr + wl] = out.get(wr + wl, 0) - s * cl * cr
    return {w: c for w, c in out.items() if c}, (pl + pr) & 1


def multilinear_lie_dimension(n, parities=None):
    """Rank of the span of all multilinear bracketings of n letters inside
    the tensor algebra, computed modulo a large prime."""
    parities = parities or [0] * n
    letters = list(range(n))
    columns = {word: i for i, word in enumerate(permutations(letters))}
    rows = []
    for perm in permutations(letters):
        for tree in all_binary_trees(list(perm)):
            expansion, _ = tensor_expand(tree, parities)
            row = [0] * len(columns)
            for word, coeff in expansion.items():
                row[columns[word]] = coeff % PRIME
            rows.append(row)
    return rank_mod_p(rows, len(columns), PRIME)


# -- identity residual shortcuts over a free algebra ----------------------------------

def free_ops(algebra):
    from superbracket.identities import ElementOps

    return ElementOps(algebra)


def standard_algebra(theory, names=("x1", "x2", "x3"), odd=("th",), max_degree=None):
    gens = [(n, 0) for n in names] + [(n, 1) for n in odd]
    return FreeAlgebra(Alphabet(gens), theory, max_degree=max_degree)


def find_multilinear_identities(struct, letters, unit_counts=(0, 1, 2), max_results=12):
    """Multilinear identities of a structure algebra, by exact nullspace.

    Candidates are the free-engine basis monomials multilinear in the
    letters with the given unit multiplicities; rows of the system are the
    evaluations on all basis assignments.  Returns PoissonPolynomial values
    whose identity terms vanish on the algebra by construction.
    """
    from superbracket import linalg
    from superbracket.farkas import PoissonPolynomial
    from superbracket.engine import GENP
    from superbracket.concrete import vbasis

    algebra = FreeAlgebra(Alphabet([(n, 0) for n in letters]), GENP)
    candidates = []
    for k in unit_counts:
        degs = [k] + [1] * len(letters)
        candidates.extend(algebra.basis(tuple(degs)))
    cols = len(candidates)
    rows = []
    from itertools import product as iproduct

    basis_vecs = [vbasis(struct.dim, i) for i in range(struct.dim)]
    for assignment in iproduct(range(struct.dim), repeat=len(letters)):
        bindings = {n: basis_vecs[i] for n, i in zip(letters, assignment)}
        evaluated = []
        for mono in candidates:
            term = algebra.element_to_term(algebra.element([(1, mono)]))
            evaluated.append(struct.evaluate(term, bindings))
        for coord in range(struct.dim):
            rows.append([vec[coord] for vec in evaluated])
    out = []
    for v in linalg.nullspace(rows, cols):
        el = algebra.element(zip(v, candidates))
        if not el.is_zero():
            out.append(PoissonPolynomial(algebra, el, tuple(letters)))
        if len(out) >= max_results:
            break
    return out
