"""Pure-Python kernels for the hot inner loops.

`superbracket._speedups` is a compiled twin of this module with identical
semantics; `superbracket.speedups` picks whichever is importable.  Keep the
two files in lockstep.

A *factor* is a triple ``(key, parity, exp)``: an opaque totally ordered key
identifying a basis word, the word's parity (0 or 1), and a positive
exponent.  A monomial is a key-sorted tuple of factors.
"""

IMPLEMENTATION = "python"


def merge_factors(fa, fb):
    """Merge two key-sorted factor tuples into one, with the Koszul sign.

    Returns ``(sign, merged)``.  The sign is the parity of the number of
    odd-odd crossings performed by a stable merge (each factor block counts
    with parity ``parity*exp mod 2``), i.e. the sign produced by sorting the
    concatenation with adjacent transpositions.  ``sign == 0`` means the
    product vanishes because an odd factor met itself.
    """
    if not fa:
        return 1, fb
    if not fb:
        return 1, fa
    la, lb = len(fa), len(fb)
    # odd blocks remaining in fa from position i onwards
    ra = 0
    for k, p, e in fa:
        ra += p & e & 1
    out = []
    sign = 0
    i = j = 0
    while i < la and j < lb:
        ka, pa, ea = fa[i]
        kb, pb, eb = fb[j]
        if ka < kb:
            out.append(fa[i])
            ra -= pa & ea & 1
            i += 1
        elif kb < ka:
            if pb & eb & 1:
                sign ^= ra & 1
            out.append(fb[j])
            j += 1
        else:
            # same basis word on both sides
            if pa:
                return 0, ()
            out.append((ka, pa, ea + eb))
            i += 1
            j += 1
    out.extend(fa[i:])
    out.extend(fb[j:])
    return (-1 if sign & 1 else 1), tuple(out)


def odd_inversion_sign(sources, parities):
    """Sign of a permutation restricted to odd elements.

    ``sources[t]`` is the original position of the element now sitting at
    position ``t``; ``parities[t]`` its parity.  Counts the inversions whose
    two members are both odd and returns (-1)**count.
    """
    n = len(sources)
    count = 0
    for t in range(n):
        if not parities[t]:
            continue
        st = sources[t]
        for u in range(t + 1, n):
            if parities[u] and sources[u] < st:
                count += 1
    return -1 if count & 1 else 1


def rank_mod_p(rows, ncols, p):
    """Rank over GF(p) of the matrix given as an iterable of dense rows."""
    pivots = []  # list of (col, normalized row)
    rank = 0
    for row in rows:
        row = [x % p for x in row]
        for col, piv in pivots:
            f = row[col]
            if f:
                row = [(a - f * b) % p for a, b in zip(row, piv)]
        lead = -1
        for c in range(ncols):
            if row[c]:
                lead = c
                break
        if lead < 0:
            continue
        inv = pow(row[lead], p - 2, p)
        row = [(a * inv) % p for a in row]
        pivots.append((lead, row))
        rank += 1
    return rank
