"""Exact linear algebra over the rationals.

Everything here works on tuples of ``fractions.Fraction`` (vectors) and
tuples of such tuples (matrices, row-major).  No floating point: cone
membership and Zariski coefficients are decided by exact comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def vec(entries) -> Vec:
    return tuple(Fraction(x) for x in entries)


def mat(rows) -> Mat:
    return tuple(vec(r) for r in rows)


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def matvec(m, v) -> Vec:
    return tuple(dot(row, v) for row in m)


def add(u, v) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u, v) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def scale(c, v) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in v)


def is_zero(v) -> bool:
    return all(a == 0 for a in v)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else abs(a or b)


def primitive_integer_vector(v) -> tuple[int, ...]:
    """Scale a nonzero rational vector by a positive constant to the
    primitive integer vector on the same ray."""
    if is_zero(v):
        raise ValueError("zero vector has no primitive representative")
    den = 1
    for a in v:
        den = lcm(den, Fraction(a).denominator)
    ints = [int(Fraction(a) * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    return tuple(a // g for a in ints)


def solve(a_rows, b) -> Vec | None:
    """One solution of A x = b, or None if inconsistent.

    Free variables are set to zero.  A is given by rows, all exact.
    """
    m = len(a_rows)
    if m == 0:
        return ()
    n = len(a_rows[0])
    aug = [list(map(Fraction, row)) + [Fraction(bv)]
           for row, bv in zip(a_rows, b, strict=True)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for row, col in pivots:
        x[col] = aug[row][n]
    return tuple(x)


def kernel_basis(a_rows, n: int | None = None) -> list[Vec]:
    """Basis of {x : A x = 0}."""
    m = len(a_rows)
    if n is None:
        if m == 0:
            raise ValueError("dimension required for empty system")
        n = len(a_rows[0])
    if m == 0:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    red = [list(map(Fraction, row)) for row in a_rows]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if red[i][c] != 0), None)
        if pr is None:
            continue
        red[r], red[pr] = red[pr], red[r]
        pv = red[r][c]
        red[r] = [x / pv for x in red[r]]
        for i in range(m):
            if i != r and red[i][c] != 0:
                f = red[i][c]
                red[i] = [x - f * y for x, y in zip(red[i], red[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        x = [Fraction(0)] * n
        x[fc] = Fraction(1)
        for row, col in enumerate(pivots):
            x[col] = -red[row][fc]
        basis.append(tuple(x))
    return basis


def rank(a_rows) -> int:
    if not a_rows:
        return 0
    n = len(a_rows[0])
    return n - len(kernel_basis(a_rows, n))


def det(m_rows) -> Fraction:
    n = len(m_rows)
    a = [list(map(Fraction, row)) for row in m_rows]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            sign = -sign
        result *= a[c][c]
        pv = a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / pv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return sign * result


def congruent_diagonal(m_rows) -> list[Fraction]:
    """Diagonal of a matrix congruent to the symmetric input.

    Symmetric Gaussian elimination over Q; by Sylvester's law the signs of
    the returned entries give the signature.
    """
    n = len(m_rows)
    a = [list(map(Fraction, row)) for row in m_rows]
    diag: list[Fraction] = []
    for i in range(n):
        if a[i][i] == 0:
            swap = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if swap is not None:
                a[i], a[swap] = a[swap], a[i]
                for row in a:
                    row[i], row[swap] = row[swap], row[i]
            else:
                off = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if off is None:
                    diag.append(Fraction(0))
                    continue
                # a[i][i] == a[off][off] == 0, a[i][off] != 0: adding row/col
                # `off` to `i` makes the pivot 2*a[i][off] != 0.
                for k in range(n):
                    a[i][k] += a[off][k]
                for row in a:
                    row[i] += row[off]
        pv = a[i][i]
        diag.append(pv)
        for j in range(i + 1, n):
            if a[i][j] != 0:
                f = a[i][j] / pv
                for k in range(n):
                    a[j][k] -= f * a[i][k]
                for row in a:
                    row[j] -= f * row[i]
    return diag


def signature(m_rows) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric rational matrix."""
    diag = congruent_diagonal(m_rows)
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    return pos, neg, len(diag) - pos - neg


def is_negative_definite(m_rows) -> bool:
    if not m_rows:
        return True
    pos, neg, zero = signature(m_rows)
    return pos == 0 and zero == 0


def is_negative_semidefinite(m_rows) -> bool:
    if not m_rows:
        return True
    pos, _, _ = signature(m_rows)
    return pos == 0


def solve_nonneg_combination(columns, target) -> list[Fraction] | None:
    """Exact feasibility of  sum_i x_i * columns[i] = target,  x_i >= 0.

    Phase-one simplex with Bland's rule over Fractions.  Returns one
    feasible coefficient vector, or None.
    """
    k = len(columns)
    if k == 0:
        return [] if is_zero(target) else None
    n = len(target)
    # rows: n equations, variables: k originals + n artificials
    rows = []
    rhs = []
    for i in range(n):
        row = [Fraction(c[i]) for c in columns]
        b = Fraction(target[i])
        if b < 0:
            row = [-x for x in row]
            b = -b
        rows.append(row)
        rhs.append(b)
    total = k + n
    tableau = []
    for i in range(n):
        art = [Fraction(0)] * n
        art[i] = Fraction(1)
        tableau.append(rows[i] + art + [rhs[i]])
    basis = [k + i for i in range(n)]
    # objective: minimize sum of artificials; reduced costs start as
    # -(sum of constraint rows) over the original columns
    obj = [Fraction(0)] * (total + 1)
    for i in range(n):
        for j in range(total + 1):
            obj[j] -= tableau[i][j]
    for j in range(k, total):
        obj[j] += Fraction(1)

    while True:
        enter = next((j for j in range(total) if obj[j] < 0), None)
        if enter is None:
            break
        ratios = [(tableau[i][total] / tableau[i][enter], i)
                  for i in range(n) if tableau[i][enter] > 0]
        if not ratios:
            # unbounded phase-one cannot happen with artificial basis
            return None
        best = min(r for r, _ in ratios)
        # Bland: break ratio ties on the smallest basic-variable index
        leave = min((i for r, i in ratios if r == best), key=lambda i: basis[i])
        pv = tableau[leave][enter]
        tableau[leave] = [x / pv for x in tableau[leave]]
        for i in range(n):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, tableau[leave])]
        basis[leave] = enter

    if -obj[total] != 0:
        return None
    x = [Fraction(0)] * k
    for i, bv in enumerate(basis):
        if bv < k:
            x[bv] = tableau[i][total]
    return x
