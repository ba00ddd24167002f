"""Exact rational linear algebra and feasibility.

Everything here works over ``fractions.Fraction`` (or int); no floats.
Conventions:

* A *row* of length ``k`` is a linear form over ``k`` variables.
* Affine constraint rows carry their constant as the LAST entry:
  ``(a_1, ..., a_n, c)`` encodes ``a . x + c (>|>=|=) 0``.  Homogeneous
  systems simply pass ``c = 0`` rows (or use all entries as variables).
"""

from fractions import Fraction
from math import gcd


F0 = Fraction(0)
F1 = Fraction(1)


def frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def vec_sub(a, b):
    return tuple(frac(x) - frac(y) for x, y in zip(a, b))


def vec_add(a, b):
    return tuple(frac(x) + frac(y) for x, y in zip(a, b))


def vec_scale(a, s):
    s = frac(s)
    return tuple(frac(x) * s for x in a)


def dot(a, b):
    return sum((frac(x) * frac(y) for x, y in zip(a, b)), F0)


def mat_vec(rows, v):
    return tuple(dot(r, v) for r in rows)


def mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(dot(ra, cb) for cb in bt) for ra in a)


def primitive_int_row(row):
    """Scale a rational row by a positive rational to coprime integers."""
    row = [frac(x) for x in row]
    if all(x == 0 for x in row):
        return tuple(0 for _ in row)
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return tuple(v // g for v in ints)


def rref(rows):
    """Reduced row echelon form; zero rows removed; returns (rows, pivots)."""
    mat = [list(map(frac, r)) for r in rows]
    if not mat:
        return (), ()
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    out = tuple(tuple(row) for row in mat[:r])
    return out, tuple(pivots)


def rank(rows):
    return len(rref(rows)[0])


def nullspace(rows, ncols=None):
    """Basis of {x : rows . x = 0} as tuple of tuples."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for empty system")
        return tuple(
            tuple(F1 if i == j else F0 for i in range(ncols)) for j in range(ncols)
        )
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F0] * ncols
        v[fc] = F1
        for r, pc in zip(red, pivots):
            v[pc] = -r[fc]
        basis.append(tuple(v))
    return tuple(basis)


def solve_unique(a_rows, b):
    """Solve A x = b when A is square nonsingular; None otherwise."""
    n = len(a_rows)
    aug = [list(map(frac, r)) + [frac(bv)] for r, bv in zip(a_rows, b)]
    red, pivots = rref(aug)
    if len(red) != n or any(p >= n for p in pivots):
        return None
    if list(pivots) != list(range(n)):
        return None
    return tuple(row[n] for row in red)


def solve_affine(rows, rhs):
    """General solution of rows . x = rhs: (particular, nullspace) or None."""
    if not rows:
        raise ValueError("empty system")
    ncols = len(rows[0])
    aug = [list(map(frac, r)) + [frac(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if any(p == ncols for p in pivots):
        return None
    x = [F0] * ncols
    for r, pc in zip(red, pivots):
        x[pc] = r[ncols]
    hom = nullspace([r[:ncols] for r in red], ncols) if red else nullspace((), ncols)
    return tuple(x), hom


def det_sign(rows):
    """Sign of the determinant of a square rational matrix."""
    mat = [list(map(frac, r)) for r in rows]
    n = len(mat)
    sign = 1
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return 0
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            sign = -sign
        if mat[c][c] < 0:
            sign = -sign
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c] / mat[c][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[c])]
    return sign


def orientation_sign(points):
    """Orientation of n+1 affine points in an n-dimensional chart."""
    pts = [tuple(map(frac, p)) for p in points]
    n = len(pts[0])
    if len(pts) != n + 1:
        raise ValueError(f"need {n + 1} points in dimension {n}, got {len(pts)}")
    rows = [vec_sub(p, pts[0]) for p in pts[1:]]
    return det_sign(rows)


def orientation_sign_vectors(vectors):
    """Orientation of n+1 linearly-placed vectors in R^(n+1) (spherical)."""
    vs = [tuple(map(frac, v)) for v in vectors]
    if len(vs) != len(vs[0]):
        raise ValueError("need as many vectors as the ambient dimension")
    return det_sign(vs)


def signature(gram):
    """Sylvester signature (n_pos, n_neg, n_zero) of a symmetric matrix."""
    g = [list(map(frac, row)) for row in gram]
    n = len(g)
    pos = neg = zero = 0
    live = list(range(n))
    while live:
        pividx = None
        for i in live:
            if g[i][i] != 0:
                pividx = i
                break
        if pividx is None:
            offd = None
            for ii, i in enumerate(live):
                for j in live[ii + 1 :]:
                    if g[i][j] != 0:
                        offd = (i, j)
                        break
                if offd:
                    break
            if offd is None:
                zero += len(live)
                break
            i, j = offd
            # basis change e_i += e_j turns the zero diagonal nonzero
            for k in range(n):
                g[i][k] = g[i][k] + g[j][k]
            for k in range(n):
                g[k][i] = g[k][i] + g[k][j]
            continue
        i = pividx
        d = g[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        live.remove(i)
        for j in live:
            if g[j][i] != 0:
                f = g[j][i] / d
                for k in range(n):
                    g[j][k] = g[j][k] - f * g[i][k]
                for k in range(n):
                    g[k][j] = g[k][j] - f * g[k][i]
    return pos, neg, zero


def signature_on_subspace(form_rows, basis_rows):
    """Signature of a symmetric form restricted to span(basis rows)."""
    if basis_rows and len(form_rows) != len(basis_rows[0]):
        raise ValueError("form/subspace dimension mismatch")
    b = [tuple(map(frac, r)) for r in basis_rows]
    fb = [mat_vec(form_rows, v) for v in b]
    gram = [[dot(fb[i], b[j]) for j in range(len(b))] for i in range(len(b))]
    return signature(gram)


# ---------------------------------------------------------------------------
# Fourier-Motzkin feasibility with exact witnesses.

_STRICT, _LOOSE = 1, 0


def _normalize(coeffs, const, kind):
    row = primitive_int_row(list(coeffs) + [const])
    return row[:-1], Fraction(row[-1]), kind


def feasible(strict_rows=(), nonstrict_rows=(), eq_rows=(), nvars=None):
    """Exact rational witness of the constraint system, or None.

    Rows are affine with trailing constant: ``a.x + c > 0`` (strict),
    ``>= 0`` (nonstrict), ``= 0`` (equality).  Deterministic for fixed
    input ordering.
    """
    groups = (strict_rows, nonstrict_rows, eq_rows)
    if nvars is None:
        for g in groups:
            for r in g:
                nvars = len(r) - 1
                break
            if nvars is not None:
                break
        if nvars is None:
            raise ValueError("cannot infer variable count")

    ineqs = []  # (coeff tuple, const, strict?)
    for r in strict_rows:
        c, k, _ = _normalize(r[:nvars], r[nvars], _STRICT)
        ineqs.append((c, k, True))
    for r in nonstrict_rows:
        c, k, _ = _normalize(r[:nvars], r[nvars], _LOOSE)
        ineqs.append((c, k, False))
    eqs = []
    for r in eq_rows:
        c, k, _ = _normalize(r[:nvars], r[nvars], _LOOSE)
        eqs.append((c, k))

    steps = []  # reversed for back-substitution
    live_vars = list(range(nvars))

    def substitute_eq(var, pivot_row):
        pc, pk = pivot_row
        pv = pc[var]
        # var = -(rest + pk)/pv
        def subst(c, k):
            f = Fraction(c[var], pv)
            nc = tuple(ci - f * pi for ci, pi in zip(c, pc))
            return nc, k - f * pk

        nonlocal ineqs, eqs
        new_ineqs = []
        for c, k, s in ineqs:
            if c[var]:
                nc, nk = subst(c, k)
                new_ineqs.append((nc, nk, s))
            else:
                new_ineqs.append((c, k, s))
        new_eqs = []
        for c, k in eqs:
            if (c, k) == pivot_row:
                continue
            if c[var]:
                nc, nk = subst(c, k)
                if any(nc[v] for v in live_vars):
                    new_eqs.append((nc, nk))
                elif nk != 0:
                    new_eqs.append((nc, nk))  # contradiction kept for check
            else:
                new_eqs.append((c, k))
        ineqs = new_ineqs
        eqs = new_eqs
        steps.append(("eq", var, pivot_row))

    def fm_eliminate(var):
        nonlocal ineqs
        pos, neg, rest = [], [], []
        for row in ineqs:
            cv = row[0][var]
            if cv > 0:
                pos.append(row)
            elif cv < 0:
                neg.append(row)
            else:
                rest.append(row)
        combined = []
        seen = set()
        for pc, pk, ps in pos:
            for ncf, nk, ns in neg:
                a, b = pc[var], -ncf[var]
                cc = tuple(b * x + a * y for x, y in zip(pc, ncf))
                kk = b * pk + a * nk
                ss = ps or ns
                key = primitive_int_row(list(cc) + [kk]) + (ss,)
                if key in seen:
                    continue
                seen.add(key)
                combined.append((cc, Fraction(kk), ss))
        ineqs = rest + combined
        steps.append(("fm", var, pos + neg))

    while live_vars:
        # prefer equality pivots, else eliminate the cheapest variable
        pivot = None
        for row in eqs:
            for var in live_vars:
                if row[0][var]:
                    pivot = (var, row)
                    break
            if pivot:
                break
        if pivot:
            var, row = pivot
            substitute_eq(var, row)
            live_vars.remove(var)
            continue
        best_var, best_cost = None, None
        for var in live_vars:
            p = sum(1 for c, _, _ in ineqs if c[var] > 0)
            q = sum(1 for c, _, _ in ineqs if c[var] < 0)
            cost = p * q if (p or q) else 0
            if best_cost is None or cost < best_cost:
                best_var, best_cost = var, cost
        fm_eliminate(best_var)
        live_vars.remove(best_var)

    for c, k in eqs:
        if k != 0:
            return None
    for c, k, s in ineqs:
        if s and not k > 0:
            return None
        if not s and not k >= 0:
            return None

    # Back-substitution.
    witness = [F0] * nvars
    assigned = [False] * nvars
    for kind, var, data in reversed(steps):
        if kind == "eq":
            pc, pk = data
            pv = pc[var]
            rest = sum(
                (pc[j] * witness[j] for j in range(nvars) if j != var and pc[j]), F0
            ) + pk
            witness[var] = -rest / pv
        else:
            lo = hi = None
            lo_s = hi_s = False
            for c, k, s in data:
                cv = c[var]
                rest = sum(
                    (c[j] * witness[j] for j in range(nvars) if j != var and c[j]), F0
                ) + k
                bound = -rest / cv
                if cv > 0:  # var >(=) bound
                    if lo is None or bound > lo:
                        lo, lo_s = bound, s
                    elif bound == lo:
                        lo_s = lo_s or s
                else:  # var <(=) bound
                    if hi is None or bound < hi:
                        hi, hi_s = bound, s
                    elif bound == hi:
                        hi_s = hi_s or s
            if lo is None and hi is None:
                witness[var] = F0
            elif lo is None:
                witness[var] = hi - 1 if hi_s else hi
            elif hi is None:
                witness[var] = lo + 1 if lo_s else lo
            else:
                # FM consistency forces lo < hi whenever either side is
                # strict, so the midpoint (or the common value) is valid.
                witness[var] = (lo + hi) / 2 if lo != hi else lo
        assigned[var] = True

    value = tuple(witness)
    _check_witness(value, strict_rows, nonstrict_rows, eq_rows, nvars)
    return value


def _check_witness(x, strict_rows, nonstrict_rows, eq_rows, nvars):
    for r in strict_rows:
        if not dot(r[:nvars], x) + frac(r[nvars]) > 0:
            raise AssertionError("witness violates strict constraint")
    for r in nonstrict_rows:
        if not dot(r[:nvars], x) + frac(r[nvars]) >= 0:
            raise AssertionError("witness violates constraint")
    for r in eq_rows:
        if dot(r[:nvars], x) + frac(r[nvars]) != 0:
            raise AssertionError("witness violates equality")


def min_norm_sq(nonstrict_rows, eq_rows, nvars):
    """Exact min of ||x||^2 over the closed polyhedron, None if empty."""
    from geotits.arrangement import min_norm_point

    got = min_norm_point(nonstrict_rows, eq_rows, nvars)
    return None if got is None else got[0]
