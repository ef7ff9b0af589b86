"""Reference computations that share no code with the library's algorithms.

Everything here goes through sympy or plain counting, so agreement with the
library is evidence rather than tautology.
"""

from __future__ import annotations

from fractions import Fraction

import sympy


def to_sympy(m) -> sympy.Matrix:
    return sympy.Matrix(m.nrows(), m.ncols(), [sympy.Rational(str(x)) for x in m.entries()])


def rank(m) -> int:
    return to_sympy(m).rank()


def nullity(m) -> int:
    return m.ncols() - rank(m)


def hom_dim(m, n) -> int:
    """``dim Hom(M, N)`` by solving ``N_b X = X M_b`` for every basis element ``b``."""
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return 0
    blocks = []
    for am, an in zip(m.actions, n.actions):
        sm, sn = to_sympy(am), to_sympy(an)
        # vec(N X - X M) = (I ⊗ N - M^T ⊗ I) vec(X), column-major vec
        blocks.append(sympy.kronecker_product(sympy.eye(dm), sn) - sympy.kronecker_product(sm.T, sympy.eye(dn)))
    big = sympy.Matrix.vstack(*blocks)
    return dm * dn - big.rank()


def dim_vector(m, labels, idempotent_of) -> list[int]:
    """Composition multiplicities as ranks of idempotent actions."""
    return [rank(m.act(idempotent_of(lab))) if m.dim else 0 for lab in labels]


def cartan(alg) -> sympy.Matrix:
    """``C[i, j] = dim e_i A e_j`` via ranks of left and right multiplications."""
    labs = alg.labels
    es = [alg.idempotent_of(l) for l in labs]
    c = sympy.zeros(len(labs), len(labs))
    for i, ei in enumerate(es):
        for j, ej in enumerate(es):
            c[i, j] = rank(alg.left_matrix(ei) * alg.right_matrix(ej))
    return c


def euler_form(alg, m, n) -> Fraction:
    """``sum (-1)^k dim Ext^k(M, N)`` from dimension vectors, valid in finite global dimension."""
    labs = alg.labels
    dm = sympy.Matrix(dim_vector(m, labs, alg.idempotent_of))
    dn = sympy.Matrix(dim_vector(n, labs, alg.idempotent_of))
    val = (dn.T * cartan(alg).inv() * dm)[0, 0]
    return Fraction(int(val.p), int(val.q))


def count_paths(vertices, arrows, max_len) -> int:
    """Number of paths of length at most ``max_len`` by dynamic programming on lengths."""
    total = len(vertices)
    cur = {v: 1 for v in vertices}  # paths of the current length ending at v
    for _ in range(max_len):
        nxt = {v: 0 for v in vertices}
        for _, s, t in arrows:
            nxt[t] += cur[s]
        cur = nxt
        total += sum(cur.values())
    return total


def radical_power_layers(module, rad_powers) -> list[int]:
    """Loewy layer sizes from ``rad(A)^k M``, the algebra's radical powers given explicitly."""
    sizes = []
    prev = module.dim
    for basis in rad_powers[1:]:
        if not basis:
            cur = 0
        else:
            cols = [to_sympy(module.act(b)) for b in basis]
            cur = sympy.Matrix.hstack(*cols).rank() if module.dim else 0
        sizes.append(prev - cur)
        prev = cur
        if cur == 0:
            break
    return [s for s in sizes if s]


def standard_dim(alg, order, label) -> int:
    """``dim A e / (A e' A) e`` with ``e'`` summing idempotents of labels not below ``label``."""
    ls = [to_sympy(m) for m in alg.lmats]
    left = lambda x: sum((ls[i] * x[i] for i in range(alg.dim) if x[i] != 0), sympy.zeros(alg.dim, alg.dim))
    e = to_sympy(alg.idempotent_of(label))
    ae_cols = [l * e for l in ls]
    ae = sympy.Matrix.hstack(*ae_cols).rank()
    others = [left(to_sympy(alg.idempotent_of(l))) for l in alg.labels if not order.le(l, label)]
    if not others:
        return ae
    gens = [l * (f * v) for f in others for v in ae_cols for l in ls]
    return ae - sympy.Matrix.hstack(*gens).rank()


def all_posets(labels):
    """Every strict partial order on ``labels`` as a list of (less, greater) pairs."""
    pairs = [(a, b) for a in labels for b in labels if a != b]
    out = []
    for mask in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        if any((b, a) in rel for a, b in rel):
            continue
        if any((a, d) not in rel for a, b in rel for c, d in rel if b == c and a != d):
            continue
        out.append(sorted(rel))
    return out
