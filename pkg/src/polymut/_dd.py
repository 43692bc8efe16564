"""Exact double description for cones {y : R y >= 0} over the integers.

All rows and rays are kept as primitive integer tuples. Adjacency uses the
combinatorial test on zero sets (bitmasks), which is exact and does not
depend on the cone being full-dimensional.
"""
from ._linalg import dot, nullspace, primitive, rref, solve


def cone_generators(rows, n):
    """Return (extreme rays, lineality basis) of {y in R^n : r.y >= 0 for r in rows}.

    The extreme rays are those of the pointed part C intersected with the
    orthogonal complement of the lineality space.
    """
    clean = []
    seen = set()
    for r in rows:
        if len(r) != n:
            raise ValueError("row length mismatch")
        if not any(r):
            continue
        p = primitive(r)
        if p not in seen:
            seen.add(p)
            clean.append(p)
    lines = nullspace(clean, n) if clean else [
        tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    work = list(clean)
    for l in lines:
        for s in (l, tuple(-x for x in l)):
            if s not in seen:
                seen.add(s)
                work.append(s)
    if not work:
        # n == 0
        return [], lines
    return _pointed_dd(work, n), lines


def _pointed_dd(rows, n):
    # pick n independent rows for a simplicial starting cone
    basis_idx = []
    for i, r in enumerate(rows):
        trial = [rows[j] for j in basis_idx] + [r]
        if len(rref(trial, n)[1]) == len(trial):
            basis_idx.append(i)
            if len(basis_idx) == n:
                break
    if len(basis_idx) < n:
        raise ValueError("cone is not pointed")
    B = [rows[i] for i in basis_idx]
    rays = []
    zs = []
    full = 0
    for i in basis_idx:
        full |= 1 << i
    for k in range(n):
        e = [0] * n
        e[k] = 1
        col = solve(B, e)
        rays.append(primitive(col))
        zs.append(full & ~(1 << basis_idx[k]))
    order = [i for i in range(len(rows)) if i not in set(basis_idx)]
    for i in order:
        a = rows[i]
        bit = 1 << i
        vals = [dot(a, r) for r in rays]
        pos = [j for j, v in enumerate(vals) if v > 0]
        neg = [j for j, v in enumerate(vals) if v < 0]
        zero = [j for j, v in enumerate(vals) if v == 0]
        if not neg:
            for j in zero:
                zs[j] |= bit
            continue
        new_rays = []
        new_zs = []
        for p in pos:
            zp = zs[p]
            for q in neg:
                common = zp & zs[q]
                if common.bit_count() < n - 2:
                    continue
                adjacent = True
                for r in range(len(rays)):
                    if r != p and r != q and (zs[r] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], vals[q]
                comb = [vp * y - vq * x for x, y in zip(rays[p], rays[q])]
                new_rays.append(primitive(comb))
                new_zs.append(common | bit)
        for j in zero:
            zs[j] |= bit
        keep = pos + zero
        rays = [rays[j] for j in keep] + new_rays
        zs = [zs[j] for j in keep] + new_zs
        if not rays:
            return []
    return rays
