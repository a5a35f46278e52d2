#!/usr/bin/env python3
"""Solve an SDPA sparse-format (.dat-s) problem and write a CSDP-style
solution file.

Usage: sdpa_solve.py INPUT.dat-s OUTPUT.sol

The solved problem is the standard SDPA dual
    maximize    tr(F0 Y)
    subject to  tr(Fi Y) = c_i   (i = 1..m),   Y >= 0 (block diagonal),
which is what consumers of the written Y expect.  The solution file has the
dual vector on line 1 followed by `matno block i j value` quintuples with
matno 2 carrying Y (matno 1, the slack matrix, is omitted).

Two backends: the conic problem is handed to Clarabel directly (sparse
triangle encoding, no modelling layer, low memory), falling back to a cvxpy
model if the direct path is unavailable or fails.  Set
CUBEFLAG_SDP_BACKEND=cvxpy to force the fallback.
"""

import math
import os
import sys

import numpy as np
import scipy.sparse as sp

ROOT2 = math.sqrt(2.0)


def read_dats(path):
    """Parse header and entries.  Returns (m, sizes, c, matno, blk, i, j, v)
    with the entry fields as flat numpy arrays (1-based indices as stored)."""
    header = []
    nskip = 0
    plain = True  # no comment lines seen before/inside the header
    with open(path) as f:
        for ln in f:
            nskip += 1
            if ln.lstrip().startswith(("*", '"')):
                plain = False
                continue
            header.append(ln)
            if len(header) == 4:
                break
    if len(header) < 4:
        raise ValueError("truncated SDPA file")

    def ints(line):
        cleaned = "".join(c if c not in "{}(),'" else " " for c in line)
        return [int(t) for t in cleaned.split()]

    m = ints(header[0])[0]
    nblocks = ints(header[1])[0]
    sizes = ints(header[2])
    if len(sizes) != nblocks:
        raise ValueError("block-size line does not match block count")
    c = np.array([float(t) for t in header[3].replace(",", " ").split()])
    if len(c) != m:
        raise ValueError("objective line does not match constraint count")

    if plain:
        try:
            import pandas as pd
        except ImportError:
            plain = False
    if plain:
        df = pd.read_csv(path, skiprows=nskip, sep=r"\s+", header=None,
                         comment="*", engine="c")
        if df.shape[0] and df.shape[1] != 5:
            raise ValueError("entry lines must have 5 fields")
        if df.shape[0]:
            matno = df[0].to_numpy(dtype=np.int64)
            blk = df[1].to_numpy(dtype=np.int64)
            ii = df[2].to_numpy(dtype=np.int64)
            jj = df[3].to_numpy(dtype=np.int64)
            vv = df[4].to_numpy(dtype=np.float64)
        else:
            matno = blk = ii = jj = np.zeros(0, dtype=np.int64)
            vv = np.zeros(0)
    else:
        rows = []
        with open(path) as f:
            for k, ln in enumerate(f):
                if k < nskip or ln.lstrip().startswith(("*", '"')):
                    continue
                toks = ln.split()
                if not toks:
                    continue
                if len(toks) != 5:
                    raise ValueError(f"bad entry line: {ln.strip()}")
                rows.append((int(toks[0]), int(toks[1]), int(toks[2]),
                             int(toks[3]), float(toks[4])))
        arr = np.array(rows, dtype=np.float64).reshape(-1, 5)
        matno = arr[:, 0].astype(np.int64)
        blk = arr[:, 1].astype(np.int64)
        ii = arr[:, 2].astype(np.int64)
        jj = arr[:, 3].astype(np.int64)
        vv = arr[:, 4]

    sizes_arr = np.asarray(sizes, dtype=np.int64)
    if matno.size:
        if matno.min() < 0 or matno.max() > m:
            raise ValueError("entry matrix index out of range")
        if blk.min() < 1 or blk.max() > nblocks:
            raise ValueError("entry block index out of range")
        n_of = np.abs(sizes_arr)[blk - 1]
        if (ii < 1).any() or (ii > n_of).any() or (jj < 1).any() or \
                (jj > n_of).any():
            raise ValueError("entry position out of range")
        diag = sizes_arr[blk - 1] < 0
        if (diag & (ii != jj)).any():
            raise ValueError("off-diagonal entry in a diagonal block")
    return m, sizes, c, matno, blk, ii, jj, vv


def tri_dim(k):
    return k * (k + 1) // 2


def solve_clarabel(m, sizes, c, matno, blk, ii, jj, vv):
    """Direct conic encoding: x stacks, per block, the scaled upper triangle
    (PSD blocks, column-major, off-diagonals times sqrt(2)) or the diagonal
    vector.  Equalities form a zero cone; one identity block per variable
    segment pins it into its cone."""
    import clarabel

    sizes_arr = np.asarray(sizes, dtype=np.int64)
    seg_len = np.where(sizes_arr > 0, sizes_arr * (sizes_arr + 1) // 2,
                       -sizes_arr)
    offs = np.zeros(len(sizes), dtype=np.int64)
    np.cumsum(seg_len[:-1], out=offs[1:])
    ndim = int(seg_len.sum())

    a = np.minimum(ii, jj) - 1
    d = np.maximum(ii, jj) - 1
    bidx = blk - 1
    is_psd = sizes_arr[bidx] > 0
    col = np.where(is_psd, offs[bidx] + d * (d + 1) // 2 + a,
                   offs[bidx] + a)
    # svec pairing: with off-diagonal x entries scaled by sqrt(2), the same
    # scaling on the coefficient gives dot(coeff, x) = tr(F Y) exactly.
    val = np.where(is_psd & (a != d), vv * ROOT2, vv)

    isobj = matno == 0
    q = np.zeros(ndim)
    np.add.at(q, col[isobj], -val[isobj])  # Clarabel minimizes

    sel = ~isobj
    a_eq = sp.coo_matrix((val[sel], (matno[sel] - 1, col[sel])),
                         shape=(m, ndim)).tocsc()
    a_full = sp.vstack([a_eq, -sp.identity(ndim, format="csc")],
                       format="csc")
    b_full = np.concatenate([c, np.zeros(ndim)])
    cones = [clarabel.ZeroConeT(m)]
    for s0 in sizes:
        cones.append(clarabel.PSDTriangleConeT(s0) if s0 > 0
                     else clarabel.NonnegativeConeT(-s0))
    p_mat = sp.csc_matrix((ndim, ndim))

    def attempt(tight):
        st = clarabel.DefaultSettings()
        st.verbose = False
        if tight:
            st.tol_gap_abs = 1e-11
            st.tol_gap_rel = 1e-11
            st.tol_feas = 1e-11
        solver = clarabel.DefaultSolver(p_mat, q, a_full, b_full, cones, st)
        return solver.solve()

    sol = attempt(True)
    status = str(sol.status)
    if status not in ("Solved", "AlmostSolved"):
        sol = attempt(False)
        status = str(sol.status)
    if status not in ("Solved", "AlmostSolved"):
        raise RuntimeError(f"clarabel status {status}")

    x = np.asarray(sol.x)
    dual = np.asarray(sol.z)[:m]
    blocks = []
    for bi, s0 in enumerate(sizes):
        o = int(offs[bi])
        if s0 > 0:
            seg = x[o:o + tri_dim(s0)]
            mat = np.zeros((s0, s0))
            r, q_ = np.triu_indices(s0)
            # column-major upper triangle: entry (i, j) at j(j+1)/2 + i
            mat[r, q_] = seg[q_ * (q_ + 1) // 2 + r]
            off = r != q_
            mat[r[off], q_[off]] /= ROOT2
            mat[q_, r] = mat[r, q_]
            blocks.append(mat)
        else:
            blocks.append(x[o:o - s0])
    objective = float(-q @ x)
    return blocks, dual, objective, f"clarabel:{status}"


def solve_cvxpy(m, sizes, c, matno, blk, ii, jj, vv):
    """cvxpy model: one PSD or nonnegative variable per block."""
    import cvxpy as cp

    nblocks = len(sizes)
    variables = []
    for size in sizes:
        if size > 0:
            variables.append(cp.Variable((size, size), PSD=True))
        else:
            variables.append(cp.Variable(-size, nonneg=True))

    # pos[b] maps (i, j) -> column index in that block's coefficient matrices.
    pos = [dict() for _ in range(nblocks)]
    rows = [[] for _ in range(nblocks)]
    cols = [[] for _ in range(nblocks)]
    vals = [[] for _ in range(nblocks)]
    obj_cols = [[] for _ in range(nblocks)]
    obj_vals = [[] for _ in range(nblocks)]

    for mt, b, i, j, v in zip(matno.tolist(), blk.tolist(), ii.tolist(),
                              jj.tolist(), vv.tolist()):
        size = sizes[b - 1]
        a, d = (i, j) if i <= j else (j, i)
        key = (a - 1, d - 1)
        p = pos[b - 1].setdefault(key, len(pos[b - 1]))
        # tr(F Y) counts symmetric off-diagonal pairs twice.
        coeff = v if (a == d or size < 0) else 2.0 * v
        if mt == 0:
            obj_cols[b - 1].append(p)
            obj_vals[b - 1].append(coeff)
        else:
            rows[b - 1].append(mt - 1)
            cols[b - 1].append(p)
            vals[b - 1].append(coeff)

    lhs = None
    objective = None
    for b in range(nblocks):
        npos = len(pos[b])
        if npos == 0:
            continue
        idx_i = np.empty(npos, dtype=int)
        idx_j = np.empty(npos, dtype=int)
        for (i, j), p in pos[b].items():
            idx_i[p], idx_j[p] = i, j
        if sizes[b] > 0:
            vec = variables[b][idx_i, idx_j]
        else:
            vec = variables[b][idx_i]
        if rows[b]:
            mat = sp.coo_matrix(
                (vals[b], (rows[b], cols[b])), shape=(m, npos)
            ).tocsr()
            term = mat @ vec
            lhs = term if lhs is None else lhs + term
        if obj_cols[b]:
            ovec = np.zeros(npos)
            for p, v in zip(obj_cols[b], obj_vals[b]):
                ovec[p] += v
            oterm = ovec @ vec
            objective = oterm if objective is None else objective + oterm

    if lhs is None or objective is None:
        raise ValueError("problem has no constraints or no objective")

    constraint = lhs == c
    prob = cp.Problem(cp.Maximize(objective), [constraint])

    tight = dict(tol_gap_abs=1e-11, tol_gap_rel=1e-11, tol_feas=1e-11,
                 max_iter=200)
    try:
        prob.solve(solver=cp.CLARABEL, **tight)
    except cp.SolverError:
        prob.status = None
    if prob.status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
        prob.solve(solver=cp.CLARABEL)
    if prob.status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
        raise RuntimeError(f"cvxpy status {prob.status}")

    dual = constraint.dual_value
    if dual is None:
        dual = np.zeros(m)
    blocks = []
    for b in range(nblocks):
        value = variables[b].value
        if value is None:
            value = (np.zeros((sizes[b], sizes[b])) if sizes[b] > 0
                     else np.zeros(-sizes[b]))
        if sizes[b] > 0:
            blocks.append(0.5 * (value + value.T))
        else:
            blocks.append(np.asarray(value).ravel())
    return blocks, np.asarray(dual).ravel(), float(prob.value), \
        f"cvxpy:{prob.status}"


def write_solution(out_path, sizes, blocks, dual):
    with open(out_path, "w") as out:
        out.write(" ".join(f"{v:.17g}" for v in dual))
        out.write("\n")
        for b, block in enumerate(blocks):
            if sizes[b] > 0:
                n = sizes[b]
                for i in range(n):
                    for j in range(i, n):
                        v = block[i, j]
                        if v != 0.0:
                            out.write(f"2 {b + 1} {i + 1} {j + 1} "
                                      f"{v:.17g}\n")
            else:
                for i, v in enumerate(block):
                    if v != 0.0:
                        out.write(f"2 {b + 1} {i + 1} {i + 1} {v:.17g}\n")


def main():
    if len(sys.argv) != 3:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    in_path, out_path = sys.argv[1], sys.argv[2]
    problem = read_dats(in_path)

    backend = os.environ.get("CUBEFLAG_SDP_BACKEND", "clarabel")
    result = None
    if backend != "cvxpy":
        try:
            result = solve_clarabel(*problem)
        except Exception as exc:  # fall back to the modelling layer
            print(f"direct backend failed ({exc}); trying cvxpy",
                  file=sys.stderr)
    if result is None:
        result = solve_cvxpy(*problem)

    blocks, dual, objective, status = result
    m, sizes = problem[0], problem[1]
    write_solution(out_path, sizes, blocks, dual)
    print(f"status {status} objective {objective:.12g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
