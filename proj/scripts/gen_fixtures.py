#!/usr/bin/env python3
"""Generate the FCIDUMP fixtures shipped under fixtures/.

Self-contained restricted Hartree-Fock over contracted spherical Gaussians
(McMurchie-Davidson integrals, s/p/d shells), MO-basis integral dump in the
Molpro FCIDUMP convention, plus MP2 and (for tiny systems) FCI reference
energies. Geometries are experimental values from the NIST CCCBDB.

Run from the repository root:  python3 scripts/gen_fixtures.py
"""

import json
import math
import os
import sys

import numpy as np
from scipy.special import hyp1f1

ANGSTROM = 1.8897259886

# ---------------------------------------------------------------------------
# Basis set data (Dunning cc-pVDZ, Hehre STO-3G), coefficients for normalized
# primitives.

BASIS = {
    ("H", "sto-3g"): [
        ("S", [3.42525091, 0.62391373, 0.16885540],
              [0.15432897, 0.53532814, 0.44463454]),
    ],
    ("H", "cc-pvdz"): [
        ("S", [13.0100, 1.9620, 0.4446, 0.1220],
              [0.0196850, 0.1379770, 0.4781480, 0.5012400]),
        ("S", [0.1220], [1.0]),
        ("P", [0.7270], [1.0]),
    ],
    ("Be", "cc-pvdz"): [
        ("S", [2940.0000, 441.2000, 100.5000, 28.4300, 9.1690, 3.1960, 1.1590, 0.1811],
              [0.0006800, 0.0052360, 0.0266060, 0.0999930, 0.2697020, 0.4514690,
               0.2950740, 0.0125870]),
        ("S", [2940.0000, 441.2000, 100.5000, 28.4300, 9.1690, 3.1960, 1.1590, 0.1811],
              [-0.0001230, -0.0009660, -0.0048310, -0.0193140, -0.0532800, -0.1207230,
               -0.1334350, 0.5307670]),
        ("S", [0.0589000], [1.0]),
        ("P", [3.6190, 0.7110, 0.1951],
              [0.0291110, 0.1693650, 0.5134580]),
        ("P", [0.0601800], [1.0]),
        ("D", [0.2380000], [1.0]),
    ],
}

CHARGE = {"H": 1.0, "Be": 4.0}

L_OF = {"S": 0, "P": 1, "D": 2}

# Cartesian component exponents per angular momentum, in shell order.
CART = {
    0: [(0, 0, 0)],
    1: [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
    2: [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)],
}

# Real solid-harmonic combinations of RAW cartesian polynomials (unnormalized);
# rows are spherical components m = -l..l, columns follow CART[l].
SPH = {
    0: np.array([[1.0]]),
    1: np.array([[0, 1.0, 0],     # p_y
                 [0, 0, 1.0],     # p_z
                 [1.0, 0, 0]]),   # p_x
    2: np.array([
        [0, 1.0, 0, 0, 0, 0],          # d_xy
        [0, 0, 0, 0, 1.0, 0],          # d_yz
        [-0.5, 0, 0, -0.5, 0, 1.0],    # d_z2 ~ (2zz-xx-yy)/2
        [0, 0, 1.0, 0, 0, 0],          # d_xz
        [1.0, 0, 0, -1.0, 0, 0],       # d_x2-y2 ~ xx-yy
    ]),
}


def prim_norm(alpha, lmn):
    l, m, n = lmn
    df = lambda k: math.prod(range(k, 0, -2)) if k > 0 else 1
    num = (2 * alpha / math.pi) ** 0.75 * (4 * alpha) ** ((l + m + n) / 2)
    den = math.sqrt(df(2 * l - 1) * df(2 * m - 1) * df(2 * n - 1))
    return num / den


class Shell:
    def __init__(self, center, l, exps, coefs):
        self.center = np.asarray(center, float)
        self.l = l
        self.exps = np.asarray(exps, float)
        self.coefs = np.asarray(coefs, float)
        self.ncart = len(CART[l])


def hermite_E(la, lb, a, b, AB):
    """E[t, i, j] Hermite expansion coefficients for one dimension,
    vectorized over primitive pair arrays a, b (same shape)."""
    p = a + b
    mu = a * b / p
    shape = np.broadcast(a, b).shape
    E = np.zeros((la + lb + 1, la + 1, lb + 1) + shape)
    E[0, 0, 0] = np.exp(-mu * AB * AB)
    PA = -b * AB / p
    PB = a * AB / p
    for i in range(la + 1):
        for j in range(lb + 1):
            if i == 0 and j == 0:
                continue
            for t in range(i + j + 1):
                if j == 0:
                    v = 0.0
                    if t - 1 >= 0:
                        v = v + E[t - 1, i - 1, j] / (2 * p)
                    v = v + PA * E[t, i - 1, j]
                    if t + 1 <= i + j - 1:
                        v = v + (t + 1) * E[t + 1, i - 1, j]
                else:
                    v = 0.0
                    if t - 1 >= 0:
                        v = v + E[t - 1, i, j - 1] / (2 * p)
                    v = v + PB * E[t, i, j - 1]
                    if t + 1 <= i + j - 1:
                        v = v + (t + 1) * E[t + 1, i, j - 1]
                E[t, i, j] = v
    return E


def boys(n, x):
    return hyp1f1(n + 0.5, n + 1.5, -x) / (2.0 * n + 1.0)


def hermite_R(tmax, umax, vmax, p, PQ):
    """R[t,u,v] Hermite Coulomb integrals, vectorized over the trailing shape
    of p and PQ[:, ...]."""
    L = tmax + umax + vmax
    x = p * (PQ[0] ** 2 + PQ[1] ** 2 + PQ[2] ** 2)
    F = np.array([boys(n, x) for n in range(L + 1)])
    base = ((-2.0 * p) ** np.arange(L + 1).reshape((-1,) + (1,) * (F.ndim - 1))) * F
    R = {}
    for n in range(L, -1, -1):
        R[(n, 0, 0, 0)] = base[n]
    for total in range(1, L + 1):
        for t in range(total + 1):
            for u in range(total - t + 1):
                v = total - t - u
                if t > tmax or u > umax or v > vmax:
                    continue
                for n in range(L - total, -1, -1):
                    if t > 0:
                        val = PQ[0] * R[(n + 1, t - 1, u, v)]
                        if t > 1:
                            val = val + (t - 1) * R[(n + 1, t - 2, u, v)]
                    elif u > 0:
                        val = PQ[1] * R[(n + 1, t, u - 1, v)]
                        if u > 1:
                            val = val + (u - 1) * R[(n + 1, t, u - 2, v)]
                    else:
                        val = PQ[2] * R[(n + 1, t, u, v - 1)]
                        if v > 1:
                            val = val + (v - 1) * R[(n + 1, t, u, v - 2)]
                    R[(n, t, u, v)] = val
    return R


def shell_pair_E(sa, sb):
    a = sa.exps[:, None]
    b = sb.exps[None, :]
    E = [hermite_E(sa.l, sb.l, a, b, sa.center[d] - sb.center[d]) for d in range(3)]
    return E


def overlap_kinetic(sa, sb):
    a = sa.exps[:, None]
    b = sb.exps[None, :]
    p = a + b
    pref = (math.pi / p) ** 1.5
    na = np.array([[prim_norm(al, lmn) for lmn in CART[sa.l]] for al in sa.exps])
    nb = np.array([[prim_norm(bl, lmn) for lmn in CART[sb.l]] for bl in sb.exps])
    S = np.zeros((sa.ncart, sb.ncart))
    T = np.zeros((sa.ncart, sb.ncart))

    # Extended tables (lb+2) cover the j+2 terms of the kinetic recursion.
    Eext = [hermite_E(sa.l, sb.l + 2, a, b, sa.center[d] - sb.center[d]) for d in range(3)]

    for ia, (l1, m1, n1) in enumerate(CART[sa.l]):
        for ib, (l2, m2, n2) in enumerate(CART[sb.l]):
            sx, sy, sz = Eext[0][0, l1, l2], Eext[1][0, m1, m2], Eext[2][0, n1, n2]

            def kin1(d, i, j):
                e = Eext[d]
                t = b * (2 * j + 1) * e[0, i, j]
                t = t - 2.0 * b ** 2 * e[0, i, j + 2]
                if j >= 2:
                    t = t - 0.5 * j * (j - 1) * e[0, i, j - 2]
                return t

            kx = kin1(0, l1, l2)
            ky = kin1(1, m1, m2)
            kz = kin1(2, n1, n2)
            w = pref * (sa.coefs[:, None] * sb.coefs[None, :]) * na[:, ia][:, None] * nb[:, ib][None, :]
            S[ia, ib] = np.sum(w * sx * sy * sz)
            T[ia, ib] = np.sum(w * (kx * sy * sz + sx * ky * sz + sx * sy * kz))
    return S, T


def nuclear(sa, sb, atoms):
    a = sa.exps[:, None]
    b = sb.exps[None, :]
    p = a + b
    P = [(a * sa.center[d] + b * sb.center[d]) / p for d in range(3)]
    Ed = shell_pair_E(sa, sb)
    na = np.array([[prim_norm(al, lmn) for lmn in CART[sa.l]] for al in sa.exps])
    nb = np.array([[prim_norm(bl, lmn) for lmn in CART[sb.l]] for bl in sb.exps])
    V = np.zeros((sa.ncart, sb.ncart))
    Lmax = sa.l + sb.l
    for Z, C in atoms:
        PQ = np.array([P[d] - C[d] for d in range(3)])
        R = hermite_R(Lmax, Lmax, Lmax, p, PQ)
        for ia, (l1, m1, n1) in enumerate(CART[sa.l]):
            for ib, (l2, m2, n2) in enumerate(CART[sb.l]):
                acc = 0.0
                for t in range(l1 + l2 + 1):
                    for u in range(m1 + m2 + 1):
                        for v in range(n1 + n2 + 1):
                            acc = acc + Ed[0][t, l1, l2] * Ed[1][u, m1, m2] * Ed[2][v, n1, n2] * R[(0, t, u, v)]
                w = (2 * math.pi / p) * (sa.coefs[:, None] * sb.coefs[None, :]) \
                    * na[:, ia][:, None] * nb[:, ib][None, :]
                V[ia, ib] += -Z * np.sum(w * acc)
    return V


def eri_shell_quartet(sa, sb, sc, sd):
    a = sa.exps[:, None]
    b = sb.exps[None, :]
    p = a + b
    Pab = np.array([(a * sa.center[d] + b * sb.center[d]) / p for d in range(3)])
    Eab = shell_pair_E(sa, sb)

    c = sc.exps[:, None]
    d = sd.exps[None, :]
    q = c + d
    Pcd = np.array([(c * sc.center[dd] + d * sd.center[dd]) / q for dd in range(3)])
    Ecd = shell_pair_E(sc, sd)

    nab = p.size
    ncd = q.size
    pf = p.reshape(-1)
    qf = q.reshape(-1)
    PQ = np.array([np.subtract.outer(Pab[dd].reshape(-1), Pcd[dd].reshape(-1)) for dd in range(3)])
    alpha = np.multiply.outer(pf, qf) / np.add.outer(pf, qf)
    Lb = sa.l + sb.l
    Lk = sc.l + sd.l
    R = hermite_R(Lb + Lk, Lb + Lk, Lb + Lk, alpha, PQ)
    pref = 2 * math.pi ** 2.5 / (np.multiply.outer(pf, qf) * np.sqrt(np.add.outer(pf, qf)))

    na = np.array([[prim_norm(al, lmn) for lmn in CART[sa.l]] for al in sa.exps])
    nb = np.array([[prim_norm(bl, lmn) for lmn in CART[sb.l]] for bl in sb.exps])
    nc = np.array([[prim_norm(cl, lmn) for lmn in CART[sc.l]] for cl in sc.exps])
    nd = np.array([[prim_norm(dl, lmn) for lmn in CART[sd.l]] for dl in sd.exps])

    out = np.zeros((sa.ncart, sb.ncart, sc.ncart, sd.ncart))
    wab = (sa.coefs[:, None] * sb.coefs[None, :])
    wcd = (sc.coefs[:, None] * sd.coefs[None, :])
    for ia, (l1, m1, n1) in enumerate(CART[sa.l]):
        for ib, (l2, m2, n2) in enumerate(CART[sb.l]):
            wb = (wab * na[:, ia][:, None] * nb[:, ib][None, :]).reshape(-1)
            for ic, (l3, m3, n3) in enumerate(CART[sc.l]):
                for idd, (l4, m4, n4) in enumerate(CART[sd.l]):
                    wk = (wcd * nc[:, ic][:, None] * nd[:, idd][None, :]).reshape(-1)
                    acc = np.zeros((nab, ncd))
                    for t in range(l1 + l2 + 1):
                        for u in range(m1 + m2 + 1):
                            for v in range(n1 + n2 + 1):
                                eb = (Eab[0][t, l1, l2] * Eab[1][u, m1, m2] * Eab[2][v, n1, n2]).reshape(-1)
                                for tt in range(l3 + l4 + 1):
                                    for uu in range(m3 + m4 + 1):
                                        for vv in range(n3 + n4 + 1):
                                            ek = (Ecd[0][tt, l3, l4] * Ecd[1][uu, m3, m4] * Ecd[2][vv, n3, n4]).reshape(-1)
                                            sign = (-1.0) ** (tt + uu + vv)
                                            acc += sign * np.outer(eb, ek) * R[(0, t + tt, u + uu, v + vv)]
                    out[ia, ib, ic, idd] = np.sum(pref * acc * np.outer(wb, wk))
    return out


class Molecule:
    def __init__(self, atoms, basis_name):
        # atoms: list of (symbol, xyz in bohr)
        self.atoms = [(CHARGE[s], np.asarray(x, float)) for s, x in atoms]
        self.shells = []
        for s, x in atoms:
            for (ltag, exps, coefs) in BASIS[(s, basis_name)]:
                self.shells.append(Shell(x, L_OF[ltag], exps, coefs))
        self.nbf = sum(2 * sh.l + 1 for sh in self.shells)

    def e_nuc(self):
        e = 0.0
        for i in range(len(self.atoms)):
            for j in range(i):
                Zi, Ri = self.atoms[i]
                Zj, Rj = self.atoms[j]
                e += Zi * Zj / np.linalg.norm(Ri - Rj)
        return e

    def integrals(self):
        ns = len(self.shells)
        # cartesian AO dimensions
        offs_c = np.cumsum([0] + [sh.ncart for sh in self.shells])
        nc = offs_c[-1]
        S = np.zeros((nc, nc))
        T = np.zeros((nc, nc))
        V = np.zeros((nc, nc))
        for i in range(ns):
            for j in range(i + 1):
                s, t = overlap_kinetic(self.shells[i], self.shells[j])
                v = nuclear(self.shells[i], self.shells[j], self.atoms)
                S[offs_c[i]:offs_c[i + 1], offs_c[j]:offs_c[j + 1]] = s
                T[offs_c[i]:offs_c[i + 1], offs_c[j]:offs_c[j + 1]] = t
                V[offs_c[i]:offs_c[i + 1], offs_c[j]:offs_c[j + 1]] = v
                if i != j:
                    S[offs_c[j]:offs_c[j + 1], offs_c[i]:offs_c[i + 1]] = s.T
                    T[offs_c[j]:offs_c[j + 1], offs_c[i]:offs_c[i + 1]] = t.T
                    V[offs_c[j]:offs_c[j + 1], offs_c[i]:offs_c[i + 1]] = v.T
        ERI = np.zeros((nc, nc, nc, nc))
        for i in range(ns):
            for j in range(i + 1):
                for k in range(ns):
                    for l in range(k + 1):
                        if (k * (k + 1) // 2 + l) > (i * (i + 1) // 2 + j):
                            continue
                        block = eri_shell_quartet(self.shells[i], self.shells[j],
                                                  self.shells[k], self.shells[l])
                        sl = (slice(offs_c[i], offs_c[i + 1]), slice(offs_c[j], offs_c[j + 1]),
                              slice(offs_c[k], offs_c[k + 1]), slice(offs_c[l], offs_c[l + 1]))
                        ERI[sl[0], sl[1], sl[2], sl[3]] = block
                        ERI[sl[1], sl[0], sl[2], sl[3]] = block.transpose(1, 0, 2, 3)
                        ERI[sl[0], sl[1], sl[3], sl[2]] = block.transpose(0, 1, 3, 2)
                        ERI[sl[1], sl[0], sl[3], sl[2]] = block.transpose(1, 0, 3, 2)
                        ERI[sl[2], sl[3], sl[0], sl[1]] = block.transpose(2, 3, 0, 1)
                        ERI[sl[3], sl[2], sl[0], sl[1]] = block.transpose(3, 2, 0, 1)
                        ERI[sl[2], sl[3], sl[1], sl[0]] = block.transpose(2, 3, 1, 0)
                        ERI[sl[3], sl[2], sl[1], sl[0]] = block.transpose(3, 2, 1, 0)
        # cartesian -> spherical
        C2S = np.zeros((self.nbf, nc))
        row = 0
        for i, sh in enumerate(self.shells):
            M = SPH[sh.l]
            C2S[row:row + M.shape[0], offs_c[i]:offs_c[i + 1]] = M
            row += M.shape[0]
        S = C2S @ S @ C2S.T
        T = C2S @ T @ C2S.T
        V = C2S @ V @ C2S.T
        ERI = np.einsum("pi,qj,rk,sl,ijkl->pqrs", C2S, C2S, C2S, C2S, ERI, optimize=True)
        # normalize the spherical AOs
        nrm = 1.0 / np.sqrt(np.diag(S))
        S = S * np.outer(nrm, nrm)
        T = T * np.outer(nrm, nrm)
        V = V * np.outer(nrm, nrm)
        ERI = np.einsum("p,q,r,s,pqrs->pqrs", nrm, nrm, nrm, nrm, ERI, optimize=True)
        return S, T, V, ERI


def rhf(S, Hcore, ERI, nocc, e_nuc, maxiter=200, tol=1e-11):
    n = S.shape[0]
    s, U = np.linalg.eigh(S)
    X = U @ np.diag(1.0 / np.sqrt(s)) @ U.T
    F = Hcore.copy()
    D = None
    e_old = 0.0
    diis_F, diis_e = [], []
    for it in range(maxiter):
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        Cocc = C[:, :nocc]
        D = Cocc @ Cocc.T
        J = np.einsum("pqrs,rs->pq", ERI, D, optimize=True)
        K = np.einsum("prqs,rs->pq", ERI, D, optimize=True)
        F = Hcore + 2 * J - K
        e = np.sum(D * (Hcore + F)) + e_nuc
        err = F @ D @ S - S @ D @ F
        diis_F.append(F.copy())
        diis_e.append(err.copy())
        if len(diis_F) > 8:
            diis_F.pop(0)
            diis_e.pop(0)
        if it > 1:
            m = len(diis_F)
            B = -np.ones((m + 1, m + 1))
            B[m, m] = 0.0
            for i in range(m):
                for j in range(m):
                    B[i, j] = np.sum(diis_e[i] * diis_e[j])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                w = np.linalg.solve(B, rhs)[:m]
                F = sum(wi * Fi for wi, Fi in zip(w, diis_F))
            except np.linalg.LinAlgError:
                pass
        if abs(e - e_old) < tol and np.max(np.abs(err)) < 1e-8:
            Fp = X.T @ F @ X
            eps, Cp = np.linalg.eigh(Fp)
            C = X @ Cp
            return e, eps, C
        e_old = e
    raise RuntimeError("SCF did not converge")


def mo_integrals(Hcore, ERI, C):
    h = C.T @ Hcore @ C
    eri = np.einsum("pi,qj,rk,sl,pqrs->ijkl", C, C, C, C, ERI, optimize=True)
    return h, eri


def mp2_energy(h, eri, eps, nocc):
    n = h.shape[0]
    o = slice(0, nocc)
    v = slice(nocc, n)
    e = 0.0
    for i in range(nocc):
        for j in range(nocc):
            for a in range(nocc, n):
                for b in range(nocc, n):
                    iajb = eri[i, a, j, b]
                    ibja = eri[i, b, j, a]
                    e += iajb * (2 * iajb - ibja) / (eps[i] + eps[j] - eps[a] - eps[b])
    return e


def fci_ground(h, eri, nelec, e_core):
    """Dense spin-orbital FCI for tiny systems, interleaved spin orbitals."""
    n = h.shape[0]
    nso = 2 * n
    na = nelec // 2
    nb = nelec - na
    from itertools import combinations
    dets = []
    for occa in combinations(range(n), na):
        for occb in combinations(range(n), nb):
            mask = 0
            for p in occa:
                mask |= 1 << (2 * p)
            for p in occb:
                mask |= 1 << (2 * p + 1)
            dets.append(mask)
    dets.sort()
    index = {d: i for i, d in enumerate(dets)}
    nd = len(dets)

    def so_h(P, Q):
        return h[P >> 1, Q >> 1] if (P & 1) == (Q & 1) else 0.0

    def so_anti(P, Q, R, S):
        # <PQ||RS> with <PQ|RS> = (pr|qs) delta delta
        d1 = eri[P >> 1, R >> 1, Q >> 1, S >> 1] if ((P & 1) == (R & 1) and (Q & 1) == (S & 1)) else 0.0
        d2 = eri[P >> 1, S >> 1, Q >> 1, R >> 1] if ((P & 1) == (S & 1) and (Q & 1) == (R & 1)) else 0.0
        return d1 - d2

    def apply_ops(mask, ops):
        # ops: list of (kind, orb) applied right-to-left; returns (sign, mask) or None
        sign = 1
        for kind, p in reversed(ops):
            bit = 1 << p
            below = mask & (bit - 1)
            par = -1 if bin(below).count("1") % 2 else 1
            if kind == "a":
                if not (mask & bit):
                    return None
                mask &= ~bit
            else:
                if mask & bit:
                    return None
                mask |= bit
            sign *= par
        return sign, mask

    H = np.zeros((nd, nd))
    for jdet, D in enumerate(dets):
        col = {}
        for P in range(nso):
            for Q in range(nso):
                r = apply_ops(D, [("c", P), ("a", Q)])
                if r and abs(so_h(P, Q)) > 0:
                    col[r[1]] = col.get(r[1], 0.0) + r[0] * so_h(P, Q)
        for P in range(nso):
            for Q in range(nso):
                for R in range(nso):
                    for Ss in range(nso):
                        v = so_anti(P, Q, R, Ss)
                        if abs(v) < 1e-14:
                            continue
                        r = apply_ops(D, [("c", P), ("c", Q), ("a", Ss), ("a", R)])
                        if r:
                            col[r[1]] = col.get(r[1], 0.0) + 0.25 * r[0] * v
        for m, val in col.items():
            H[index[m], jdet] += val
    H += np.eye(nd) * e_core
    w = np.linalg.eigvalsh(H)
    return w[0]


def write_fcidump(path, n, nelec, ms2, h, eri, e_core, thresh=1e-12):
    lines = []
    lines.append("&FCI NORB=%d,NELEC=%d,MS2=%d," % (n, nelec, ms2))
    lines.append(" ORBSYM=" + ",".join(["1"] * n) + ",")
    lines.append(" ISYM=1,")
    lines.append("&END")
    out = ["\n".join(lines) + "\n"]

    def fmt(v, p, q, r, s):
        return "%23.16E%4d%4d%4d%4d\n" % (v, p, q, r, s)

    for p in range(n):
        for q in range(p + 1):
            pq = p * (p + 1) // 2 + q
            for r in range(p + 1):
                smax = q if r == p else r
                for s in range(smax + 1):
                    v = eri[p, q, r, s]
                    if abs(v) > thresh:
                        out.append(fmt(v, p + 1, q + 1, r + 1, s + 1))
    for p in range(n):
        for q in range(p + 1):
            if abs(h[p, q]) > thresh:
                out.append(fmt(h[p, q], p + 1, q + 1, 0, 0))
    out.append(fmt(e_core, 0, 0, 0, 0))
    with open(path, "w") as f:
        f.write("".join(out))


def build(atoms, basis, name, outdir, do_fci=False):
    mol = Molecule(atoms, basis)
    S, T, V, ERI = mol.integrals()
    Hcore = T + V
    nelec = int(sum(Z for Z, _ in mol.atoms))
    nocc = nelec // 2
    e_nuc = mol.e_nuc()
    e_hf, eps, C = rhf(S, Hcore, ERI, nocc, e_nuc)
    h_mo, eri_mo = mo_integrals(Hcore, ERI, C)
    e_mp2 = mp2_energy(h_mo, eri_mo, eps, nocc)
    path = os.path.join(outdir, name + ".fcidump")
    write_fcidump(path, mol.nbf, nelec, 0, h_mo, eri_mo, e_nuc)
    rec = {
        "file": name + ".fcidump",
        "n_spatial": mol.nbf,
        "n_electrons": nelec,
        "e_hf": e_hf,
        "e_mp2_corr": e_mp2,
        "e_mp2_total": e_hf + e_mp2,
        "orbital_energies": [float(x) for x in eps],
    }
    if do_fci:
        e_fci = fci_ground(h_mo, eri_mo, nelec, e_nuc)
        rec["e_fci_total"] = e_fci
        rec["e_fci_corr"] = e_fci - e_hf
    print("%-24s nbf=%-3d E_HF=%.9f  E_MP2corr=%.9f %s"
          % (name, mol.nbf, e_hf, e_mp2,
             ("E_FCI=%.9f" % rec["e_fci_total"]) if do_fci else ""))
    return rec


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "fixtures"
    os.makedirs(outdir, exist_ok=True)
    manifest = {
        "generator": "scripts/gen_fixtures.py (restricted Hartree-Fock, "
                     "McMurchie-Davidson integrals, numpy/scipy)",
        "geometry_source": "NIST CCCBDB experimental geometries",
        "conventions": "FCIDUMP, Molpro convention, chemists' notation (pq|rs), "
                       "1-based indices, C1 symmetry, canonical RHF orbitals "
                       "ordered by orbital energy",
        "fixtures": {},
    }

    # H2, STO-3G, r = 0.7414 A (NIST CCCBDB)
    r = 0.7414 * ANGSTROM
    manifest["fixtures"]["h2_sto3g"] = build(
        [("H", (0, 0, 0)), ("H", (0, 0, r))], "sto-3g", "h2_sto3g", outdir, do_fci=True)
    manifest["fixtures"]["h2_sto3g"]["geometry"] = "H2 linear, r(H-H) = 0.7414 A"
    manifest["fixtures"]["h2_sto3g"]["basis"] = "STO-3G"

    # H4 chain toy, STO-3G (4 spatial orbitals, 4 electrons)
    d = 0.90 * ANGSTROM
    manifest["fixtures"]["h4_toy"] = build(
        [("H", (0, 0, i * d)) for i in range(4)], "sto-3g", "h4_toy", outdir, do_fci=True)
    manifest["fixtures"]["h4_toy"]["geometry"] = "H4 linear chain, r(H-H) = 0.90 A"
    manifest["fixtures"]["h4_toy"]["basis"] = "STO-3G"

    # BeH2, cc-pVDZ, r = 1.3264 A (NIST CCCBDB)
    r = 1.3264 * ANGSTROM
    manifest["fixtures"]["beh2_ccpvdz"] = build(
        [("Be", (0, 0, 0)), ("H", (0, 0, r)), ("H", (0, 0, -r))], "cc-pvdz",
        "beh2_ccpvdz", outdir, do_fci=False)
    manifest["fixtures"]["beh2_ccpvdz"]["geometry"] = "BeH2 linear, r(Be-H) = 1.3264 A"
    manifest["fixtures"]["beh2_ccpvdz"]["basis"] = "cc-pVDZ (spherical)"

    with open(os.path.join(outdir, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")
    print("wrote", os.path.join(outdir, "manifest.json"))


if __name__ == "__main__":
    main()
