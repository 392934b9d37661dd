#!/usr/bin/env python3
"""One-shot generator for the bundled molecular-integral fixtures.

Self-contained quantum-chemistry mini-stack (no dependency on the fsvqe
package): STO-3G Gaussian integrals via the McMurchie-Davidson scheme,
closed-shell RHF with symmetry-blocked diagonalization, and a
determinant-basis (Slater-Condon) FCI oracle.  For each molecule/geometry
it writes

    <label>.fcidump   MO-basis integrals, chemists' notation, 8-fold unique
    <label>.json      HF energy, FCI spectrum (neutral sector), MO
                      coefficient and AO overlap matrices, geometry

plus one index.json per fixture set listing geometries in scan order.

The FCI oracle here works directly on determinants and never touches Pauli
algebra, so package tests that diagonalize the Jordan-Wigner image of the
same FCIDUMP cross-validate two independent routes.

Usage: python3 scripts/make_fixtures.py [--out src/fsvqe/fixtures] [--sets h2_sto3g ...]
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import os

import numpy as np
from scipy.special import hyp1f1

ANGSTROM_TO_BOHR = 1.8897259886

# STO-3G primitive data (Basis Set Exchange).  The universal STO-NG
# contraction coefficients apply to normalized primitives.
STO3G = {
    "H": [("S", [3.42525091, 0.62391373, 0.16885540],
           [0.15432897, 0.53532814, 0.44463454])],
    "Li": [
        ("S", [16.1195750, 2.9362007, 0.7946505],
         [0.15432897, 0.53532814, 0.44463454]),
        ("S", [0.6362897, 0.1478601, 0.0480887],
         [-0.09996723, 0.39951283, 0.70011547]),
        ("P", [0.6362897, 0.1478601, 0.0480887],
         [0.15591627, 0.60768372, 0.39195739]),
    ],
    "Be": [
        ("S", [30.1678710, 5.4951153, 1.4871927],
         [0.15432897, 0.53532814, 0.44463454]),
        ("S", [1.3148331, 0.3055389, 0.0993707],
         [-0.09996723, 0.39951283, 0.70011547]),
        ("P", [1.3148331, 0.3055389, 0.0993707],
         [0.15591627, 0.60768372, 0.39195739]),
    ],
    "O": [
        ("S", [130.7093200, 23.8088610, 6.4436083],
         [0.15432897, 0.53532814, 0.44463454]),
        ("S", [5.0331513, 1.1695961, 0.3803890],
         [-0.09996723, 0.39951283, 0.70011547]),
        ("P", [5.0331513, 1.1695961, 0.3803890],
         [0.15591627, 0.60768372, 0.39195739]),
    ],
}

CHARGES = {"H": 1, "Li": 3, "Be": 4, "O": 8}

ZERO_CLEAN = 1e-10  # zero out symmetry-forbidden MO integrals below this


# --------------------------------------------------------------------------
# Gaussian integrals (McMurchie-Davidson)
# --------------------------------------------------------------------------

def double_factorial(n):
    return 1 if n <= 0 else n * double_factorial(n - 2)


class BasisFunction:
    """Contracted Cartesian Gaussian: center, (l,m,n), primitive exps/coefs."""

    def __init__(self, center, lmn, exps, coefs):
        self.center = np.asarray(center, dtype=float)
        self.lmn = tuple(lmn)
        self.exps = list(exps)
        l, m, n = lmn
        norms = [
            math.sqrt(
                (2 * a / math.pi) ** 1.5
                * (4 * a) ** (l + m + n)
                / (double_factorial(2 * l - 1)
                   * double_factorial(2 * m - 1)
                   * double_factorial(2 * n - 1))
            )
            for a in exps
        ]
        self.coefs = [c * nrm for c, nrm in zip(coefs, norms)]
        # renormalize the contracted function
        self_overlap = sum(
            ca * cb * _overlap_prim(a, self.lmn, self.center, b, self.lmn, self.center)
            for a, ca in zip(self.exps, self.coefs)
            for b, cb in zip(self.exps, self.coefs)
        )
        scale = 1.0 / math.sqrt(self_overlap)
        self.coefs = [c * scale for c in self.coefs]


def hermite_e(i, j, t, Qx, a, b):
    """Hermite expansion coefficient E_t^{ij} for a 1-D Gaussian product."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return math.exp(-q * Qx * Qx)
    if j == 0:
        return (
            hermite_e(i - 1, j, t - 1, Qx, a, b) / (2 * p)
            - q * Qx / a * hermite_e(i - 1, j, t, Qx, a, b)
            + (t + 1) * hermite_e(i - 1, j, t + 1, Qx, a, b)
        )
    return (
        hermite_e(i, j - 1, t - 1, Qx, a, b) / (2 * p)
        + q * Qx / b * hermite_e(i, j - 1, t, Qx, a, b)
        + (t + 1) * hermite_e(i, j - 1, t + 1, Qx, a, b)
    )


def _overlap_prim(a, lmn1, A, b, lmn2, B):
    p = a + b
    out = (math.pi / p) ** 1.5
    for d in range(3):
        out *= hermite_e(lmn1[d], lmn2[d], 0, A[d] - B[d], a, b)
    return out


def _kinetic_prim(a, lmn1, A, b, lmn2, B):
    l2, m2, n2 = lmn2

    def s(dl, dm, dn):
        lmn = (l2 + dl, m2 + dm, n2 + dn)
        if min(lmn) < 0:
            return 0.0
        return _overlap_prim(a, lmn1, A, b, lmn, B)

    term0 = b * (2 * (l2 + m2 + n2) + 3) * s(0, 0, 0)
    term1 = -2 * b * b * (s(2, 0, 0) + s(0, 2, 0) + s(0, 0, 2))
    term2 = -0.5 * (
        l2 * (l2 - 1) * s(-2, 0, 0)
        + m2 * (m2 - 1) * s(0, -2, 0)
        + n2 * (n2 - 1) * s(0, 0, -2)
    )
    return term0 + term1 + term2


def boys_sequence(n_max, T):
    """F_0..F_n via one confluent-hypergeometric call and downward recursion."""
    out = np.empty(n_max + 1)
    out[n_max] = hyp1f1(n_max + 0.5, n_max + 1.5, -T) / (2 * n_max + 1)
    expmT = math.exp(-T)
    for n in range(n_max - 1, -1, -1):
        out[n] = (2 * T * out[n + 1] + expmT) / (2 * n + 1)
    return out


def hermite_coulomb_table(t_max, u_max, v_max, p, PC):
    """R_{tuv} = R^0_{tuv}(p, PC) built by dynamic programming over n."""
    T = p * float(np.dot(PC, PC))
    n_top = t_max + u_max + v_max
    boys = boys_sequence(n_top, T)
    # R[n][t,u,v]; fill from highest n downwards
    shape = (t_max + 1, u_max + 1, v_max + 1)
    tables = [np.zeros(shape) for _ in range(n_top + 1)]
    for n in range(n_top, -1, -1):
        tables[n][0, 0, 0] = (-2 * p) ** n * boys[n]
    for n in range(n_top - 1, -1, -1):
        cur, nxt = tables[n], tables[n + 1]
        for t in range(t_max + 1):
            for u in range(u_max + 1):
                for v in range(v_max + 1):
                    if t == u == v == 0:
                        continue
                    if t > 0:
                        val = PC[0] * nxt[t - 1, u, v]
                        if t > 1:
                            val += (t - 1) * nxt[t - 2, u, v]
                    elif u > 0:
                        val = PC[1] * nxt[t, u - 1, v]
                        if u > 1:
                            val += (u - 1) * nxt[t, u - 2, v]
                    else:
                        val = PC[2] * nxt[t, u, v - 1]
                        if v > 1:
                            val += (v - 1) * nxt[t, u, v - 2]
                    cur[t, u, v] = val
    return tables[0]


def _nuclear_prim(a, lmn1, A, b, lmn2, B, C):
    p = a + b
    P = (a * np.asarray(A) + b * np.asarray(B)) / p
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    ex = [hermite_e(l1, l2, t, A[0] - B[0], a, b) for t in range(l1 + l2 + 1)]
    ey = [hermite_e(m1, m2, u, A[1] - B[1], a, b) for u in range(m1 + m2 + 1)]
    ez = [hermite_e(n1, n2, v, A[2] - B[2], a, b) for v in range(n1 + n2 + 1)]
    R = hermite_coulomb_table(l1 + l2, m1 + m2, n1 + n2, p, P - np.asarray(C))
    val = 0.0
    for t, et in enumerate(ex):
        for u, eu in enumerate(ey):
            for v, ev in enumerate(ez):
                val += et * eu * ev * R[t, u, v]
    return 2 * math.pi / p * val


def _eri_prim(a, lmn1, A, b, lmn2, B, c, lmn3, C, d, lmn4, D):
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * np.asarray(A) + b * np.asarray(B)) / p
    Q = (c * np.asarray(C) + d * np.asarray(D)) / q

    def e_list(i, j, Ax, Bx, za, zb):
        return [hermite_e(i, j, t, Ax - Bx, za, zb) for t in range(i + j + 1)]

    e1 = [e_list(lmn1[d_], lmn2[d_], A[d_], B[d_], a, b) for d_ in range(3)]
    e2 = [e_list(lmn3[d_], lmn4[d_], C[d_], D[d_], c, d) for d_ in range(3)]
    tmax = len(e1[0]) + len(e2[0]) - 2
    umax = len(e1[1]) + len(e2[1]) - 2
    vmax = len(e1[2]) + len(e2[2]) - 2
    R = hermite_coulomb_table(tmax, umax, vmax, alpha, P - Q)
    val = 0.0
    for t, et in enumerate(e1[0]):
        for u, eu in enumerate(e1[1]):
            for v, ev in enumerate(e1[2]):
                if et == 0.0 or eu == 0.0 or ev == 0.0:
                    continue
                c1 = et * eu * ev
                for tt, ett in enumerate(e2[0]):
                    for uu, euu in enumerate(e2[1]):
                        for vv, evv in enumerate(e2[2]):
                            c2 = ett * euu * evv
                            if c2 == 0.0:
                                continue
                            sign = -1.0 if (tt + uu + vv) % 2 else 1.0
                            val += c1 * c2 * sign * R[t + tt, u + uu, v + vv]
    val *= 2 * math.pi**2.5 / (p * q * math.sqrt(p + q))
    return val


def _contract2(f, bf1, bf2, *args):
    out = 0.0
    for a, ca in zip(bf1.exps, bf1.coefs):
        for b, cb in zip(bf2.exps, bf2.coefs):
            out += ca * cb * f(a, bf1.lmn, bf1.center, b, bf2.lmn, bf2.center, *args)
    return out


def build_basis(geometry, s_only=False):
    """geometry: list of (symbol, xyz_bohr). Returns list of BasisFunction."""
    cart = {"P": [(1, 0, 0), (0, 1, 0), (0, 0, 1)]}
    funcs = []
    for symbol, xyz in geometry:
        for shell, exps, coefs in STO3G[symbol]:
            if shell == "S":
                funcs.append(BasisFunction(xyz, (0, 0, 0), exps, coefs))
            elif shell == "P":
                if s_only:
                    continue
                for lmn in cart["P"]:
                    funcs.append(BasisFunction(xyz, lmn, exps, coefs))
    return funcs


def integrals(geometry, basis):
    nbf = len(basis)
    S = np.zeros((nbf, nbf))
    T = np.zeros((nbf, nbf))
    V = np.zeros((nbf, nbf))
    for i in range(nbf):
        for j in range(i + 1):
            S[i, j] = S[j, i] = _contract2(_overlap_prim, basis[i], basis[j])
            T[i, j] = T[j, i] = _contract2(_kinetic_prim, basis[i], basis[j])
            v = 0.0
            for symbol, xyz in geometry:
                v -= CHARGES[symbol] * _contract2(
                    _nuclear_prim, basis[i], basis[j], xyz
                )
            V[i, j] = V[j, i] = v
    eri = np.zeros((nbf, nbf, nbf, nbf))
    pairs = [(i, j) for i in range(nbf) for j in range(i + 1)]
    for idx, (i, j) in enumerate(pairs):
        for k, l in pairs[: idx + 1]:
            val = 0.0
            for a, ca in zip(basis[i].exps, basis[i].coefs):
                for b, cb in zip(basis[j].exps, basis[j].coefs):
                    for c, cc in zip(basis[k].exps, basis[k].coefs):
                        for d, cd in zip(basis[l].exps, basis[l].coefs):
                            val += ca * cb * cc * cd * _eri_prim(
                                a, basis[i].lmn, basis[i].center,
                                b, basis[j].lmn, basis[j].center,
                                c, basis[k].lmn, basis[k].center,
                                d, basis[l].lmn, basis[l].center,
                            )
            for p, q in ((i, j), (j, i)):
                for r, s in ((k, l), (l, k)):
                    eri[p, q, r, s] = eri[r, s, p, q] = val
    return S, T, V, eri


def nuclear_repulsion(geometry):
    e = 0.0
    for (s1, r1), (s2, r2) in itertools.combinations(geometry, 2):
        e += CHARGES[s1] * CHARGES[s2] / float(np.linalg.norm(np.asarray(r1) - r2))
    return e


# --------------------------------------------------------------------------
# RHF with symmetry-blocked diagonalization
# --------------------------------------------------------------------------

def _symmetry_blocks(S, hcore, eri, tol=1e-9):
    """Connected components of the AO coupling graph.  Keeps symmetry-distinct
    AOs (e.g. pi_x, pi_y in linear molecules) in separate diagonalization
    blocks so degenerate MOs do not mix across irreps."""
    nbf = S.shape[0]
    coupled = (np.abs(S) > tol) | (np.abs(hcore) > tol)
    coupled |= np.abs(eri).max(axis=(2, 3)) > tol
    blocks = []
    seen = set()
    for i in range(nbf):
        if i in seen:
            continue
        stack, comp = [i], set()
        while stack:
            k = stack.pop()
            if k in comp:
                continue
            comp.add(k)
            stack.extend(np.nonzero(coupled[k])[0].tolist())
        seen |= comp
        blocks.append(sorted(comp))
    return blocks


def _blocked_eigh(F, S, blocks):
    from scipy.linalg import eigh

    nbf = F.shape[0]
    C = np.zeros((nbf, nbf))
    eps = np.zeros(nbf)
    col = 0
    for blk in blocks:
        idx = np.ix_(blk, blk)
        w, v = eigh(F[idx], S[idx])
        for k in range(len(blk)):
            C[blk, col] = v[:, k]
            eps[col] = w[k]
            col += 1
    order = np.argsort(eps, kind="stable")
    return eps[order], C[:, order]


def rhf(geometry, S, T, V, eri, n_electrons, max_iter=200):
    hcore = T + V
    n_occ = n_electrons // 2
    assert n_electrons % 2 == 0, "RHF fixture generator needs closed shells"
    blocks = _symmetry_blocks(S, hcore, eri)
    e_nuc = nuclear_repulsion(geometry)

    eps, C = _blocked_eigh(hcore, S, blocks)
    D = 2.0 * C[:, :n_occ] @ C[:, :n_occ].T
    energy = 0.0
    fock_list, err_list = [], []
    for _ in range(max_iter):
        J = np.einsum("pqrs,rs->pq", eri, D)
        K = np.einsum("prqs,rs->pq", eri, D)
        F = hcore + J - 0.5 * K
        err = F @ D @ S - S @ D @ F
        fock_list.append(F)
        err_list.append(err)
        if len(fock_list) > 8:
            fock_list.pop(0)
            err_list.pop(0)
        if len(fock_list) > 1:
            m = len(fock_list)
            B = -np.ones((m + 1, m + 1))
            B[m, m] = 0.0
            for a in range(m):
                for b in range(m):
                    B[a, b] = np.sum(err_list[a] * err_list[b])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                w = np.linalg.solve(B, rhs)[:m]
                F = sum(wi * Fi for wi, Fi in zip(w, fock_list))
            except np.linalg.LinAlgError:
                pass
        eps, C = _blocked_eigh(F, S, blocks)
        D_new = 2.0 * C[:, :n_occ] @ C[:, :n_occ].T
        e_new = 0.5 * np.sum(D_new * (hcore + F)) + e_nuc
        if abs(e_new - energy) < 1e-13 and np.max(np.abs(err)) < 1e-10:
            energy = e_new
            D = D_new
            break
        energy = e_new
        D = D_new
    else:
        raise RuntimeError("SCF did not converge")
    return energy, eps, C, e_nuc


def mo_integrals(hcore, eri, C):
    h1 = C.T @ hcore @ C
    g = np.einsum("pi,pqrs->iqrs", C, eri, optimize=True)
    g = np.einsum("qj,iqrs->ijrs", C, g, optimize=True)
    g = np.einsum("rk,ijrs->ijks", C, g, optimize=True)
    g = np.einsum("sl,ijks->ijkl", C, g, optimize=True)
    # enforce exact 8-fold symmetry and clean symmetry-forbidden zeros
    g = (g + g.transpose(1, 0, 2, 3) + g.transpose(0, 1, 3, 2)
         + g.transpose(1, 0, 3, 2) + g.transpose(2, 3, 0, 1)
         + g.transpose(3, 2, 0, 1) + g.transpose(2, 3, 1, 0)
         + g.transpose(3, 2, 1, 0)) / 8.0
    h1 = 0.5 * (h1 + h1.T)
    h1[np.abs(h1) < ZERO_CLEAN] = 0.0
    g[np.abs(g) < ZERO_CLEAN] = 0.0
    return h1, g


# --------------------------------------------------------------------------
# Determinant FCI (Slater-Condon oracle, spin-orbital index = 2*spatial+spin)
# --------------------------------------------------------------------------

class CIEngine:
    def __init__(self, h1, g, e_core):
        self.h1 = h1
        self.g = g
        self.e_core = e_core
        self.n_so = 2 * h1.shape[0]

    def _h_so(self, p, q):
        if (p ^ q) & 1:
            return 0.0
        return self.h1[p >> 1, q >> 1]

    def _coulomb(self, p, q, r, s):
        """<pq|rs> physicists = (pr|qs) chemists with spin deltas."""
        if (p ^ r) & 1 or (q ^ s) & 1:
            return 0.0
        return self.g[p >> 1, r >> 1, q >> 1, s >> 1]

    @staticmethod
    def _apply(det, ops):
        """Apply (index, is_creation) ladder ops right-to-left; returns
        (sign, det) or (0, None) when annihilated."""
        sign = 1
        for idx, create in reversed(ops):
            bit = 1 << idx
            occupied = det & bit
            if create:
                if occupied:
                    return 0, None
                det |= bit
            else:
                if not occupied:
                    return 0, None
                det &= ~bit
            if (det & (bit - 1)).bit_count() & 1:
                sign = -sign
        return sign, det

    def matrix_element(self, det_a, det_b):
        diff = det_a ^ det_b
        n_diff = diff.bit_count()
        if n_diff > 4:
            return 0.0
        occ_a = [i for i in range(self.n_so) if det_a >> i & 1]
        if n_diff == 0:
            e = self.e_core + sum(self._h_so(i, i) for i in occ_a)
            for i, j in itertools.combinations(occ_a, 2):
                e += self._coulomb(i, j, i, j) - self._coulomb(i, j, j, i)
            return e
        if n_diff == 2:
            i = (diff & det_a).bit_length() - 1
            a = (diff & det_b).bit_length() - 1
            sign, out = self._apply(det_a, [(a, True), (i, False)])
            assert out == det_b
            val = self._h_so(a, i)
            for k in occ_a:
                if k != i:
                    val += self._coulomb(a, k, i, k) - self._coulomb(a, k, k, i)
            return sign * val
        # double excitation: holes i<j in a, particles r<s in b
        holes = [k for k in range(self.n_so) if diff >> k & 1 and det_a >> k & 1]
        parts = [k for k in range(self.n_so) if diff >> k & 1 and det_b >> k & 1]
        i, j = holes
        r, s = parts
        sign, out = self._apply(det_a, [(r, True), (s, True), (j, False), (i, False)])
        assert out == det_b
        return sign * (self._coulomb(r, s, i, j) - self._coulomb(r, s, j, i))

    def sector_spectrum(self, n_electrons):
        dets = [
            d for d in range(1 << self.n_so) if d.bit_count() == n_electrons
        ]
        dim = len(dets)
        H = np.zeros((dim, dim))
        for a in range(dim):
            for b in range(a + 1):
                if (dets[a] ^ dets[b]).bit_count() > 4:
                    continue
                H[a, b] = H[b, a] = self.matrix_element(dets[a], dets[b])
        return np.linalg.eigvalsh(H)


# --------------------------------------------------------------------------
# FCIDUMP output
# --------------------------------------------------------------------------

def write_fcidump(path, h1, g, e_core, n_electrons, ms2=0):
    norb = h1.shape[0]
    lines = [
        f"&FCI NORB={norb:3d},NELEC={n_electrons:3d},MS2={ms2:2d},",
        " ORBSYM=" + "1," * norb,
        " ISYM=1,",
        "&END",
    ]

    def rec(val, i, j, k, l):
        lines.append(f" {val: .16E} {i:4d} {j:4d} {k:4d} {l:4d}")

    for i in range(norb):
        for j in range(i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(i + 1):
                for l in range(k + 1):
                    kl = k * (k + 1) // 2 + l
                    if kl > ij:
                        continue
                    val = g[i, j, k, l]
                    if val != 0.0:
                        rec(val, i + 1, j + 1, k + 1, l + 1)
    for i in range(norb):
        for j in range(i + 1):
            if h1[i, j] != 0.0:
                rec(h1[i, j], i + 1, j + 1, 0, 0)
    rec(e_core, 0, 0, 0, 0)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


# --------------------------------------------------------------------------
# Fixture sets
# --------------------------------------------------------------------------

def h2_geometry(r_angstrom):
    r = r_angstrom * ANGSTROM_TO_BOHR
    return [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))]

def lih_geometry(r_angstrom):
    r = r_angstrom * ANGSTROM_TO_BOHR
    return [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))]

def beh2_geometry(r_angstrom):
    r = r_angstrom * ANGSTROM_TO_BOHR
    return [("H", (0.0, 0.0, -r)), ("Be", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))]

def h2o_geometry(r_angstrom=0.958, angle_deg=104.4776):
    r = r_angstrom * ANGSTROM_TO_BOHR
    half = math.radians(angle_deg) / 2.0
    return [
        ("O", (0.0, 0.0, 0.0)),
        ("H", (0.0, r * math.sin(half), r * math.cos(half))),
        ("H", (0.0, -r * math.sin(half), r * math.cos(half))),
    ]


SETS = {
    "h2_sto3g": {
        "molecule": "H2", "s_only": False, "n_electrons": 2,
        "geometries": [("{:.2f}".format(r), h2_geometry, r)
                       for r in sorted([round(0.3 + 0.11 * k, 2) for k in range(21)]
                                       + [0.76])],
        "hf_anchor": ("0.74", -1.1167, 5e-3),
    },
    "lih_s": {
        "molecule": "LiH", "s_only": True, "n_electrons": 4,
        "geometries": [("{:.3f}".format(r), lih_geometry, r)
                       for r in [round(0.9 + 0.105 * k, 3) for k in range(21)]],
        "hf_anchor": None,
    },
    "lih_sto3g": {
        "molecule": "LiH", "s_only": False, "n_electrons": 4,
        "geometries": [("1.595", lih_geometry, 1.595)],
        "hf_anchor": ("1.595", -7.862, 2e-2),
    },
    "beh2_s": {
        "molecule": "BeH2", "s_only": True, "n_electrons": 6,
        "geometries": [("1.326", beh2_geometry, 1.326)],
        "hf_anchor": None,
    },
    "beh2_sto3g": {
        "molecule": "BeH2", "s_only": False, "n_electrons": 6,
        "geometries": [("1.326", beh2_geometry, 1.326)],
        "hf_anchor": ("1.326", -15.56, 5e-2),
    },
    "h2o_sto3g": {
        "molecule": "H2O", "s_only": False, "n_electrons": 10,
        "geometries": [("0.958", h2o_geometry, 0.958)],
        "hf_anchor": ("0.958", -74.963, 5e-2),
    },
}

# neutral-sector spectra are stored whole below this determinant count
SPECTRUM_CAP = 64


def build_one(set_name, cfg, label, geom_fn, r, out_dir):
    geometry = geom_fn(r)
    basis = build_basis(geometry, s_only=cfg["s_only"])
    S, T, V, eri = integrals(geometry, basis)
    n_el = cfg["n_electrons"]
    e_hf, eps, C, e_nuc = rhf(geometry, S, T, V, eri, n_el)
    h1, g = mo_integrals(T + V, eri, C)
    n_orb = h1.shape[0]

    ci = CIEngine(h1, g, e_nuc)
    spectrum = ci.sector_spectrum(n_el)
    if len(spectrum) > SPECTRUM_CAP:
        stored = spectrum[:SPECTRUM_CAP]
    else:
        stored = spectrum
    fci_ground = float(spectrum[0])
    assert fci_ground <= e_hf + 1e-9, f"{label}: FCI above HF"

    # confirm the neutral sector hosts the global ground state (small cases)
    if 2 * n_orb <= 8:
        for m in range(2 * n_orb + 1):
            sec = ci.sector_spectrum(m) if m != n_el else spectrum
            assert sec[0] >= fci_ground - 1e-9, (
                f"{label}: sector {m} undercuts neutral ground"
            )

    stem = f"{cfg['molecule'].lower()}_{label}"
    fcidump_name = f"{stem}.fcidump"
    meta_name = f"{stem}.json"
    write_fcidump(os.path.join(out_dir, fcidump_name), h1, g, e_nuc, n_el)
    meta = {
        "molecule": cfg["molecule"],
        "basis": "sto-3g(s-only)" if cfg["s_only"] else "sto-3g",
        "label": label,
        "bond_length_angstrom": r,
        "geometry_bohr": [[sym, list(xyz)] for sym, xyz in geometry],
        "n_spatial_orbitals": n_orb,
        "n_electrons": n_el,
        "nuclear_repulsion": e_nuc,
        "hf_energy": float(e_hf),
        "fci_ground": fci_ground,
        "fci_spectrum": [float(x) for x in stored],
        "orbital_energies": [float(x) for x in eps],
        "mo_coefficients": C.tolist(),
        "overlap": S.tolist(),
    }
    with open(os.path.join(out_dir, meta_name), "w") as fh:
        json.dump(meta, fh, indent=1)
    return {
        "label": label,
        "bond_length_angstrom": r,
        "fcidump": fcidump_name,
        "metadata": meta_name,
        "hf_energy": float(e_hf),
        "fci_ground": fci_ground,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="src/fsvqe/fixtures")
    ap.add_argument("--sets", nargs="*", default=list(SETS))
    args = ap.parse_args()

    for set_name in args.sets:
        cfg = SETS[set_name]
        out_dir = os.path.join(args.out, set_name)
        os.makedirs(out_dir, exist_ok=True)
        entries = []
        for label, geom_fn, r in cfg["geometries"]:
            entry = build_one(set_name, cfg, label, geom_fn, r, out_dir)
            entries.append(entry)
            print(
                f"[{set_name}] r={label}  HF={entry['hf_energy']:.8f}  "
                f"FCI={entry['fci_ground']:.8f}"
            )
        if cfg["hf_anchor"]:
            ref_label, ref_value, ref_tol = cfg["hf_anchor"]
            got = next(e["hf_energy"] for e in entries if e["label"] == ref_label)
            assert abs(got - ref_value) < ref_tol, (
                f"{set_name}: HF anchor {got:.6f} vs {ref_value:.6f}"
            )
            print(f"[{set_name}] HF anchor ok ({got:.6f} ~ {ref_value:.6f})")
        index = {
            "set": set_name,
            "molecule": cfg["molecule"],
            "n_electrons": cfg["n_electrons"],
            "geometries": entries,
        }
        with open(os.path.join(out_dir, "index.json"), "w") as fh:
            json.dump(index, fh, indent=1)


if __name__ == "__main__":
    main()
