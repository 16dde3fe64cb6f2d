"""Random ensembles, verification suites and the trial runner.

A trial draws its inputs from a generator seeded by (master seed, suite,
trial index), then hands them to the checker registered for their ``kind``.
The same checkers re-run stored inputs for ``replay``, so a reported
violation can always be reproduced from its JSON record.
"""

import logging
import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

import bound_engine as be
import spectral_bounds as sb
from berezin import (KernelSpace, bakherad_baseline, bakherad_bound, ber_lemma_rhs,
                     berezin_norm, berezin_radius, block_berezin_radius, bound_cor1b,
                     bound_thm_ber, hardy_example, hardy_grid, hardy_space,
                     kernel_norm_identity_error)
from errors import BadSpec, RadiusBoundsError, UnknownSuite
from matrix_core import BlockMatrix, as_cmatrix, flatten, kron, operator_norm
from models import BoundReport, Ensemble, EnsembleSpec, RunConfig
from polyroot_bounds import (PolySpec, alpha, bound_abd, bound_companion_cor1, bound_estpoly,
                             companion, max_root_modulus)
from radius_oracles import (lower_shift, numerical_radius, numrad_nonneg, rank_one_row_radius,
                            shift_radius, spectral_radius, sup_theta_norm)

logger = logging.getLogger('harness')

THREADS_ENV = "RADIUS_BOUNDS_THREADS"
PROBES_PER_TRIAL = 100
INNER_PRODUCT_SLACK = 1e-10
BUZANO_SLACK = 1e-12
ALPHA_STRICT = 1e-10
STRICT_GAP = 1e-12
HARDY_N = 200
SMALL_HARDY_GRID = dict(levels=4, angles=8, sweep_steps=4, sweep_angles=4)


# Ensembles

def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """i.i.d. standard complex Gaussian entries, E|z|^2 = 1."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """QR of a Ginibre matrix with the phases of R's diagonal moved into Q."""
    q, r = np.linalg.qr(complex_gaussian(rng, (dim, dim)))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def draw_matrix(rng: np.random.Generator, kind: Ensemble, dim: int) -> np.ndarray:
    kind = Ensemble(kind)
    if kind is Ensemble.GINIBRE:
        return complex_gaussian(rng, (dim, dim))
    if kind is Ensemble.NILPOTENT2:
        u = complex_gaussian(rng, dim)
        v = complex_gaussian(rng, dim)
        v = v - (np.vdot(u, v) / np.vdot(u, u)) * u
        return np.outer(u, np.conj(v))
    if kind is Ensemble.NORMAL:
        U = haar_unitary(rng, dim)
        return (U * complex_gaussian(rng, dim)) @ U.conj().T
    if kind is Ensemble.POSITIVE:
        G = complex_gaussian(rng, (dim, dim))
        return G.conj().T @ G
    if kind is Ensemble.UNITARY:
        return haar_unitary(rng, dim)
    return rng.uniform(0.0, 1.0, (dim, dim))


def generate(spec: EnsembleSpec) -> np.ndarray:
    """Deterministic in (kind, dim, seed)."""
    if not isinstance(spec, EnsembleSpec):
        raise BadSpec(f"expected an EnsembleSpec, got {type(spec).__name__}")
    return as_cmatrix(draw_matrix(np.random.default_rng(spec.seed), spec.kind, spec.dim))


def random_ensemble(rng: np.random.Generator) -> Ensemble:
    members = list(Ensemble)
    return members[int(rng.integers(len(members)))]


def random_square(rng: np.random.Generator, dim: int) -> np.ndarray:
    return draw_matrix(rng, random_ensemble(rng), dim)


def random_rect(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """A slice of a random ensemble member, or a rectangular Ginibre matrix."""
    if rows == cols or rng.random() < 0.5:
        return random_square(rng, max(rows, cols))[:rows, :cols]
    return complex_gaussian(rng, (rows, cols))


def random_psd(rng: np.random.Generator, dim: int) -> np.ndarray:
    rank = int(rng.integers(1, dim + 1))
    G = complex_gaussian(rng, (rank, dim))
    return G.conj().T @ G


def unit_vectors(rng: np.random.Generator, dim: int, count: int) -> np.ndarray:
    """count random unit vectors in C^dim, one per column."""
    X = complex_gaussian(rng, (dim, count))
    return X / np.linalg.norm(X, axis=0)


def trial_rng(master_seed: int, suite: str, index: int) -> np.random.Generator:
    """Per-trial generator; independent of scheduling."""
    return np.random.default_rng(np.random.SeedSequence([master_seed, zlib.crc32(suite.encode()), index]))


def pick_dim(rng: np.random.Generator, cfg: RunConfig, lo: int, hi: int) -> int:
    if cfg.dims:
        return max(int(rng.choice(cfg.dims)), lo)
    return int(rng.integers(lo, hi + 1))


# Checkers, keyed by inputs["kind"]

Checker = Callable[[BoundReport, Dict[str, Any]], None]
CHECKS: Dict[str, Checker] = {}


def checker(kind: str):
    def register(fn: Checker) -> Checker:
        CHECKS[kind] = fn
        return fn
    return register


def _blocks(inputs) -> BlockMatrix:
    return BlockMatrix.from_grid(inputs["blocks"])


@checker("block")
def check_block_chain(report: BoundReport, inputs):
    M = _blocks(inputs)
    report.oracle_value = numerical_radius(flatten(M))
    values = {kind: be.bound_blockmatrix(M, kind) for kind in
              (be.BoundMatrixKind.THM2, be.BoundMatrixKind.AOK_B, be.BoundMatrixKind.AOK_A,
               be.BoundMatrixKind.HOU_DU)}
    for kind, value in values.items():
        report.bound(kind.value, value)
    thm2, aok_b = values[be.BoundMatrixKind.THM2], values[be.BoundMatrixKind.AOK_B]
    report.at_most("THM2<=AOK_B", thm2, aok_b)
    report.at_most("AOK_B<=HOU_DU", aok_b, values[be.BoundMatrixKind.HOU_DU])
    report.agrees("AOK_A==AOK_B", values[be.BoundMatrixKind.AOK_A], aok_b, 1e-10 * max(1.0, aok_b))
    if M.has_square_blocks:
        report.bound("BHUNIA_ADM", be.bound_blockmatrix(M, be.BoundMatrixKind.BHUNIA_ADM))
    else:
        report.skip("BHUNIA_ADM", "spaces of different dimensions")
    if M.n == 2:
        cor1 = be.bound_cor1(M.block(0, 0), M.block(0, 1), M.block(1, 0), M.block(1, 1))
        report.agrees("cor1==THM2", cor1, thm2, 1e-10 * max(1.0, thm2))


@checker("spectral")
def check_spectral(report: BoundReport, inputs):
    A1, B1, A2, B2 = (as_cmatrix(inputs[k]) for k in ("A1", "B1", "A2", "B2"))
    report.oracle_value = spectral_radius(A1 @ B1 + A2 @ B2)
    cor_s1 = sb.bound_cor_s1(A1, B1, A2, B2)
    stud = sb.aok_stud(A1, B1, A2, B2)
    ams = sb.kittaneh_ams(A1, B1, A2, B2)
    th3 = sb.bound_th3([sb.FactorPair(A1, B1), sb.FactorPair(A2, B2)])
    report.bound("cor_s1", cor_s1)
    report.bound("aok_stud", stud)
    report.bound("kittaneh_ams", ams)
    report.at_most("cor_s1<=aok_stud", cor_s1, stud)
    report.at_most("aok_stud<=kittaneh_ams", stud, ams)
    report.at_most("cor_s1<=th3", cor_s1, th3)
    x, y = operator_norm(B1 @ A2), operator_norm(B2 @ A1)
    if x > 0 and y > 0:
        scaled = sb.scaled_th3_pair(A1, B1, A2, B2, float(np.sqrt(x / y)))
        report.agrees("th3(t*)==cor_s1", scaled, cor_s1, 1e-9 * max(1.0, cor_s1))

    if "A3" in inputs:
        A3, B3 = as_cmatrix(inputs["A3"]), as_cmatrix(inputs["B3"])
        triple = [sb.FactorPair(A1, B1), sb.FactorPair(A2, B2), sb.FactorPair(A3, B3)]
        report.bound("th3[3 pairs]", sb.bound_th3(triple), spectral_radius(A1 @ B1 + A2 @ B2 + A3 @ B3))

    A, B = as_cmatrix(inputs["A"]), as_cmatrix(inputs["B"])
    r_sum = spectral_radius(A + B)
    s2 = sb.bound_sum_s2(A, B)
    report.bound("s2", s2, r_sum)
    report.at_most("s2<=aok_sum", s2, sb.aok_sum_baseline(A, B))
    s3 = sb.bound_commutator_s3(A, B)
    r_plus, r_minus = spectral_radius(A @ B + B @ A), spectral_radius(A @ B - B @ A)
    report.bound("s3[+]", s3, r_plus)
    report.bound("s3[-]", s3, r_minus)
    report.at_most("s3<=aok_commutator", s3, sb.aok_commutator_baseline(A, B))
    s4 = sb.bound_commutator_s4(A, B)
    s4_base = sb.aok_commutator_pair_baseline(A, B)
    for label, value, base in zip(("AB", "BA"), s4, s4_base):
        report.bound(f"s4[{label},+]", value, r_plus)
        report.bound(f"s4[{label},-]", value, r_minus)
        report.at_most(f"s4[{label}]<=aok_pair", value, base)
    s5 = sb.bound_product_s5(A, B)
    report.bound("s5", s5, spectral_radius(A @ B))
    report.at_most("s5<=aok_product", s5, sb.aok_product_baseline(A, B))


@checker("poly")
def check_poly(report: BoundReport, inputs):
    p = PolySpec(tuple(inputs["coeffs"]))
    report.oracle_value = max_root_modulus(p)
    est, abd = bound_estpoly(p), bound_abd(p)
    report.bound("estpoly", est)
    report.bound("abd", abd)
    w_companion = numerical_radius(companion(p))
    report.bound("w(C(p))", w_companion)
    report.at_most("w(C(p))<=estpoly", w_companion, est)
    report.at_most("estpoly<=abd", est, abd)
    a = alpha(p)
    report.at_most("alpha>=0", 0.0, a, slack=1e-15 * max(1.0, a))
    if a > ALPHA_STRICT:
        report.at_most("estpoly<abd", est, abd - STRICT_GAP, slack=0.0)
    report.agrees("companion_cor1==estpoly", bound_companion_cor1(p), est, 1e-10 * max(1.0, est))
    if "expected_bound" in inputs:
        report.agrees("estpoly~expected", est, inputs["expected_bound"], 1e-3)
        report.agrees("max_root~expected", report.oracle_value, inputs["expected_root"], 1e-3)


@checker("kron")
def check_kron(report: BoundReport, inputs):
    A, B = as_cmatrix(inputs["A"]), as_cmatrix(inputs["B"])
    report.oracle_value = numerical_radius(kron(A, B))
    cor3, khare, holb = be.bound_kron_cor3(A, B), be.khare_bound(A, B), be.holbrook(A, B)
    report.bound("kron_cor3", cor3)
    report.bound("khare", khare)
    report.bound("holbrook", holb)
    report.at_most("kron_cor3<=khare", cor3, khare)
    if not np.any(A.imag) and np.all(A.real >= 0):
        report.at_most("kron_cor3<=holbrook", cor3, holb)


def _small_hardy(N: int) -> KernelSpace:
    return hardy_space(N, hardy_grid(**SMALL_HARDY_GRID))


@checker("berezin")
def check_berezin(report: BoundReport, inputs):
    M = _blocks(inputs)
    spaces = [_small_hardy(d) for d in M.row_dims]
    report.oracle_value = block_berezin_radius(M, spaces)
    thm = bound_thm_ber(M, spaces)
    report.bound("thm_ber", thm)
    bakherad = bakherad_bound(M, spaces)
    report.bound("bakherad", bakherad)
    report.at_most("thm_ber<=bakherad", thm, bakherad)
    for K in spaces:
        report.at_most(f"kernel_norm_identity[N={K.dim}]", kernel_norm_identity_error(K), 1e-10, slack=0.0)
        report.at_most(f"unit_kernels[N={K.dim}]", K.unit_norm_error(), 1e-12, slack=0.0)
    for i in range(M.n):
        A = M.block(i, i)
        report.at_most(f"ber(A{i}{i})<=w", berezin_radius(A, spaces[i]), numerical_radius(A))
        for j in range(M.n):
            if i != j:
                report.at_most(f"||A{i}{j}||_ber<=||A{i}{j}||", berezin_norm(M.block(i, j), spaces[j]),
                               operator_norm(M.block(i, j)))
    extra = hardy_grid(levels=6, angles=16, sweep_steps=8, sweep_angles=4)
    A00 = M.block(0, 0)
    report.at_most("ber grows with the grid", berezin_radius(A00, spaces[0]),
                   berezin_radius(A00, spaces[0].refined(extra)))
    if M.n == 1:
        return
    A01 = M.block(0, 1)
    report.at_most("||.||_ber grows with the grid", berezin_norm(A01, spaces[1]),
                   berezin_norm(A01, spaces[1].refined(extra)))

    # pointwise inner-product inequality on every pair of grid kernels
    A12, A21 = M.block(0, 1), M.block(1, 0)
    k1, k2 = spaces[0].normalized_kernels(), spaces[1].normalized_kernels()
    lhs = np.abs(k1.conj().T @ A12 @ k2) + np.abs(k2.conj().T @ A21 @ k1).T
    report.at_most("inner-product lemma on kernels", float(lhs.max()),
                   ber_lemma_rhs(A12, A21, spaces[1]), slack=1e-9)
    if M.n == 2:
        A, B, C, D = M.block(0, 0), A12, A21, M.block(1, 1)
        cor1b = bound_cor1b(A, B, C, D, spaces)
        report.agrees("cor1b==thm_ber", cor1b, thm, 1e-10 * max(1.0, thm))
        report.at_most("cor1b<=bakherad_baseline", cor1b, bakherad_baseline(A, B, C, D, spaces))


@checker("hardy")
def check_hardy(report: BoundReport, inputs):
    example = hardy_example(int(inputs["N"]), slack_rel=report.slack_rel)
    report.oracle_value = example.oracle_value
    report.checks.extend(example.checks)
    report.slack_used = max(report.slack_used, example.slack_used)


@checker("shift")
def check_shift(report: BoundReport, inputs):
    n = int(inputs["n"])
    report.oracle_value = shift_radius(n)
    report.agrees("w(L_n)", numerical_radius(lower_shift(n)), report.oracle_value, 1e-8)


@checker("selftest")
def check_selftest(report: BoundReport, inputs):
    A, U = as_cmatrix(inputs["A"]), as_cmatrix(inputs["U"])
    w = numerical_radius(A)
    norm = operator_norm(A)
    report.oracle_value = w
    report.bound("||A||", norm)
    report.at_most("||A||/2<=w(A)", 0.5 * norm, w, slack=1e-9)
    report.at_most("r(A)<=w(A)", spectral_radius(A), w)
    report.agrees("w(U*AU)==w(A)", numerical_radius(U.conj().T @ A @ U), w, 1e-8 * max(1.0, w))
    report.at_most("w(A^2)<=w(A)^2", numerical_radius(A @ A), w * w)
    if inputs.get("ensemble") == Ensemble.NORMAL.value:
        report.agrees("normal: w==r", w, spectral_radius(A), 1e-8 * max(1.0, w))
        report.agrees("normal: w==||A||", w, norm, 1e-8 * max(1.0, w))
    X = unit_vectors(np.random.default_rng(int(inputs["probe_seed"])), A.shape[0], PROBES_PER_TRIAL)
    values = np.abs(np.einsum('ip,ip->p', np.conj(X), A @ X))
    report.at_most("|<Ax,x>|<=w(A)", float(values.max()), w, slack=1e-9)

    T = as_cmatrix(inputs["T"])
    w_t = numerical_radius(T)
    report.agrees("numrad_nonneg==w", numrad_nonneg(T), w_t, 1e-8 * max(1.0, w_t))
    row = np.asarray(inputs["row"], dtype=np.complex128)
    R = np.zeros((row.size, row.size), dtype=np.complex128)
    R[0] = row
    closed = rank_one_row_radius(row)
    report.agrees("rank-one row", numerical_radius(R), closed, 1e-8 * max(1.0, closed))


@checker("lemmas")
def check_lemmas(report: BoundReport, inputs):
    A, B, S = as_cmatrix(inputs["A"]), as_cmatrix(inputs["B"]), as_cmatrix(inputs["S"])
    rng = np.random.default_rng(int(inputs["probe_seed"]))
    p, q = A.shape
    rhs = be.lemma4_rhs(A, B)
    report.oracle_value = rhs
    X, Y = unit_vectors(rng, q, PROBES_PER_TRIAL), unit_vectors(rng, p, PROBES_PER_TRIAL)
    lhs = (np.abs(np.einsum('ip,ip->p', np.conj(Y), A @ X))
           + np.abs(np.einsum('ip,ip->p', np.conj(X), B @ Y)))
    report.at_most("inner-product lemma", float(lhs.max()), rhs, slack=INNER_PRODUCT_SLACK)

    d = S.shape[0]
    x, y, z = (complex_gaussian(rng, (d, PROBES_PER_TRIAL)) for _ in range(3))

    def inner(u, v):
        return np.einsum('ip,ip->p', np.conj(v), u)

    left = np.abs(inner(x, z) * inner(z, y))
    right = 0.5 * (np.linalg.norm(x, axis=0) * np.linalg.norm(y, axis=0) + np.abs(inner(x, y))) \
        * np.linalg.norm(z, axis=0) ** 2
    k = int(np.argmax(left - right))
    report.at_most("buzano", float(left[k]), float(right[k]), slack=BUZANO_SLACK)

    zero = np.zeros_like(S)
    w_s = numerical_radius(S)
    report.agrees("w([[0,S],[S,0]])==w(S)", numerical_radius(flatten(BlockMatrix.from_grid([[zero, S], [S, zero]]))),
                  w_s, 1e-8 * max(1.0, w_s))
    report.agrees("sup_theta_norm(S,S)==2w(S)", sup_theta_norm(S, S), 2.0 * w_s, 1e-8 * max(1.0, w_s))
    off = BlockMatrix.from_grid([[np.zeros((p, p)), A], [B, np.zeros((q, q))]])
    sup = sup_theta_norm(A, B)
    report.agrees("sup_theta_norm==2w(off-diagonal)", sup, 2.0 * numerical_radius(flatten(off)),
                  1e-8 * max(1.0, sup))

    lower = np.abs(S) * rng.uniform(0.0, 1.0, S.shape)
    report.at_most("nonnegative monotonicity", numrad_nonneg(lower), numrad_nonneg(np.abs(S)), slack=1e-10)


@checker("corollaries")
def check_corollaries(report: BoundReport, inputs):
    A, B = as_cmatrix(inputs["A"]), as_cmatrix(inputs["B"])
    w_a = numerical_radius(A)
    report.oracle_value = w_a
    single = be.bound_single(A)
    report.bound("single", single)
    report.at_most("single<=||A||", single, operator_norm(A), slack=1e-9)

    C = as_cmatrix(inputs["C"])
    sup = sup_theta_norm(B, C)
    cor6 = be.bound_sum_cor6(B, C)
    report.at_most("||B+C*||<=sup_theta", operator_norm(B + C.conj().T), sup)
    report.at_most("sup_theta<=cor6", sup, cor6)
    report.at_most("cor6<=hizliyel", cor6, be.hizliyel_bound(B, C))

    D = as_cmatrix(inputs["D"])
    grid = BlockMatrix.from_grid([[A, B], [C, D]])
    w_grid = numerical_radius(flatten(grid))
    cor1 = be.bound_cor1(A, B, C, D)
    report.bound("cor1", cor1, w_grid)
    report.at_most("cor1<=paul_bag", cor1, be.paul_bag_bound(A, B, C, D))

    P, Q = as_cmatrix(inputs["P"]), as_cmatrix(inputs["Q"])
    a, t = float(inputs["alpha"]), float(inputs["t"])
    norm_sum = operator_norm(P + Q)
    report.bound("positive_sum", be.bound_positive_sum(P, Q, a, t), norm_sum)
    half = be.bound_positive_sum(P, Q, 0.5, 0.5)
    report.agrees("positive_sum(1/2)==kittaneh", half, be.kittaneh_positive_sum(P, Q), 1e-9 * max(1.0, half))
    report.bound("kittaneh_positive_sum", be.kittaneh_positive_sum(P, Q), norm_sum)

    E = as_cmatrix(inputs["E"])
    report.bound("product", be.bound_product(A, E), numerical_radius(A @ E))
    coeffs = inputs["poly"]
    commuting = coeffs[0] * np.eye(A.shape[0]) + coeffs[1] * A + coeffs[2] * (A @ A)
    report.bound("product[commuting]", be.bound_product(A, commuting, commuting=True),
                 numerical_radius(A @ commuting))

    at = be.aluthge(A, t)
    report.bound("aluthge_upper", be.aluthge_upper(A, t), w_a)
    report.bound("aluthge_transform", be.aluthge_transform_bound(A, t), numerical_radius(at))


# Suites

@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    draw: Callable[[np.random.Generator, RunConfig], Dict[str, Any]]
    fixed: Callable[[RunConfig], List[Tuple[str, Dict[str, Any]]]] = lambda cfg: []


def _draw_block(rng, cfg):
    n = int(rng.integers(2, 5))
    if rng.random() < 1.0 / 3.0:
        dims = [pick_dim(rng, cfg, 1, 6)] * n
    else:
        dims = [pick_dim(rng, cfg, 1, 6) for _ in range(n)]
    blocks = [[random_square(rng, dims[i]) if i == j else random_rect(rng, dims[i], dims[j])
               for j in range(n)] for i in range(n)]
    return {"kind": "block", "blocks": blocks}


def _draw_spectral(rng, cfg):
    d1, p, q = (pick_dim(rng, cfg, 1, 6) for _ in range(3))
    inputs = {"kind": "spectral",
              "A1": random_rect(rng, d1, p), "B1": random_rect(rng, p, d1),
              "A2": random_rect(rng, d1, q), "B2": random_rect(rng, q, d1)}
    if rng.random() < 0.5:
        r = pick_dim(rng, cfg, 1, 6)
        inputs["A3"], inputs["B3"] = random_rect(rng, d1, r), random_rect(rng, r, d1)
    d = pick_dim(rng, cfg, 2, 8)
    inputs["A"], inputs["B"] = random_square(rng, d), random_square(rng, d)
    return inputs


def _draw_poly(rng, cfg):
    n = pick_dim(rng, cfg, 2, 12)
    coeffs = complex_gaussian(rng, n)
    while abs(coeffs[0]) < 1e-6:
        coeffs[0] = complex_gaussian(rng, 1)[0]
    return {"kind": "poly", "coeffs": [complex(c) for c in coeffs]}


def _fixed_poly(cfg):
    anchor = PolySpec.from_high_to_low([1, 0, 1, 1])
    square = PolySpec.from_high_to_low([1, 0, -1])
    return [("poly-z3+z+1", {"kind": "poly", "coeffs": list(anchor.coeffs),
                             "expected_bound": 1.4616, "expected_root": 1.2106}),
            ("poly-z2-1", {"kind": "poly", "coeffs": list(square.coeffs),
                           "expected_bound": 1.0, "expected_root": 1.0})]


def _draw_kron(rng, cfg):
    n, m = pick_dim(rng, cfg, 2, 4), pick_dim(rng, cfg, 2, 5)
    A = rng.uniform(0.0, 1.0, (n, n)) if rng.random() < 0.5 else random_square(rng, n)
    return {"kind": "kron", "A": A, "B": random_square(rng, m)}


def _draw_berezin(rng, cfg):
    n = int(rng.integers(1, 4))
    dims = [pick_dim(rng, cfg, 2, 6) for _ in range(n)]
    blocks = [[random_rect(rng, dims[i], dims[j]) for j in range(n)] for i in range(n)]
    return {"kind": "berezin", "blocks": blocks}


def _fixed_berezin(cfg):
    return [(f"hardy-N{HARDY_N}", {"kind": "hardy", "N": HARDY_N})]


def _draw_selftest(rng, cfg):
    ensemble = random_ensemble(rng)
    d = pick_dim(rng, cfg, 2, 8)
    return {"kind": "selftest", "ensemble": ensemble.value,
            "A": draw_matrix(rng, ensemble, d), "U": haar_unitary(rng, d),
            "T": rng.uniform(0.0, 1.0, (pick_dim(rng, cfg, 2, 8),) * 2),
            "row": [complex(c) for c in complex_gaussian(rng, pick_dim(rng, cfg, 2, 8))],
            "probe_seed": int(rng.integers(0, 2 ** 63))}


def _fixed_selftest(cfg):
    return [(f"shift-n{n:02d}", {"kind": "shift", "n": n}) for n in range(2, 21)]


def _draw_lemmas(rng, cfg):
    p, q, d = (pick_dim(rng, cfg, 1, 6) for _ in range(3))
    return {"kind": "lemmas", "A": random_rect(rng, p, q), "B": random_rect(rng, q, p),
            "S": random_square(rng, d), "probe_seed": int(rng.integers(0, 2 ** 63))}


def _draw_corollaries(rng, cfg):
    d, e = pick_dim(rng, cfg, 2, 8), pick_dim(rng, cfg, 1, 6)
    return {"kind": "corollaries",
            "A": random_square(rng, d), "B": random_rect(rng, d, e),
            "C": random_rect(rng, e, d), "D": random_square(rng, e), "E": random_square(rng, d),
            "P": random_psd(rng, d), "Q": random_psd(rng, d),
            "alpha": float(rng.uniform()), "t": float(rng.uniform()),
            "poly": [complex(c) for c in complex_gaussian(rng, 3)]}


SUITES: Dict[str, Suite] = {s.name: s for s in (
    Suite("numrad-chain", "block-matrix bounds against w(flatten(M))", _draw_block),
    Suite("spectral", "spectral radius bounds for sums, commutators and products", _draw_spectral),
    Suite("poly", "root-modulus bounds against companion eigenvalues", _draw_poly, _fixed_poly),
    Suite("berezin", "Berezin bounds on truncated Hardy spaces", _draw_berezin, _fixed_berezin),
    Suite("oracle-selftest", "oracle cross-checks and closed forms", _draw_selftest, _fixed_selftest),
    Suite("kron", "Kronecker product bounds", _draw_kron),
    Suite("lemmas", "vector inequalities and off-diagonal identities", _draw_lemmas),
    Suite("corollaries", "single, sum, positive-sum, product and Aluthge bounds", _draw_corollaries),
)}


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite '{name}'; choose from {', '.join(SUITES)}") from None


def evaluate(case_id: str, suite: str, inputs: Dict[str, Any], slack_rel: float) -> BoundReport:
    """Run the checker registered for inputs['kind']; evaluation errors propagate to the caller."""
    report = BoundReport(case_id=case_id, oracle_value=float("nan"), suite=suite,
                         slack_rel=slack_rel, inputs=inputs)
    kind = inputs.get("kind")
    if kind not in CHECKS:
        raise BadSpec(f"no checker for case kind {kind!r}")
    try:
        CHECKS[kind](report, inputs)
    except RadiusBoundsError as e:
        logger.error(f"{case_id}: evaluation failed with {type(e).__name__}: {e}")
        raise
    for check in report.violations:
        logger.warning(f"{case_id}: {check.bound_name} violated by {-check.margin:.3e}")
    return report


def thread_count(cfg: RunConfig) -> int:
    threads = cfg.threads
    if not threads:
        raw = os.environ.get(THREADS_ENV, "0")
        try:
            threads = int(raw)
        except ValueError:
            raise BadSpec(f"{THREADS_ENV} must be an integer, got {raw!r}")
        if threads < 0:
            raise BadSpec(f"{THREADS_ENV} must be nonnegative, got {threads}")
    return threads or os.cpu_count() or 1


def run_suite(name: str, cfg: Optional[RunConfig] = None) -> List[BoundReport]:
    """Fixed cases first, then cfg.trials random trials in trial-index order."""
    cfg = cfg or RunConfig()
    suite = get_suite(name)
    threads = thread_count(cfg)
    logger.info(f"Running suite {name} with {cfg.trials} trials on {threads} threads (seed {cfg.master_seed})")

    reports = [evaluate(case_id, name, inputs, cfg.slack_rel) for case_id, inputs in suite.fixed(cfg)]

    def trial(index: int) -> BoundReport:
        inputs = suite.draw(trial_rng(cfg.master_seed, name, index), cfg)
        return evaluate(f"{name}-{index:05d}", name, inputs, cfg.slack_rel)

    if threads == 1:
        reports.extend(trial(i) for i in range(cfg.trials))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports.extend(pool.map(trial, range(cfg.trials)))

    violated = sum(r.violated for r in reports)
    logger.info(f"Suite {name} finished: {len(reports)} reports, {violated} with violations")
    return reports
