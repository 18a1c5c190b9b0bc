//! Sparse Lanczos solver for the smallest Laplacian eigenpairs.
//!
//! Works on `P L P`, where `P` projects out a set of orthonormal deflation
//! vectors, with full reorthogonalization of the Krylov basis. Eigenpairs are
//! extracted one at a time and each found vector is added to the deflation
//! set, so a repeated eigenvalue is returned with its full multiplicity.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{canonical_sign, laplacian_apply, EigenPair, SpectralConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;

const START_SEED: u64 = 0x5eed_1a9c;

/// The `k` smallest eigenpairs of `L` restricted to the orthogonal complement
/// of `deflate`. The deflation vectors must be orthonormal.
pub(super) fn smallest_deflated(
    g: &Graph,
    deflate: &[DVector<f64>],
    k: usize,
    cfg: &SpectralConfig,
) -> Result<Vec<EigenPair>> {
    let mut against: Vec<DVector<f64>> = deflate.to_vec();
    orthonormalize(&mut against);
    let mut found = Vec::with_capacity(k);
    for round in 0..k {
        let pair = smallest_one(g, &against, cfg, START_SEED + round as u64)?;
        against.push(pair.vector.clone());
        found.push(pair);
    }
    found.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(found)
}

fn orthonormalize(vs: &mut [DVector<f64>]) {
    for i in 0..vs.len() {
        for _ in 0..2 {
            for j in 0..i {
                let c = vs[j].dot(&vs[i]);
                let (head, tail) = vs.split_at_mut(i);
                tail[0].axpy(-c, &head[j], 1.0);
            }
        }
        vs[i].normalize_mut();
    }
}

fn project_out(w: &mut DVector<f64>, against: &[DVector<f64>], basis: &[DVector<f64>]) {
    for _ in 0..2 {
        for q in against.iter().chain(basis) {
            let c = q.dot(w);
            w.axpy(-c, q, 1.0);
        }
    }
}

fn apply(g: &Graph, v: &DVector<f64>, against: &[DVector<f64>]) -> DVector<f64> {
    let mut w = DVector::zeros(v.len());
    laplacian_apply(g, v.as_slice(), w.as_mut_slice());
    for d in against {
        let c = d.dot(&w);
        w.axpy(-c, d, 1.0);
    }
    w
}

fn smallest_one(
    g: &Graph,
    against: &[DVector<f64>],
    cfg: &SpectralConfig,
    seed: u64,
) -> Result<EigenPair> {
    let n = g.n();
    let available = n.saturating_sub(against.len());
    if available == 0 {
        return Err(Error::domain("deflation leaves an empty search space"));
    }
    let max_dim = cfg.max_krylov_dim.max(1).min(available);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
    project_out(&mut q, against, &[]);
    q.normalize_mut();

    let mut basis: Vec<DVector<f64>> = vec![q];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut next_check = 30.min(max_dim);
    let mut best_residual = f64::INFINITY;

    loop {
        let j = basis.len() - 1;
        let mut w = apply(g, &basis[j], against);
        let alpha = basis[j].dot(&w);
        w.axpy(-alpha, &basis[j], 1.0);
        if j > 0 {
            w.axpy(-betas[j - 1], &basis[j - 1], 1.0);
        }
        project_out(&mut w, against, &basis);
        alphas.push(alpha);
        let beta = w.norm();
        let m = alphas.len();
        let exhausted = beta <= 1e-12 * (1.0 + alpha.abs()) || m == max_dim;

        if m >= next_check || exhausted {
            let coords = smallest_ritz(&alphas, &betas);
            let estimate = beta * coords[m - 1].abs();
            if estimate <= 0.1 * cfg.tol || exhausted {
                let mut v = DVector::zeros(n);
                for (c, qi) in coords.iter().zip(&basis) {
                    v.axpy(*c, qi, 1.0);
                }
                project_out(&mut v, against, &[]);
                v.normalize_mut();
                canonical_sign(&mut v);
                let lv = apply(g, &v, against);
                let value = v.dot(&lv);
                let residual = (lv - &v * value).norm();
                best_residual = best_residual.min(residual);
                if residual <= cfg.tol {
                    return Ok(EigenPair { value, vector: v });
                }
                if exhausted {
                    return Err(Error::Numeric {
                        msg: format!("Lanczos stopped at dimension {m} without converging"),
                        residual: best_residual,
                    });
                }
            }
            next_check = (next_check * 3 / 2).max(next_check + 10).min(max_dim);
        }
        betas.push(beta);
        basis.push(w / beta);
    }
}

/// Eigenvector of the smallest eigenvalue of the tridiagonal matrix with the
/// given diagonal and off-diagonal.
fn smallest_ritz(alphas: &[f64], betas: &[f64]) -> Vec<f64> {
    let m = alphas.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alphas[i];
        if i + 1 < m {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let idx = eig.eigenvalues.imin();
    eig.eigenvectors.column(idx).iter().copied().collect()
}
