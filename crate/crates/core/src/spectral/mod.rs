//! Laplacian eigenpairs and the vector operations built on them.
//!
//! Graphs up to [`SpectralConfig::dense_limit`] vertices go through a dense
//! symmetric eigendecomposition. Larger graphs use a sparse Lanczos iteration
//! with full reorthogonalization (see [`lanczos`]).

mod lanczos;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralConfig {
    /// Residual tolerance `‖Lv − λv‖` accepted for every eigenpair.
    pub tol: f64,
    /// Largest order handled by the dense solver.
    pub dense_limit: usize,
    /// Krylov subspace cap for the sparse solver.
    pub max_krylov_dim: usize,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            tol: 1e-8,
            dense_limit: 4000,
            max_krylov_dim: 2000,
        }
    }
}

impl SpectralConfig {
    pub fn with_tol(tol: f64) -> Self {
        SpectralConfig {
            tol,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: DVector<f64>,
}

/// Second and third Laplacian eigenpairs of a connected graph.
///
/// `y` is the Fiedler vector. When `lambda2 == lambda3` the pair `(y, x)` is
/// one orthonormal basis of the eigenspace, chosen by the solver.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralBasis {
    pub lambda2: f64,
    pub y: DVector<f64>,
    pub lambda3: f64,
    pub x: DVector<f64>,
}

/// A `±1/√n` vector with exactly `n/2` positive entries.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicatorVector(DVector<f64>);

impl IndicatorVector {
    /// `+1/√n` where `positive[i]` holds, `−1/√n` elsewhere.
    pub fn from_mask(positive: &[bool]) -> Result<Self> {
        let n = positive.len();
        let count = positive.iter().filter(|&&p| p).count();
        if n == 0 || 2 * count != n {
            return Err(Error::input(format!(
                "indicator needs exactly half of {n} entries positive, got {count}"
            )));
        }
        let h = 1.0 / (n as f64).sqrt();
        Ok(IndicatorVector(DVector::from_iterator(
            n,
            positive.iter().map(|&p| if p { h } else { -h }),
        )))
    }

    pub fn vector(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn into_vector(self) -> DVector<f64> {
        self.0
    }
}

/// Dense combinatorial Laplacian `D − Adj`.
pub fn laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut l = DMatrix::zeros(n, n);
    for v in 0..n {
        l[(v, v)] = g.degree(v) as f64;
    }
    for &(u, v) in g.edges() {
        l[(u, v)] = -1.0;
        l[(v, u)] = -1.0;
    }
    l
}

/// `L v` without forming `L`.
pub fn laplacian_apply(g: &Graph, v: &[f64], out: &mut [f64]) {
    for (u, o) in out.iter_mut().enumerate() {
        let nb: f64 = g.neighbors(u).iter().map(|&w| v[w]).sum();
        *o = g.degree(u) as f64 * v[u] - nb;
    }
}

/// `vᵀ L v` as a sum over edges of `(v_u − v_w)²`.
pub fn quadratic_form(g: &Graph, v: &[f64]) -> f64 {
    g.edges().iter().map(|&(a, b)| (v[a] - v[b]).powi(2)).sum()
}

/// Flips `v` so that its first entry of largest magnitude is positive.
///
/// Magnitudes within a relative `1e-8` of the maximum count as tied, so
/// mirror-symmetric eigenvectors get the same sign across solvers.
pub(crate) fn canonical_sign(v: &mut DVector<f64>) {
    let max = v.iter().fold(0.0_f64, |acc, e| acc.max(e.abs()));
    if max == 0.0 {
        return;
    }
    if let Some(lead) = v.iter().find(|e| e.abs() >= max * (1.0 - 1e-8)) {
        if *lead < 0.0 {
            v.neg_mut();
        }
    }
}

fn residual(l: &DMatrix<f64>, value: f64, v: &DVector<f64>) -> f64 {
    (l * v - v * value).norm()
}

/// The `k` smallest eigenpairs of a symmetric matrix, ascending, with unit
/// vectors under the canonical sign convention.
pub fn smallest_eigenpairs(l: &DMatrix<f64>, k: usize, tol: f64) -> Result<Vec<EigenPair>> {
    let n = l.nrows();
    if l.ncols() != n {
        return Err(Error::input("matrix is not square"));
    }
    if k == 0 || k > n {
        return Err(Error::input(format!(
            "cannot take {k} eigenpairs of an order-{n} matrix"
        )));
    }
    let asym = (l - l.transpose()).amax();
    if asym > tol {
        return Err(Error::input(format!(
            "matrix is not symmetric (max deviation {asym:.3e})"
        )));
    }

    let eig = SymmetricEigen::new(l.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    order
        .into_iter()
        .take(k)
        .map(|idx| {
            let mut vector = eig.eigenvectors.column(idx).into_owned();
            vector.normalize_mut();
            canonical_sign(&mut vector);
            let value = eig.eigenvalues[idx];
            let r = residual(l, value, &vector);
            if r.is_nan() || r > tol {
                return Err(Error::Numeric {
                    msg: format!("eigenpair {value:.6e} exceeds residual tolerance {tol:.1e}"),
                    residual: r,
                });
            }
            Ok(EigenPair { value, vector })
        })
        .collect()
}

/// `(λ2, y, λ3, x)` of a connected graph with at least three vertices.
pub fn spectral_basis(g: &Graph, cfg: &SpectralConfig) -> Result<SpectralBasis> {
    let n = g.n();
    if n < 3 {
        return Err(Error::domain(format!(
            "need at least 3 vertices for two nontrivial eigenpairs, got {n}"
        )));
    }
    if !g.is_connected() {
        return Err(Error::domain("graph is disconnected (λ2 = 0)"));
    }
    let (p2, p3) = if n <= cfg.dense_limit {
        let mut pairs = smallest_eigenpairs(&laplacian(g), 3, cfg.tol)?;
        let p3 = pairs.pop().unwrap();
        let p2 = pairs.pop().unwrap();
        (p2, p3)
    } else {
        let ones = DVector::from_element(n, 1.0 / (n as f64).sqrt());
        let mut pairs = lanczos::smallest_deflated(g, &[ones], 2, cfg)?;
        let p3 = pairs.pop().unwrap();
        let p2 = pairs.pop().unwrap();
        (p2, p3)
    };
    if p2.value <= cfg.tol {
        return Err(Error::domain(format!(
            "λ2 = {:.3e} is not positive; graph is numerically disconnected",
            p2.value
        )));
    }
    Ok(SpectralBasis {
        lambda2: p2.value,
        y: p2.vector,
        lambda3: p3.value,
        x: p3.vector,
    })
}

fn check_constraint_vector(y: &DVector<f64>, tol: f64) -> Result<()> {
    let norm_dev = (y.norm() - 1.0).abs();
    let mean_dev = y.sum().abs();
    if norm_dev > tol || mean_dev > tol {
        return Err(Error::input(format!(
            "constraint vector must be unit and orthogonal to 1 (|‖y‖−1| = {norm_dev:.2e}, |yᵀ1| = {mean_dev:.2e})"
        )));
    }
    Ok(())
}

/// Orthonormal basis of the complement of `span{1, y}`, as columns.
///
/// Built by Gram–Schmidt (two passes) over the standard basis vectors.
fn complement_basis(y: &DVector<f64>) -> Result<DMatrix<f64>> {
    let n = y.len();
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(n);
    basis.push(DVector::from_element(n, 1.0 / (n as f64).sqrt()));
    let mut yy = y.clone();
    for _ in 0..2 {
        let c = basis[0].dot(&yy);
        yy.axpy(-c, &basis[0], 1.0);
    }
    basis.push(yy.normalize());

    for j in 0..n {
        if basis.len() == n {
            break;
        }
        let mut v = DVector::zeros(n);
        v[j] = 1.0;
        for _ in 0..2 {
            for q in &basis {
                let c = q.dot(&v);
                v.axpy(-c, q, 1.0);
            }
        }
        let norm = v.norm();
        if norm > 1e-3 {
            basis.push(v / norm);
        }
    }
    if basis.len() != n {
        return Err(Error::Numeric {
            msg: format!(
                "complement basis has {} of {} vectors",
                basis.len() - 2,
                n - 2
            ),
            residual: f64::NAN,
        });
    }
    Ok(DMatrix::from_columns(&basis[2..]))
}

/// Minimizes `xᵀLx` over unit `x` orthogonal to both `1` and `y`.
///
/// Projects `L` onto an orthonormal basis `Q` of the complement of
/// `span{1, y}` and maps the smallest eigenvector of `QᵀLQ` back through `Q`.
/// Returns `(xᵀLx, x)`.
pub fn constrained_min_quadratic(
    l: &DMatrix<f64>,
    y: &DVector<f64>,
    tol: f64,
) -> Result<(f64, DVector<f64>)> {
    let n = l.nrows();
    if n < 3 {
        return Err(Error::domain(format!(
            "the constraint space is empty for n = {n}"
        )));
    }
    if y.len() != n {
        return Err(Error::input(format!(
            "vector of length {} for order {n}",
            y.len()
        )));
    }
    check_constraint_vector(y, tol)?;

    let q = complement_basis(y)?;
    let projected = q.transpose() * l * &q;
    let projected = (&projected + projected.transpose()) * 0.5;
    let pair = smallest_eigenpairs(&projected, 1, tol)?
        .pop()
        .expect("one eigenpair requested");
    let mut x = &q * pair.vector;
    x.normalize_mut();
    canonical_sign(&mut x);
    let value = (x.transpose() * l * &x)[(0, 0)];
    verify_constraints(&x, y)?;
    Ok((value, x))
}

/// [`constrained_min_quadratic`] for a graph, switching to the sparse solver
/// above the dense limit.
pub fn constrained_min_for_graph(
    g: &Graph,
    y: &DVector<f64>,
    cfg: &SpectralConfig,
) -> Result<(f64, DVector<f64>)> {
    let n = g.n();
    if n <= cfg.dense_limit {
        return constrained_min_quadratic(&laplacian(g), y, cfg.tol);
    }
    if y.len() != n {
        return Err(Error::input(format!(
            "vector of length {} for order {n}",
            y.len()
        )));
    }
    check_constraint_vector(y, cfg.tol)?;
    let ones = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let pair = lanczos::smallest_deflated(g, &[ones, y.clone()], 1, cfg)?
        .pop()
        .expect("one eigenpair requested");
    verify_constraints(&pair.vector, y)?;
    Ok((quadratic_form(g, pair.vector.as_slice()), pair.vector))
}

fn verify_constraints(x: &DVector<f64>, y: &DVector<f64>) -> Result<()> {
    let worst = x
        .sum()
        .abs()
        .max(x.dot(y).abs())
        .max((x.norm() - 1.0).abs());
    if worst > 1e-8 {
        return Err(Error::Numeric {
            msg: "constrained minimizer violates its constraints".into(),
            residual: worst,
        });
    }
    Ok(())
}

/// `u = cosθ·x + sinθ·y`, `v = sinθ·x − cosθ·y`.
pub fn rotate_pair(x: &DVector<f64>, y: &DVector<f64>, theta: f64) -> (DVector<f64>, DVector<f64>) {
    let (s, c) = theta.sin_cos();
    (x * c + y * s, x * s - y * c)
}

/// Unit vector `(x_i·x + y_i·y) / √(x_i² + y_i²)` for vertex `i`, or `None`
/// when the point `(x_i, y_i)` is the origin.
pub fn rotation_for_point(x: &DVector<f64>, y: &DVector<f64>, i: usize) -> Option<DVector<f64>> {
    let (xi, yi) = (x[i], y[i]);
    let r = xi.hypot(yi);
    if r == 0.0 {
        return None;
    }
    Some(x * (xi / r) + y * (yi / r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, grid, path, roach};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn laplacian_small_cases() {
        let k2 = complete(2).unwrap();
        assert_eq!(
            laplacian(&k2),
            DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0])
        );

        let l = laplacian(&path(3).unwrap());
        let vals: Vec<f64> = smallest_eigenpairs(&l, 3, 1e-10)
            .unwrap()
            .into_iter()
            .map(|p| p.value)
            .collect();
        for (got, want) in vals.iter().zip([0.0, 1.0, 3.0]) {
            assert!(close(*got, want, 1e-12), "{vals:?}");
        }

        let g = roach(3).unwrap();
        let l = laplacian(&g);
        let ones = DVector::from_element(g.n(), 1.0);
        assert_eq!((ones.transpose() * &l * &ones)[(0, 0)], 0.0);
        assert!((l.row_sum()).iter().all(|&s| s == 0.0));
    }

    #[test]
    fn known_spectra() {
        let pairs = smallest_eigenpairs(&laplacian(&complete(4).unwrap()), 3, 1e-10).unwrap();
        let vals: Vec<f64> = pairs.iter().map(|p| p.value).collect();
        assert!(
            close(vals[0], 0.0, 1e-12) && close(vals[1], 4.0, 1e-12) && close(vals[2], 4.0, 1e-12)
        );

        let pairs = smallest_eigenpairs(&laplacian(&cycle(4).unwrap()), 3, 1e-10).unwrap();
        let vals: Vec<f64> = pairs.iter().map(|p| p.value).collect();
        assert!(
            close(vals[0], 0.0, 1e-12) && close(vals[1], 2.0, 1e-12) && close(vals[2], 2.0, 1e-12)
        );
        assert!(close(pairs[1].vector.dot(&pairs[2].vector), 0.0, 1e-12));
    }

    #[test]
    fn eigenpairs_argument_errors() {
        let l = laplacian(&path(3).unwrap());
        assert!(matches!(
            smallest_eigenpairs(&l, 0, 1e-8),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            smallest_eigenpairs(&l, 4, 1e-8),
            Err(Error::Input(_))
        ));
        let mut bad = l.clone();
        bad[(0, 1)] = 5.0;
        assert!(matches!(
            smallest_eigenpairs(&bad, 1, 1e-8),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn sign_convention_makes_lead_entry_positive() {
        let mut v = DVector::from_vec(vec![0.1, -0.7, 0.7, 0.2]);
        canonical_sign(&mut v);
        assert_eq!(v[1], 0.7);
        let pairs = smallest_eigenpairs(&laplacian(&path(6).unwrap()), 2, 1e-10).unwrap();
        let f = &pairs[1].vector;
        let max = f.amax();
        let lead = f.iter().find(|e| e.abs() >= max * (1.0 - 1e-8)).unwrap();
        assert!(*lead > 0.0);
    }

    #[test]
    fn spectral_basis_examples() {
        let b = spectral_basis(&roach(4).unwrap(), &SpectralConfig::default()).unwrap();
        assert!(b.lambda2 > 0.0 && b.lambda2 < b.lambda3);

        let disconnected = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            spectral_basis(&disconnected, &SpectralConfig::default()),
            Err(Error::Domain(_))
        ));

        let b = spectral_basis(&complete(4).unwrap(), &SpectralConfig::default()).unwrap();
        assert!(close(b.lambda2, 4.0, 1e-12) && close(b.lambda3, 4.0, 1e-12));
        assert!(close(b.x.dot(&b.y), 0.0, 1e-12));
    }

    #[test]
    fn constrained_with_fiedler_gives_lambda3() {
        let g = roach(4).unwrap();
        let b = spectral_basis(&g, &SpectralConfig::default()).unwrap();
        let (value, x) = constrained_min_quadratic(&laplacian(&g), &b.y, 1e-8).unwrap();
        assert!(close(value, b.lambda3, 1e-10), "{value} vs {}", b.lambda3);
        assert!(close(x.dot(&b.x).abs(), 1.0, 1e-8));
    }

    #[test]
    fn constrained_on_c4_indicator() {
        let g = cycle(4).unwrap();
        let y = IndicatorVector::from_mask(&[true, true, false, false]).unwrap();
        let (value, x) = constrained_min_quadratic(&laplacian(&g), y.vector(), 1e-8).unwrap();
        assert!(close(value, 2.0, 1e-10));
        assert!(x.sum().abs() < 1e-12 && x.dot(y.vector()).abs() < 1e-12);
    }

    #[test]
    fn constrained_errors() {
        let l = laplacian(&complete(2).unwrap());
        let y = DVector::from_vec(vec![0.5f64.sqrt(), -(0.5f64.sqrt())]);
        assert!(matches!(
            constrained_min_quadratic(&l, &y, 1e-8),
            Err(Error::Domain(_))
        ));
        let l = laplacian(&cycle(4).unwrap());
        let bad = DVector::from_vec(vec![1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            constrained_min_quadratic(&l, &bad, 1e-8),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn rotation_examples() {
        let x = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        let y = DVector::from_vec(vec![0.0, 1.0, 0.0]);
        let (u, v) = rotate_pair(&x, &y, std::f64::consts::FRAC_PI_2);
        assert!((u - &y).norm() < 1e-15 && (v - &x).norm() < 1e-15);
        let (u, v) = rotate_pair(&x, &y, 0.0);
        assert_eq!(u, x);
        assert_eq!(v, -&y);

        let x = DVector::from_vec(vec![0.0, 0.6, 0.8]);
        let y = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        assert_eq!(rotation_for_point(&x, &y, 0).unwrap(), y);

        let x = DVector::from_vec(vec![0.5, 0.5, -0.5, -0.5]);
        let y = DVector::from_vec(vec![0.5, -0.5, 0.5, -0.5]);
        let u = rotation_for_point(&x, &y, 0).unwrap();
        assert!((u - (&x + &y) / 2f64.sqrt()).norm() < 1e-15);
        let zero = DVector::from_vec(vec![0.0, 0.0, 0.0, 0.0]);
        assert!(rotation_for_point(&zero, &zero, 1).is_none());
    }

    #[test]
    fn sparse_solver_matches_dense() {
        let g = grid(12, 17).unwrap();
        let dense = spectral_basis(&g, &SpectralConfig::default()).unwrap();
        let cfg = SpectralConfig {
            dense_limit: 0,
            ..Default::default()
        };
        let sparse = spectral_basis(&g, &cfg).unwrap();
        assert!(close(dense.lambda2, sparse.lambda2, 1e-9));
        assert!(close(dense.lambda3, sparse.lambda3, 1e-9));
        assert!(close(dense.y.dot(&sparse.y).abs(), 1.0, 1e-8));
        assert!(close(dense.x.dot(&sparse.x).abs(), 1.0, 1e-8));

        let half = g.n() / 2;
        let y = IndicatorVector::from_mask(
            &(0..g.n())
                .map(|i| (i * 7) % g.n() < half)
                .collect::<Vec<_>>(),
        )
        .unwrap()
        .into_vector();
        let (dv, _) = constrained_min_for_graph(&g, &y, &SpectralConfig::default()).unwrap();
        let (sv, _) = constrained_min_for_graph(&g, &y, &cfg).unwrap();
        assert!(close(dv, sv, 1e-9), "{dv} vs {sv}");
    }

    #[test]
    fn sparse_solver_handles_repeated_eigenvalue() {
        // C8 has λ2 = λ3 = 2 − √2
        let g = cycle(8).unwrap();
        let cfg = SpectralConfig {
            dense_limit: 0,
            ..Default::default()
        };
        let b = spectral_basis(&g, &cfg).unwrap();
        let want = 2.0 - 2f64.sqrt();
        assert!(close(b.lambda2, want, 1e-9) && close(b.lambda3, want, 1e-9));
        assert!(b.x.dot(&b.y).abs() < 1e-9);
    }
}
