//! Dense complex matrix helpers shared by every module: Pauli constants,
//! tensor products, Hermitian and unitary eigendecompositions, functional
//! calculus on unitaries, Pfaffians, and linear-span rank computations.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::{Error, Result, TOL_SCALAR};

pub type CMat = DMatrix<Complex64>;
pub type RMat = DMatrix<f64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn zeros(n: usize, m: usize) -> CMat {
    CMat::zeros(n, m)
}

pub fn pauli_x() -> CMat {
    CMat::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)])
}

pub fn pauli_y() -> CMat {
    CMat::from_row_slice(2, 2, &[cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0)])
}

pub fn pauli_z() -> CMat {
    CMat::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)])
}

/// Entrywise complex conjugation (no transpose).
pub fn conj(a: &CMat) -> CMat {
    a.map(|x| x.conj())
}

/// Kronecker product; `a` indexes the outer blocks.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn direct_sum(a: &CMat, b: &CMat) -> CMat {
    let (na, nb) = (a.nrows(), b.nrows());
    let (ma, mb) = (a.ncols(), b.ncols());
    let mut out = zeros(na + nb, ma + mb);
    out.view_mut((0, 0), (na, ma)).copy_from(a);
    out.view_mut((na, ma), (nb, mb)).copy_from(b);
    out
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    a * b + b * a
}

/// Frobenius norm; all residuals in this crate are measured with it.
pub fn norm(a: &CMat) -> f64 {
    a.norm()
}

pub fn unitary_residual(a: &CMat) -> f64 {
    let n = a.nrows();
    norm(&(a * a.adjoint() - identity(n)))
}

pub fn selfadjoint_residual(a: &CMat) -> f64 {
    norm(&(a - a.adjoint()))
}

pub fn check_unitary(a: &CMat, tol: f64) -> Result<()> {
    let residual = unitary_residual(a);
    if residual > tol {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}

/// Distance to the nearest scalar multiple of the identity, with that scalar.
pub fn scalar_part(a: &CMat) -> (Complex64, f64) {
    let n = a.nrows();
    let lambda = a.diagonal().sum() / cr(n as f64);
    let dist = norm(&(a - identity(n) * lambda));
    (lambda, dist)
}

pub fn as_scalar(a: &CMat, tol: f64) -> Option<Complex64> {
    let (lambda, dist) = scalar_part(a);
    (dist <= tol).then_some(lambda)
}

/// Coerce a matrix to ±1. Ambiguity (both distances too large) is an error,
/// never a silent choice.
pub fn scalar_sign(a: &CMat, what: &str) -> Result<i8> {
    let n = a.nrows();
    let to_plus = norm(&(a - identity(n)));
    let to_minus = norm(&(a + identity(n)));
    if to_plus < TOL_SCALAR {
        Ok(1)
    } else if to_minus < TOL_SCALAR {
        Ok(-1)
    } else {
        Err(Error::NotScalarSign {
            what: what.to_string(),
            to_plus,
            to_minus,
        })
    }
}

/// Sign s with ΓxΓ = s·x, or an error when x is not homogeneous.
pub fn homogeneity_sign(gamma: &CMat, x: &CMat) -> Result<i8> {
    let gxg = gamma * x * gamma;
    let to_plus = norm(&(&gxg - x));
    let to_minus = norm(&(&gxg + x));
    if to_plus < TOL_SCALAR {
        Ok(1)
    } else if to_minus < TOL_SCALAR {
        Ok(-1)
    } else {
        Err(Error::NotHomogeneous { to_plus, to_minus })
    }
}

/// Hermitian eigendecomposition with eigenvalues sorted ascending.
/// Ties are broken by lexicographic comparison of the eigenvector entries,
/// so the output is deterministic for identical input.
pub fn eigh(h: &CMat) -> (DVector<f64>, CMat) {
    let n = h.nrows();
    if n == 1 {
        return (DVector::from_element(1, h[(0, 0)].re), identity(1));
    }
    let se = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    let lex = |a: usize, b: usize| -> std::cmp::Ordering {
        for i in 0..n {
            let (x, y) = (se.eigenvectors[(i, a)], se.eigenvectors[(i, b)]);
            match x.re.partial_cmp(&y.re).unwrap_or(std::cmp::Ordering::Equal) {
                std::cmp::Ordering::Equal => {}
                o => return o,
            }
            match x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal) {
                std::cmp::Ordering::Equal => {}
                o => return o,
            }
        }
        std::cmp::Ordering::Equal
    };
    order.sort_by(|&a, &b| {
        se.eigenvalues[a]
            .partial_cmp(&se.eigenvalues[b])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| lex(a, b))
    });
    let vals = DVector::from_iterator(n, order.iter().map(|&i| se.eigenvalues[i]));
    let mut vecs = zeros(n, n);
    for (j, &i) in order.iter().enumerate() {
        vecs.set_column(j, &se.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Eigendecomposition of a unitary matrix u = V diag(λ) V† with unitary V.
///
/// Works by simultaneous diagonalization of the commuting Hermitian pair
/// (u+u†)/2 and (u−u†)/2i; near-degenerate real parts are fused into
/// clusters before the second stage.
pub struct UnitaryEig {
    pub values: Vec<Complex64>,
    pub vectors: CMat,
    pub residual: f64,
}

pub fn eig_unitary(u: &CMat) -> Result<UnitaryEig> {
    check_unitary(u, 1e-8)?;
    let mut best: Option<UnitaryEig> = None;
    for ctol in [1e-7, 1e-5, 1e-9] {
        let cand = eig_unitary_clustered(u, ctol);
        if cand.residual < 1e-11 {
            return Ok(cand);
        }
        if best.as_ref().is_none_or(|b| cand.residual < b.residual) {
            best = Some(cand);
        }
    }
    let best = best.unwrap();
    if best.residual > 1e-8 {
        return Err(Error::Numerical {
            what: "unitary eigendecomposition did not converge".into(),
            residual: best.residual,
        });
    }
    Ok(best)
}

fn eig_unitary_clustered(u: &CMat, ctol: f64) -> UnitaryEig {
    let n = u.nrows();
    let re = (u + u.adjoint()) * cr(0.5);
    let im = (u - u.adjoint()) * c(0.0, -0.5);
    let (cvals, mut v) = eigh(&re);
    // fuse consecutive eigenvalues of the real part, then diagonalize the
    // imaginary part within each cluster
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && cvals[end] - cvals[end - 1] < ctol {
            end += 1;
        }
        if end - start > 1 {
            let block = v.columns(start, end - start).into_owned();
            let s_block = block.adjoint() * &im * &block;
            let (_, w) = eigh(&s_block);
            let rotated = &block * &w;
            v.view_mut((0, start), (n, end - start)).copy_from(&rotated);
        }
        start = end;
    }
    let mut values = Vec::with_capacity(n);
    for j in 0..n {
        let col = v.column(j).into_owned();
        let lambda = (col.adjoint() * u * &col)[(0, 0)];
        values.push(lambda / lambda.norm());
    }
    let lam = CMat::from_diagonal(&DVector::from_iterator(n, values.iter().cloned()));
    let residual = norm(&(u * &v - &v * lam));
    UnitaryEig {
        values,
        vectors: v,
        residual,
    }
}

/// Apply a scalar function to a unitary through its eigendecomposition.
pub fn unitary_fn(u: &CMat, f: impl Fn(Complex64) -> Complex64) -> Result<CMat> {
    let eig = eig_unitary(u)?;
    let d = CMat::from_diagonal(&DVector::from_iterator(
        eig.values.len(),
        eig.values.iter().map(|&l| f(l)),
    ));
    Ok(&eig.vectors * d * eig.vectors.adjoint())
}

/// u^t for a unitary u, taking principal-branch eigenphases in (−π, π].
pub fn unitary_power(u: &CMat, t: f64) -> Result<CMat> {
    unitary_fn(u, |l| Complex64::from_polar(1.0, l.arg() * t))
}

/// Unitary polar factor of a near-invertible matrix: m (m†m)^{-1/2}.
pub fn polar_unitary(m: &CMat) -> CMat {
    let h = m.adjoint() * m;
    let (vals, v) = eigh(&h);
    let inv_sqrt = CMat::from_diagonal(&DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&x| cr(1.0 / x.max(1e-300).sqrt())),
    ));
    m * (&v * inv_sqrt * v.adjoint())
}

/// Pfaffian of an even-dimensional antisymmetric matrix by recursive
/// expansion along the first row. Fine for the small matrices used here.
pub fn pfaffian(a: &CMat) -> Result<Complex64> {
    let n = a.nrows();
    if !n.is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            got: n,
        });
    }
    if n > 12 {
        return Err(Error::Unsupported {
            what: format!("pfaffian of dimension {n} (recursive expansion)"),
        });
    }
    let active: Vec<usize> = (0..n).collect();
    Ok(pf_rec(a, &active))
}

fn pf_rec(a: &CMat, active: &[usize]) -> Complex64 {
    if active.is_empty() {
        return cr(1.0);
    }
    let i0 = active[0];
    let mut total = cr(0.0);
    let mut sign = 1.0;
    for (pos, &j) in active.iter().enumerate().skip(1) {
        let rest: Vec<usize> = active
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != 0 && p != pos)
            .map(|(_, &x)| x)
            .collect();
        total += cr(sign) * a[(i0, j)] * pf_rec(a, &rest);
        sign = -sign;
    }
    total
}

/// All 2^n ordered subset products of a generator list (index-ascending
/// within each product). Spans the generated algebra whenever the
/// generators pairwise commute or anticommute with scalar squares, which
/// holds for every generating set used in this crate.
pub fn subset_products(gens: &[CMat], dim: usize) -> Vec<CMat> {
    let n = gens.len();
    assert!(n <= 16, "subset product blowup");
    let mut out: Vec<CMat> = Vec::with_capacity(1 << n);
    out.push(identity(dim));
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        // ascending order: g_low multiplies from the left of the rest
        let prod = &gens[low] * &out[rest];
        out.push(prod);
    }
    out
}

/// Field over which linear spans are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanField {
    Real,
    Complex,
}

fn flatten_real(m: &CMat) -> Vec<f64> {
    let mut v = Vec::with_capacity(2 * m.len());
    for x in m.iter() {
        v.push(x.re);
        v.push(x.im);
    }
    v
}

fn span_matrix(mats: &[CMat], field: SpanField) -> RMat {
    let cols = 2 * mats[0].len();
    let rows = match field {
        SpanField::Real => mats.len(),
        SpanField::Complex => 2 * mats.len(),
    };
    let mut data = Vec::with_capacity(rows * cols);
    for m in mats {
        data.extend(flatten_real(m));
    }
    if field == SpanField::Complex {
        for m in mats {
            data.extend(flatten_real(&(m * c(0.0, 1.0))));
        }
    }
    RMat::from_row_slice(rows, cols, &data)
}

/// Rank of the linear span of a matrix list over ℝ or ℂ.
pub fn span_rank(mats: &[CMat], field: SpanField) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let a = span_matrix(mats, field);
    let svd = a.svd(false, false);
    let smax = svd.singular_values.max();
    let tol = 1e-9 * smax.max(1.0);
    let raw = svd.singular_values.iter().filter(|&&s| s > tol).count();
    match field {
        SpanField::Real => raw,
        // complex rank counts complex dimensions
        SpanField::Complex => raw / 2 + raw % 2,
    }
}

/// Distance from `target` to the span of `mats` (over the given field),
/// normalized by the norm of `target` when that is large.
pub fn span_distance(mats: &[CMat], target: &CMat, field: SpanField) -> f64 {
    if mats.is_empty() {
        return norm(target);
    }
    let a = span_matrix(mats, field).transpose(); // columns = basis vectors
    let t = RMat::from_column_slice(a.nrows(), 1, &flatten_real(target));
    let svd = a.svd(true, true);
    let x = svd.solve(&t, 1e-12).expect("svd solve");
    let resid = &span_matrix(mats, field).transpose() * x - t;
    resid.norm()
}

/// Standard-normal sample via Box–Muller, driven by the caller's RNG.
fn normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn rand_complex(rng: &mut impl Rng, n: usize, m: usize) -> CMat {
    CMat::from_fn(n, m, |_, _| c(normal(rng), normal(rng)))
}

pub fn rand_hermitian(rng: &mut impl Rng, n: usize) -> CMat {
    let g = rand_complex(rng, n, n);
    (&g + g.adjoint()) * cr(0.5)
}

/// Random unitary with generically gapped spectrum: exp(iH) for a random
/// Hermitian H.
pub fn rand_unitary(rng: &mut impl Rng, n: usize) -> CMat {
    let h = rand_hermitian(rng, n);
    let (vals, v) = eigh(&h);
    let d = CMat::from_diagonal(&DVector::from_iterator(
        n,
        vals.iter().map(|&x| Complex64::from_polar(1.0, x)),
    ));
    &v * d * v.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pauli_relations() {
        let (sx, sy, sz) = (pauli_x(), pauli_y(), pauli_z());
        assert!(norm(&(&sx * &sy - &sy * &sx - pauli_z() * c(0.0, 2.0))) < 1e-14);
        assert!(norm(&(&sx * &sx - identity(2))) < 1e-14);
        assert!(norm(&anticommutator(&sy, &sz)) < 1e-14);
    }

    #[test]
    fn eigh_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [2usize, 4, 8] {
            let h = rand_hermitian(&mut rng, n);
            let (vals, v) = eigh(&h);
            let d = CMat::from_diagonal(&DVector::from_iterator(n, vals.iter().map(|&x| cr(x))));
            assert!(norm(&(&v * d * v.adjoint() - &h)) < 1e-12);
            assert!(unitary_residual(&v) < 1e-12);
            for i in 1..n {
                assert!(vals[i] >= vals[i - 1]);
            }
        }
    }

    #[test]
    fn unitary_eig_random_and_degenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [2usize, 4, 8] {
            let u = rand_unitary(&mut rng, n);
            let eig = eig_unitary(&u).unwrap();
            assert!(eig.residual < 1e-11, "residual {}", eig.residual);
        }
        // fully degenerate spectrum
        let u = identity(4) * c(0.0, 1.0);
        let eig = eig_unitary(&u).unwrap();
        assert!(eig.residual < 1e-13);
        for l in eig.values {
            assert!((l - c(0.0, 1.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn unitary_power_halves() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = rand_unitary(&mut rng, 4);
        let v = unitary_power(&u, 0.5).unwrap();
        assert!(norm(&(&v * &v - &u)) < 1e-11);
    }

    #[test]
    fn pfaffian_small_cases() {
        // 2x2: pf = a01
        let mut a = zeros(2, 2);
        a[(0, 1)] = c(3.0, 1.0);
        a[(1, 0)] = -a[(0, 1)];
        assert!((pfaffian(&a).unwrap() - c(3.0, 1.0)).norm() < 1e-14);
        // 4x4 random antisymmetric: pf^2 = det
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = rand_complex(&mut rng, 4, 4);
        let a = &g - g.transpose();
        let pf = pfaffian(&a).unwrap();
        let det = a.determinant();
        assert!((pf * pf - det).norm() < 1e-10 * det.norm().max(1.0));
    }

    #[test]
    fn span_rank_of_pauli_basis() {
        let mats = vec![identity(2), pauli_x(), pauli_y(), pauli_z()];
        assert_eq!(span_rank(&mats, SpanField::Complex), 4);
        assert_eq!(span_rank(&mats, SpanField::Real), 4);
        let dist = span_distance(&mats, &(pauli_x() * c(0.0, 1.0)), SpanField::Complex);
        assert!(dist < 1e-10);
        let dist_r = span_distance(&mats, &(pauli_x() * c(0.0, 1.0)), SpanField::Real);
        assert!(dist_r > 0.5);
    }

    #[test]
    fn polar_of_near_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = rand_unitary(&mut rng, 3);
        let perturbed = &u + rand_complex(&mut rng, 3, 3) * cr(1e-3);
        let p = polar_unitary(&perturbed);
        assert!(unitary_residual(&p) < 1e-10);
        assert!(norm(&(&p - &u)) < 1e-2);
    }
}
