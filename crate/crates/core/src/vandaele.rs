//! Odd self-adjoint unitaries at matrix scale: spectral flattening with a
//! gap-certified linear homotopy, rotation paths between anticommuting
//! elements, the Q_e compression onto the positive graded subspace, and the
//! degree-wise unitary representatives with their symmetry conditions.

use crate::graded::GradedRealAlgebra;
use crate::mat::{
    anticommutator, check_unitary, conj, cr, eigh, kron, norm, selfadjoint_residual,
    unitary_residual, CMat,
};
use crate::{Error, Result, TOL_ALG, TOL_GAP};
use nalgebra::DVector;
use num_complex::Complex64;

/// A validated odd self-adjoint unitary of a graded (real) algebra.
#[derive(Debug, Clone)]
pub struct Osu {
    pub element: CMat,
    pub residual_selfadjoint: f64,
    pub residual_unitary: f64,
    pub residual_odd: f64,
    pub residual_real: Option<f64>,
}

impl Osu {
    pub fn new(alg: &GradedRealAlgebra, element: CMat) -> Result<Osu> {
        let residual_selfadjoint = selfadjoint_residual(&element);
        let residual_unitary = unitary_residual(&element);
        let residual_odd = norm(&(alg.grade(&element) + &element));
        let residual_real = match &alg.theta {
            Some(_) => Some(norm(&(alg.real(&element)? - &element))),
            None => None,
        };
        let osu = Osu {
            element,
            residual_selfadjoint,
            residual_unitary,
            residual_odd,
            residual_real,
        };
        if osu.residual_selfadjoint > TOL_ALG {
            return Err(Error::NotSelfAdjoint {
                residual: osu.residual_selfadjoint,
            });
        }
        if osu.residual_unitary > TOL_ALG {
            return Err(Error::NotUnitary {
                residual: osu.residual_unitary,
            });
        }
        if osu.residual_odd > TOL_ALG {
            return Err(Error::NotHomogeneous {
                to_plus: osu.residual_odd,
                to_minus: 0.0,
            });
        }
        if let Some(r) = osu.residual_real {
            if r > TOL_ALG {
                return Err(Error::InconsistentReal {
                    what: format!("element is not R-invariant (residual {r:.3e})"),
                });
            }
        }
        Ok(osu)
    }

    pub fn max_residual(&self) -> f64 {
        [
            self.residual_selfadjoint,
            self.residual_unitary,
            self.residual_odd,
            self.residual_real.unwrap_or(0.0),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum WitnessKind {
    Rotation,
    Linear,
}

/// A sampled homotopy of odd self-adjoint (or just self-adjoint invertible)
/// elements. Validity is the worst constraint residual and the smallest
/// spectral gap over the samples.
#[derive(Debug, Clone, serde::Serialize)]
pub struct HomotopyWitness {
    pub kind: WitnessKind,
    pub samples: usize,
    pub max_residual: f64,
    pub min_gap: f64,
    pub endpoint_residuals: (f64, f64),
}

impl HomotopyWitness {
    pub fn valid(&self) -> bool {
        self.max_residual < TOL_ALG && self.min_gap > TOL_GAP
    }
}

/// Result of spectral flattening: sgn(h), its gap data, and the witness for
/// the linear path (1−t)h + t·sgn(h) staying invertible.
#[derive(Debug, Clone)]
pub struct Flattened {
    pub sign: CMat,
    pub gap: f64,
    pub witness: HomotopyWitness,
}

/// sgn(h) and the gap alone, without the homotopy certificate; the cheap
/// core used by grid sweeps.
pub fn sign_matrix(h: &CMat) -> Result<(CMat, f64)> {
    let sa = selfadjoint_residual(h);
    if sa > TOL_ALG {
        return Err(Error::NotSelfAdjoint { residual: sa });
    }
    let (vals, vecs) = eigh(h);
    let gap = vals.iter().fold(f64::INFINITY, |m, &v| m.min(v.abs()));
    if gap < TOL_GAP {
        return Err(Error::GapFailure {
            at: vec![],
            value: gap,
        });
    }
    let d = CMat::from_diagonal(&DVector::from_iterator(
        h.nrows(),
        vals.iter().map(|&v| cr(v.signum())),
    ));
    Ok((&vecs * d * vecs.adjoint(), gap))
}

/// Spectral flattening sgn(h) of an invertible self-adjoint matrix.
pub fn flatten(h: &CMat) -> Result<Flattened> {
    let sa = selfadjoint_residual(h);
    if sa > TOL_ALG {
        return Err(Error::NotSelfAdjoint { residual: sa });
    }
    let n = h.nrows();
    let (vals, vecs) = eigh(h);
    let gap = vals.iter().fold(f64::INFINITY, |m, &v| m.min(v.abs()));
    if gap < TOL_GAP {
        return Err(Error::GapFailure {
            at: vec![],
            value: gap,
        });
    }
    let d = CMat::from_diagonal(&DVector::from_iterator(
        n,
        vals.iter().map(|&v| cr(v.signum())),
    ));
    let sign = &vecs * d * vecs.adjoint();
    // linear path h → sgn(h): each eigenvalue moves to its own sign, so the
    // path gap is certified by sampling
    let samples = 32;
    let mut min_gap = f64::INFINITY;
    let mut max_residual = 0.0f64;
    for i in 0..=samples {
        let t = i as f64 / samples as f64;
        let x = h * cr(1.0 - t) + &sign * cr(t);
        max_residual = max_residual.max(selfadjoint_residual(&x));
        let (pv, _) = eigh(&x);
        min_gap = min_gap.min(pv.iter().fold(f64::INFINITY, |m, &v| m.min(v.abs())));
    }
    let witness = HomotopyWitness {
        kind: WitnessKind::Linear,
        samples,
        max_residual,
        min_gap,
        endpoint_residuals: (0.0, 0.0),
    };
    Ok(Flattened { sign, gap, witness })
}

/// The rotation path w(t) = cos(t)·e₁ + sin(t)·e₂ for anticommuting odd
/// self-adjoint unitaries; over [0, π/2] it connects e₁ to e₂ and over
/// [0, π] it connects e₁ to −e₁, staying inside the OSUs throughout.
pub fn rotation_homotopy(
    alg: &GradedRealAlgebra,
    e1: &Osu,
    e2: &Osu,
) -> Result<HomotopyWitness> {
    let ac = norm(&anticommutator(&e1.element, &e2.element));
    if ac > TOL_ALG {
        return Err(Error::Hypothesis {
            what: format!("e1 and e2 do not anticommute (residual {ac:.3e})"),
        });
    }
    let samples = 64;
    let mut max_residual = 0.0f64;
    let mut min_gap = f64::INFINITY;
    let mut end0 = 0.0;
    let mut end1 = 0.0;
    for i in 0..=samples {
        let t = std::f64::consts::PI * i as f64 / samples as f64;
        let w = &e1.element * cr(t.cos()) + &e2.element * cr(t.sin());
        let osu = Osu::new(alg, w.clone())?;
        max_residual = max_residual.max(osu.max_residual());
        let (vals, _) = eigh(&w);
        min_gap = min_gap.min(vals.iter().fold(f64::INFINITY, |m, &v| m.min(v.abs())));
        if i == 0 {
            end0 = norm(&(&w - &e1.element));
        }
        if i == samples {
            end1 = norm(&(&w + &e1.element));
        }
    }
    Ok(HomotopyWitness {
        kind: WitnessKind::Rotation,
        samples,
        max_residual,
        min_gap,
        endpoint_residuals: (end0, end1),
    })
}

/// Q_e(h) = Π₊ e h Π₊ compressed to the +1 eigenspace of the grading
/// operator; unitary there whenever h is an odd self-adjoint unitary.
pub fn q_map(alg: &GradedRealAlgebra, e: &CMat, h: &CMat) -> Result<CMat> {
    let gamma = alg.gamma();
    let (vals, vecs) = eigh(&gamma);
    let n = alg.dim;
    let n_plus = vals.iter().filter(|&&v| v > 0.0).count();
    if n_plus == 0 || n_plus == n {
        return Err(Error::Hypothesis {
            what: "grading operator has a definite sign; no compression".into(),
        });
    }
    let v_plus = vecs.columns(n - n_plus, n_plus).into_owned();
    let q = v_plus.adjoint() * e * h * &v_plus;
    let res = unitary_residual(&q);
    if res > 1e-8 {
        return Err(Error::NotUnitary { residual: res });
    }
    Ok(q)
}

/// x ↦ −e·x·e, the inverse on classes.
pub fn inverse_transform(e: &CMat, x: &CMat) -> CMat {
    -(e * x * e)
}

/// Boersema–Loring degree-wise symmetry conditions on unitaries.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BlRepresentative {
    pub degree: u8,
    pub condition: String,
    pub residual: f64,
    pub selfadjoint: bool,
}

/// Validate the degree-specific condition for a KO_degree representative.
///
/// Degrees 0, 2, 4, 6 take self-adjoint unitaries; degrees 1, 3, 5, 7 take
/// unitaries. Degrees 4, 5, 6 use the quaternionic doubling R^𝔥 = R⊗Ad_{iσ_y},
/// so the element must have twice the algebra's dimension.
pub fn bl_representative(
    degree: u8,
    u: &CMat,
    alg: &GradedRealAlgebra,
) -> Result<BlRepresentative> {
    if alg.theta.is_none() {
        return Err(Error::Unsupported {
            what: "algebra carries no real structure".into(),
        });
    }
    let degree = degree % 8;
    check_unitary(u, TOL_ALG)?;
    let needs_doubling = matches!(degree, 4..=6);
    let expected_dim = if needs_doubling { 2 * alg.dim } else { alg.dim };
    if u.nrows() != expected_dim {
        return Err(Error::DimensionMismatch {
            expected: expected_dim,
            got: u.nrows(),
        });
    }
    let selfadjoint = matches!(degree, 0 | 2 | 4 | 6);
    if selfadjoint {
        let sa = selfadjoint_residual(u);
        if sa > TOL_ALG {
            return Err(Error::NotSelfAdjoint { residual: sa });
        }
    }
    let theta = alg.theta.as_ref().unwrap();
    let r = |x: &CMat| -> CMat {
        if needs_doubling {
            let th = kron(
                &(crate::mat::pauli_y() * Complex64::new(0.0, 1.0)),
                theta,
            );
            &th * conj(x) * th.adjoint()
        } else {
            theta * conj(x) * theta.adjoint()
        }
    };
    let (condition, residual) = match degree {
        0 => ("R(u) = u".to_string(), norm(&(r(u) - u))),
        1 => ("R(U) = U".to_string(), norm(&(r(u) - u))),
        2 => ("R(u) = -u".to_string(), norm(&(r(u) + u))),
        3 => ("R(U) = -U*".to_string(), norm(&(r(u) + u.adjoint()))),
        4 => ("R^h(u) = u".to_string(), norm(&(r(u) - u))),
        5 => ("R^h(U) = U".to_string(), norm(&(r(u) - u))),
        6 => ("R^h(u) = -u".to_string(), norm(&(r(u) + u))),
        7 => ("R(U) = U*".to_string(), norm(&(r(u) - u.adjoint()))),
        _ => unreachable!(),
    };
    if residual > TOL_ALG {
        return Err(Error::Numerical {
            what: format!("degree {degree} condition {condition} violated"),
            residual,
        });
    }
    Ok(BlRepresentative {
        degree,
        condition,
        residual,
        selfadjoint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::default_odd_unitary;
    use crate::mat::{c, identity, pauli_x, pauli_y, pauli_z, zeros};

    fn m2() -> GradedRealAlgebra {
        GradedRealAlgebra::new(2, Some(pauli_z()), None).unwrap()
    }

    #[test]
    fn flatten_examples() {
        let h = CMat::from_diagonal(&DVector::from_vec(vec![cr(2.0), cr(-3.0)]));
        let f = flatten(&h).unwrap();
        assert!(norm(&(&f.sign - &pauli_z())) < 1e-12);
        assert!((f.gap - 2.0).abs() < 1e-12);
        assert!(f.witness.valid());
        // scaling: 2σ_x → σ_x
        let f = flatten(&(pauli_x() * cr(2.0))).unwrap();
        assert!(norm(&(&f.sign - &pauli_x())) < 1e-12);
        // commutes with h and squares to one
        assert!(norm(&crate::mat::commutator(&f.sign, &(pauli_x() * cr(2.0)))) < 1e-12);
        assert!(norm(&(&f.sign * &f.sign - identity(2))) < 1e-12);
        // gapless input rejected with the offending eigenvalue
        assert!(matches!(
            flatten(&zeros(2, 2)),
            Err(Error::GapFailure { .. })
        ));
    }

    #[test]
    fn rotation_path_examples() {
        let alg = m2();
        let e1 = Osu::new(&alg, pauli_x()).unwrap();
        let e2 = Osu::new(&alg, pauli_y()).unwrap();
        let w = rotation_homotopy(&alg, &e1, &e2).unwrap();
        assert!(w.valid(), "{w:?}");
        // e1 = e2 violates the precondition
        let err = rotation_homotopy(&alg, &e1, &e1);
        assert!(err.is_err());
        // 4x4 example with grading σ_z⊗1
        let alg4 = GradedRealAlgebra::new(4, Some(kron(&pauli_z(), &identity(2))), None).unwrap();
        let e1 = Osu::new(&alg4, kron(&pauli_x(), &identity(2))).unwrap();
        let e2 = Osu::new(&alg4, kron(&pauli_y(), &pauli_z())).unwrap();
        let w = rotation_homotopy(&alg4, &e1, &e2).unwrap();
        assert!(w.valid());
    }

    #[test]
    fn q_map_examples() {
        let alg = m2();
        let e = default_odd_unitary(&pauli_z()).unwrap();
        // h = e gives the identity on the plus subspace
        let q = q_map(&alg, &e, &e).unwrap();
        assert!(norm(&(q - identity(1))) < 1e-12);
        // h = σ_y: e·h = σ_xσ_y = iσ_z, so the compression is the 1×1
        // unitary +i (direct 2×2 computation)
        let q = q_map(&alg, &e, &pauli_y()).unwrap();
        assert!((q[(0, 0)] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn q_map_rejects_even_input() {
        // an even h makes Π₊ e h Π₊ vanish, caught as a unitarity failure
        let alg = m2();
        let e = default_odd_unitary(&pauli_z()).unwrap();
        assert!(matches!(
            q_map(&alg, &e, &pauli_z()),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn bl_degree_examples() {
        let alg = GradedRealAlgebra::new(2, None, Some(identity(2))).unwrap();
        // degree 0: σ_z self-adjoint and real
        assert!(bl_representative(0, &pauli_z(), &alg).is_ok());
        // degree 1: R-invariant unitary
        assert!(bl_representative(1, &pauli_x(), &alg).is_ok());
        // degree 2: R(u) = −u
        assert!(bl_representative(2, &pauli_y(), &alg).is_ok());
        // degree 3: U = iσ_y satisfies R(U) = −U*
        assert!(bl_representative(3, &(pauli_y() * c(0.0, 1.0)), &alg).is_ok());
        // degree 7: symmetric unitary satisfies R(U) = U*
        let u = CMat::from_diagonal(&DVector::from_vec(vec![cr(1.0), c(0.0, 1.0)]));
        assert!(bl_representative(7, &u, &alg).is_ok());
        // quaternionic degrees live in the doubling; R^h = R⊗Ad_{iσ_y}
        let alg1 = GradedRealAlgebra::new(1, None, Some(identity(1))).unwrap();
        assert!(bl_representative(4, &kron(&identity(2), &pauli_z()), &alg).is_ok());
        assert!(bl_representative(5, &identity(2), &alg1).is_ok());
        assert!(bl_representative(6, &pauli_y(), &alg1).is_ok());
        // σ_y is R^h-anti-invariant, so it fails degree 4
        assert!(bl_representative(4, &pauli_y(), &alg1).is_err());
        // wrong kind rejected: degree 0 needs self-adjointness
        let u = CMat::from_diagonal(&DVector::from_vec(vec![c(0.0, 1.0), cr(1.0)]));
        assert!(bl_representative(0, &u, &alg).is_err());
        // violated condition rejected: σ_x is R-invariant, not anti-invariant
        assert!(bl_representative(2, &pauli_x(), &alg).is_err());
    }
}
