//! Lookup layer: from a verified symmetry profile to the K-functor kind and
//! degree, the Cartan decoration, and the strong-invariant group for a given
//! lattice dimension.

use crate::models::SymmetryReport;
use crate::{Error, Result};

/// Complex (KU) versus real (KO) K-functor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum KKind {
    Complex,
    Real,
}

/// A verified symmetry profile: which symmetries are present, their
/// parities, and the grading reality sign 𝔱(Γ)Γ when both a chiral grading
/// and TRS are declared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryProfile {
    pub chiral: bool,
    pub trs: Option<i8>,
    pub phs: Option<i8>,
    pub grading_reality: Option<i8>,
}

impl SymmetryProfile {
    pub fn none() -> Self {
        SymmetryProfile {
            chiral: false,
            trs: None,
            phs: None,
            grading_reality: None,
        }
    }

    /// Extract the profile from a grid-verified symmetry report, rejecting
    /// reports whose residuals exceed the tolerance.
    pub fn from_report(report: &SymmetryReport, tol: f64) -> Result<SymmetryProfile> {
        let admit = |residual: Option<f64>, parity: Option<i8>, name: &str| -> Result<Option<i8>> {
            match residual {
                None => Ok(None),
                Some(r) if r > tol => Err(Error::InconsistentProfile {
                    what: format!("{name} declared but violated (residual {r:.3e})"),
                }),
                Some(_) => match parity {
                    Some(p) => Ok(Some(p)),
                    None => Err(Error::InconsistentProfile {
                        what: format!("{name} parity ΘΘ̄ is not ±1"),
                    }),
                },
            }
        };
        let chiral = match report.chiral_residual {
            None => false,
            Some(r) if r > tol => {
                return Err(Error::InconsistentProfile {
                    what: format!("chiral symmetry declared but violated (residual {r:.3e})"),
                })
            }
            Some(_) => true,
        };
        let trs = admit(report.trs_residual, report.trs_parity, "TRS")?;
        let phs = admit(report.phs_residual, report.phs_parity, "PHS")?;
        if let Some(pr) = report.product_residual {
            if pr > tol {
                return Err(Error::InconsistentProfile {
                    what: format!(
                        "declared PHS is not the product of chiral and TRS (residual {pr:.3e})"
                    ),
                });
            }
        }
        Ok(SymmetryProfile {
            chiral,
            trs,
            phs,
            grading_reality: report.grading_reality,
        })
    }
}

/// The symmetry-class row: K-functor kind and degree plus decorations.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ClassDescriptor {
    pub k_kind: KKind,
    /// Reduced mod 2 (complex) or mod 8 (real); degree −1 is stored as 7.
    pub degree: u8,
    pub cartan: &'static str,
    pub subalgebra_note: String,
}

/// The invariant group: Z, Z_2, or trivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum AbelianGroup {
    Z,
    Z2,
    Trivial,
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AbelianGroup::Z => write!(f, "Z"),
            AbelianGroup::Z2 => write!(f, "Z_2"),
            AbelianGroup::Trivial => write!(f, "0"),
        }
    }
}

/// KO groups of the point, degrees 0..7.
pub const KO_POINT: [AbelianGroup; 8] = [
    AbelianGroup::Z,
    AbelianGroup::Z2,
    AbelianGroup::Z2,
    AbelianGroup::Trivial,
    AbelianGroup::Z,
    AbelianGroup::Trivial,
    AbelianGroup::Trivial,
    AbelianGroup::Trivial,
];

/// Map a consistent profile to its classification row.
///
/// Rows: none → (complex, 0); chiral only → (complex, 1); a single real
/// symmetry → (real, 0/4) for TRS even/odd and (real, 2/6) for PHS
/// even/odd; chiral together with TRS picks the real degree 1, 7, 3, 5
/// according to (TRS parity, 𝔱(Γ)Γ) = (+,+), (+,−), (−,−), (−,+).
pub fn classify(profile: &SymmetryProfile) -> Result<ClassDescriptor> {
    let desc = |k_kind, degree: u8, cartan, note: &str| ClassDescriptor {
        k_kind,
        degree,
        cartan,
        subalgebra_note: note.to_string(),
    };
    match (profile.chiral, profile.trs, profile.phs) {
        (false, None, None) => Ok(desc(KKind::Complex, 0, "A", "A ⊗ Cl_1")),
        (true, None, None) => Ok(desc(KKind::Complex, 1, "AIII", "(A, γ)")),
        (false, Some(1), None) => Ok(desc(KKind::Real, 0, "AI", "A^f ⊗ Cl_{1,0}")),
        (false, Some(-1), None) => Ok(desc(KKind::Real, 4, "AII", "A^f ⊗ Cl_{0,3}")),
        (false, None, Some(1)) => Ok(desc(KKind::Real, 2, "D", "A^f ⊗ Cl_{0,1}")),
        (false, None, Some(-1)) => Ok(desc(KKind::Real, 6, "C", "A^f ⊗ Cl_{3,0}")),
        (true, Some(eta_t), phs) => {
            let reality = profile
                .grading_reality
                .ok_or_else(|| Error::InconsistentProfile {
                    what: "chiral+TRS profile without a grading reality sign".into(),
                })?;
            // the PHS parity is determined: η_P = 𝔱(Γ)Γ · η_T
            if let Some(eta_p) = phs {
                if eta_p != reality * eta_t {
                    return Err(Error::InconsistentProfile {
                        what: format!(
                            "declared PHS parity {eta_p:+} contradicts 𝔱(Γ)Γ·η_T = {:+}",
                            reality * eta_t
                        ),
                    });
                }
            }
            match (eta_t, reality) {
                (1, 1) => Ok(desc(KKind::Real, 1, "BDI", "A^f ⊗ Cl_{2,2}")),
                (1, -1) => Ok(desc(KKind::Real, 7, "CI", "A^f ⊗ Cl_{3,1}")),
                (-1, -1) => Ok(desc(KKind::Real, 3, "DIII", "A^f ⊗ Cl_{1,3}")),
                (-1, 1) => Ok(desc(KKind::Real, 5, "CII", "A^f ⊗ Cl_{0,4}")),
                _ => Err(Error::InconsistentProfile {
                    what: "parities must be ±1".into(),
                }),
            }
        }
        (true, None, Some(eta_p)) => {
            // chiral + PHS implies TRS = γ∘𝔭 with η_T = 𝔱(Γ)Γ·η_P
            let reality = profile
                .grading_reality
                .ok_or_else(|| Error::InconsistentProfile {
                    what: "chiral+PHS profile without a grading reality sign".into(),
                })?;
            let implied = SymmetryProfile {
                chiral: true,
                trs: Some(reality * eta_p),
                phs: Some(eta_p),
                grading_reality: Some(reality),
            };
            classify(&implied)
        }
        (false, Some(_), Some(_)) => Err(Error::InconsistentProfile {
            what: "TRS and PHS without the chiral symmetry their product generates".into(),
        }),
        _ => Err(Error::InconsistentProfile {
            what: "parities must be ±1".into(),
        }),
    }
}

/// The group of strong invariants in lattice dimension d: K_{degree−d} of
/// the point. Complex classes alternate Z / 0; real classes look up the
/// KO(point) table at (degree − d) mod 8.
pub fn strong_invariant_group(descriptor: &ClassDescriptor, d: usize) -> AbelianGroup {
    match descriptor.k_kind {
        KKind::Complex => {
            if (descriptor.degree as i64 - d as i64).rem_euclid(2) == 0 {
                AbelianGroup::Z
            } else {
                AbelianGroup::Trivial
            }
        }
        KKind::Real => {
            let idx = (descriptor.degree as i64 - d as i64).rem_euclid(8) as usize;
            KO_POINT[idx]
        }
    }
}

/// Conventional tenfold-way label; decoration only, no classification logic
/// depends on it.
pub fn cartan_label(descriptor: &ClassDescriptor) -> &'static str {
    descriptor.cartan
}
