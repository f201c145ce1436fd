//! Explicit matrix models of real and complex Clifford algebras, graded
//! tensor products with Koszul signs, generator-image isomorphism
//! certificates, and the ungraded species ladder.

use crate::graded::{graded_tensor_algebras, GradedRealAlgebra};
use crate::mat::{
    c, conj, cr, homogeneity_sign, identity, kron, norm, pauli_x, pauli_y, pauli_z, scalar_sign,
    span_distance, span_rank, subset_products, CMat, SpanField,
};
use crate::{Error, Result, TOL_ALG};

/// Real form Cl_{r,s} versus complex form ℂl_{r+s}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Field {
    Real,
    Complex,
}

/// An explicit matrix model of Cl_{r,s} or ℂl_{r+s}: r self-adjoint
/// generators squaring to +1, then s anti-self-adjoint generators squaring
/// to −1, all odd for the grading operator. When the total generator count
/// is odd the model is doubled so that an honest grading operator exists.
#[derive(Debug, Clone)]
pub struct CliffordRep {
    pub r: usize,
    pub s: usize,
    pub dim: usize,
    pub gens: Vec<CMat>,
    pub grading: CMat,
    pub real_structure: Option<CMat>,
    pub field: Field,
}

impl CliffordRep {
    /// Sign of the square of generator i: +1 for i < r, −1 otherwise.
    pub fn square_sign(&self, i: usize) -> f64 {
        if i < self.r {
            1.0
        } else {
            -1.0
        }
    }

    pub fn total(&self) -> usize {
        self.r + self.s
    }

    /// View as a graded real algebra with the generators as distinguished
    /// generating set.
    pub fn as_algebra(&self) -> GradedRealAlgebra {
        GradedRealAlgebra {
            dim: self.dim,
            grading: Some(self.grading.clone()),
            theta: self.real_structure.clone(),
            gens: Some(self.gens.clone()),
        }
    }

    pub fn span_field(&self) -> SpanField {
        match self.field {
            Field::Real => SpanField::Real,
            Field::Complex => SpanField::Complex,
        }
    }

    /// Residual of every type invariant; used by tests and `verify`.
    pub fn invariant_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for (i, g) in self.gens.iter().enumerate() {
            let sign = cr(self.square_sign(i));
            worst = worst.max(norm(&(g.adjoint() - g * sign)));
            worst = worst.max(norm(&(g * g - identity(n) * sign)));
            worst = worst.max(norm(&(&self.grading * g * &self.grading + g)));
            for h in self.gens.iter().skip(i + 1) {
                worst = worst.max(norm(&(g * h + h * g)));
            }
        }
        worst = worst.max(norm(&(&self.grading - self.grading.adjoint())));
        worst = worst.max(norm(&(&self.grading * &self.grading - identity(n))));
        if let Some(t) = &self.real_structure {
            worst = worst.max(crate::mat::unitary_residual(t));
            let ttbar = t * conj(t);
            let (_, dist) = crate::mat::scalar_part(&ttbar);
            worst = worst.max(dist);
            for g in &self.gens {
                worst = worst.max(norm(&(t * conj(g) * t.adjoint() - g)));
            }
        }
        worst
    }
}

const MAX_GENERATORS: usize = 12;

/// Jordan–Wigner ladder of 2m anticommuting self-adjoint unitaries in
/// M_{2^m}: a_{2j} = σ_z^{⊗j} ⊗ σ_x ⊗ 1…, a_{2j+1} = σ_z^{⊗j} ⊗ σ_y ⊗ 1….
fn ladder(m: usize) -> Vec<CMat> {
    let mut out = Vec::with_capacity(2 * m);
    for j in 0..m {
        for sigma in [pauli_x(), pauli_y()] {
            let mut mat = identity(1);
            for i in 0..m {
                let factor = if i < j {
                    pauli_z()
                } else if i == j {
                    sigma.clone()
                } else {
                    identity(2)
                };
                mat = kron(&mat, &factor);
            }
            out.push(mat);
        }
    }
    out
}

/// Whether ladder generator i is entrywise real (σ_x slot) or imaginary
/// (σ_y slot). σ_z factors are real either way.
fn ladder_reality(i: usize) -> i8 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Build the matrix model of Cl_{r,s} (real = true) or ℂl_{r+s}.
///
/// Dimension is 2^⌈(r+s)/2⌉; for odd r+s this is twice the irreducible
/// dimension, the price of carrying an explicit grading operator.
pub fn build_clifford(r: usize, s: usize, real: bool) -> Result<CliffordRep> {
    let n = r + s;
    if n > MAX_GENERATORS {
        return Err(Error::DimensionGuard {
            total: n,
            max: MAX_GENERATORS,
        });
    }
    let m = n.div_ceil(2);
    let dim = 1usize << m;
    let a = ladder(m);
    let mut gens = Vec::with_capacity(n);
    for (i, ai) in a.iter().take(n).enumerate() {
        if i < r {
            gens.push(ai.clone());
        } else {
            gens.push(ai * c(0.0, 1.0));
        }
    }
    let mut grading = identity(1);
    for _ in 0..m {
        grading = kron(&grading, &pauli_z());
    }
    let real_structure = if real {
        Some(search_real_structure(r, s, m, &a, &gens, &grading)?)
    } else {
        None
    };
    let rep = CliffordRep {
        r,
        s,
        dim,
        gens,
        grading,
        real_structure,
        field: if real { Field::Real } else { Field::Complex },
    };
    let res = rep.invariant_residual();
    if res > TOL_ALG {
        return Err(Error::Numerical {
            what: format!("Cl_{{{r},{s}}} model invariants"),
            residual: res,
        });
    }
    Ok(rep)
}

/// Find Θ as a product of ladder generators so that Ad_Θ∘conj fixes every
/// Clifford generator. The required (anti)commutation pattern is solved
/// combinatorially over subsets, smallest products first, then the matrix
/// is built and verified.
fn search_real_structure(
    r: usize,
    s: usize,
    m: usize,
    ladder_gens: &[CMat],
    gens: &[CMat],
    grading: &CMat,
) -> Result<CMat> {
    let n = r + s;
    let total = 2 * m;
    let dim = 1usize << m;
    if n == 0 {
        return Ok(identity(dim.max(1)));
    }
    let mut masks: Vec<u32> = (0u32..(1 << total)).collect();
    masks.sort_by_key(|&mask| (mask.count_ones(), mask));
    'outer: for mask in masks {
        let k = mask.count_ones() as i32;
        for i in 0..n {
            // conjugation sign of the subset product on a_i
            let in_set = (mask >> i) & 1 == 1;
            let tau = if (k - i32::from(in_set)) % 2 == 0 { 1 } else { -1 };
            let epsilon = if i < r { 1 } else { -1 };
            if ladder_reality(i) * tau != epsilon {
                continue 'outer;
            }
        }
        let mut theta = identity(dim);
        for (i, a) in ladder_gens.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                theta *= a;
            }
        }
        // verify: each generator fixed, ΘΘ̄ = ±1, Θ homogeneous
        let ok = gens
            .iter()
            .all(|g| norm(&(&theta * conj(g) * theta.adjoint() - g)) < TOL_ALG)
            && scalar_sign(&(&theta * conj(&theta)), "ΘΘ̄").is_ok()
            && homogeneity_sign(grading, &theta).is_ok();
        if ok {
            return Ok(theta);
        }
    }
    Err(Error::Hypothesis {
        what: format!("no real structure found for Cl_{{{r},{s}}}"),
    })
}

/// Graded tensor product of two Clifford models: positive generators of
/// both factors first, then the negative ones, with the second factor's
/// generators twisted by the first grading operator (Koszul untwisting).
pub fn graded_tensor(a: &CliffordRep, b: &CliffordRep) -> Result<CliffordRep> {
    let alg = graded_tensor_algebras(&a.as_algebra(), &b.as_algebra())?;
    let dim = alg.dim;
    let ga = &a.grading;
    let mut es = Vec::new();
    let mut fs = Vec::new();
    for (i, g) in a.gens.iter().enumerate() {
        let img = kron(g, &identity(b.dim));
        if i < a.r {
            es.push(img);
        } else {
            fs.push(img);
        }
    }
    for (i, h) in b.gens.iter().enumerate() {
        let img = kron(ga, h);
        if i < b.r {
            es.push(img);
        } else {
            fs.push(img);
        }
    }
    let mut gens = es;
    gens.append(&mut fs);
    let field = if a.field == Field::Real && b.field == Field::Real {
        Field::Real
    } else {
        Field::Complex
    };
    let real_structure = if field == Field::Real { alg.theta } else { None };
    let rep = CliffordRep {
        r: a.r + b.r,
        s: a.s + b.s,
        dim,
        gens,
        grading: alg.grading.unwrap_or_else(|| identity(dim)),
        real_structure,
        field,
    };
    let res = rep.invariant_residual();
    if res > TOL_ALG {
        return Err(Error::Numerical {
            what: "graded tensor product invariants".into(),
            residual: res,
        });
    }
    Ok(rep)
}

/// Certificate that the map sending the source generators to the given
/// target elements extends to a graded (real) isomorphism onto the target's
/// generated algebra.
#[derive(Debug, Clone, serde::Serialize)]
pub struct IsoCertificate {
    pub source: String,
    pub target: String,
    pub relation_residual: f64,
    pub worst_pair: Option<(usize, usize)>,
    pub star_residual: f64,
    pub grading_residual: f64,
    pub real_residual: Option<f64>,
    pub source_rank: usize,
    pub image_rank: usize,
    pub expected_rank: usize,
    pub surjectivity_residual: f64,
    pub pass: bool,
}

impl IsoCertificate {
    pub fn max_residual(&self) -> f64 {
        [
            self.relation_residual,
            self.star_residual,
            self.grading_residual,
            self.real_residual.unwrap_or(0.0),
            self.surjectivity_residual,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Check that `images` (elements of `tgt`) realize the relations and degrees
/// of the source Clifford model, extend to an injection (rank of subset
/// words equals 2^{r+s}), and generate the target's distinguished algebra.
pub fn certify_iso(
    src: &CliffordRep,
    tgt: &GradedRealAlgebra,
    images: &[CMat],
) -> Result<IsoCertificate> {
    let n = src.total();
    if images.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: images.len(),
        });
    }
    for img in images {
        if img.nrows() != tgt.dim {
            return Err(Error::DimensionMismatch {
                expected: tgt.dim,
                got: img.nrows(),
            });
        }
    }
    let mut relation_residual = 0.0f64;
    let mut worst_pair = None;
    for i in 0..n {
        for j in i..n {
            let target = if i == j {
                identity(tgt.dim) * cr(2.0 * src.square_sign(i))
            } else {
                crate::mat::zeros(tgt.dim, tgt.dim)
            };
            let res = norm(&(&images[i] * &images[j] + &images[j] * &images[i] - target));
            if res > relation_residual {
                relation_residual = res;
                worst_pair = Some((i, j));
            }
        }
    }
    let mut star_residual = 0.0f64;
    let mut grading_residual = 0.0f64;
    let gt = tgt.gamma();
    for (i, img) in images.iter().enumerate() {
        star_residual = star_residual.max(norm(&(img.adjoint() - img * cr(src.square_sign(i)))));
        grading_residual = grading_residual.max(norm(&(&gt * img * &gt + img)));
    }
    let real_residual = match (&src.real_structure, &tgt.theta) {
        (Some(_), Some(_)) => {
            let mut worst = 0.0f64;
            for img in images {
                worst = worst.max(norm(&(tgt.real(img)? - img)));
            }
            Some(worst)
        }
        _ => None,
    };

    let field = src.span_field();
    let src_words = subset_products(&src.gens, src.dim);
    let img_words = subset_products(images, tgt.dim);
    let source_rank = span_rank(&src_words, field);
    let image_rank = span_rank(&img_words, field);
    let expected_rank = 1usize << n;
    let surjectivity_residual = match &tgt.gens {
        Some(gs) => {
            let mut worst = 0.0f64;
            for g in gs {
                worst = worst.max(span_distance(&img_words, g, field));
            }
            worst
        }
        None => {
            // full matrix algebra target: the image span must have full rank
            let full = tgt.dim * tgt.dim;
            if image_rank == full {
                0.0
            } else {
                f64::INFINITY
            }
        }
    };

    let pass = relation_residual < TOL_ALG
        && star_residual < TOL_ALG
        && grading_residual < TOL_ALG
        && real_residual.is_none_or(|r| r < TOL_ALG)
        && source_rank == expected_rank
        && image_rank == expected_rank
        && surjectivity_residual < 1e-8;
    Ok(IsoCertificate {
        source: format!("Cl({},{})[{:?}]", src.r, src.s, src.field),
        target: format!("algebra(dim {})", tgt.dim),
        relation_residual,
        worst_pair: if relation_residual > TOL_ALG {
            worst_pair
        } else {
            None
        },
        star_residual,
        grading_residual,
        real_residual,
        source_rank,
        image_rank,
        expected_rank,
        surjectivity_residual,
        pass,
    })
}

/// The division ring of an ungraded matrix-algebra species.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum DivisionRing {
    R,
    C,
    H,
}

impl DivisionRing {
    fn dim_over_r(self) -> usize {
        match self {
            DivisionRing::R => 1,
            DivisionRing::C => 2,
            DivisionRing::H => 4,
        }
    }
}

/// Ungraded isomorphism type M_k(D) or M_k(D) ⊕ M_k(D).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Species {
    pub matrix_size: usize,
    pub ring: DivisionRing,
    pub summands: u8,
}

impl std::fmt::Display for Species {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let base = match (self.matrix_size, self.ring) {
            (1, DivisionRing::R) => "R".to_string(),
            (1, DivisionRing::C) => "C".to_string(),
            (1, DivisionRing::H) => "H".to_string(),
            (k, DivisionRing::R) => format!("M_{k}(R)"),
            (k, DivisionRing::C) => format!("M_{k}(C)"),
            (k, DivisionRing::H) => format!("M_{k}(H)"),
        };
        if self.summands == 2 {
            write!(f, "{base} ⊕ {base}")
        } else {
            write!(f, "{base}")
        }
    }
}

impl Species {
    pub fn real_dimension(&self) -> usize {
        self.matrix_size * self.matrix_size * self.ring.dim_over_r() * self.summands as usize
    }

    fn tensor_m2r(self) -> Species {
        Species {
            matrix_size: 2 * self.matrix_size,
            ..self
        }
    }

    fn tensor_h(self) -> Species {
        match self.ring {
            DivisionRing::R => Species {
                ring: DivisionRing::H,
                ..self
            },
            DivisionRing::C => Species {
                matrix_size: 2 * self.matrix_size,
                ..self
            },
            DivisionRing::H => Species {
                matrix_size: 4 * self.matrix_size,
                ring: DivisionRing::R,
                ..self
            },
        }
    }
}

/// Ungraded isomorphism type of Cl_{r,s}, computed by the reduction ladder:
/// strip M_2(ℝ) factors while both signatures are positive, convert pure
/// signatures with Cl_{0,q+2} ≅ ℍ⊗Cl_{q,0} and Cl_{p+2,0} ≅ M_2(ℝ)⊗Cl_{0,p},
/// and finish at the base cases r+s ≤ 2.
pub fn species(r: usize, s: usize) -> Species {
    let (mut r, mut s) = (r, s);
    let mut m2r = 0usize;
    let mut h = 0usize;
    while r + s > 2 {
        if r >= 1 && s >= 1 {
            r -= 1;
            s -= 1;
            m2r += 1;
        } else if r == 0 {
            // Cl_{0,s} ≅ ℍ ⊗ Cl_{s−2,0}
            h += 1;
            r = s - 2;
            s = 0;
        } else {
            // Cl_{r,0} ≅ M_2(ℝ) ⊗ Cl_{0,r−2}
            m2r += 1;
            s = r - 2;
            r = 0;
        }
    }
    let mut sp = match (r, s) {
        (0, 0) => Species {
            matrix_size: 1,
            ring: DivisionRing::R,
            summands: 1,
        },
        (1, 0) => Species {
            matrix_size: 1,
            ring: DivisionRing::R,
            summands: 2,
        },
        (0, 1) => Species {
            matrix_size: 1,
            ring: DivisionRing::C,
            summands: 1,
        },
        (2, 0) | (1, 1) => Species {
            matrix_size: 2,
            ring: DivisionRing::R,
            summands: 1,
        },
        (0, 2) => Species {
            matrix_size: 1,
            ring: DivisionRing::H,
            summands: 1,
        },
        _ => unreachable!(),
    };
    for _ in 0..h {
        sp = sp.tensor_h();
    }
    for _ in 0..m2r {
        sp = sp.tensor_m2r();
    }
    sp
}
