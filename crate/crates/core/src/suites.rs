//! Named verification suites: each case checks one constructive isomorphism,
//! table row, or property and reports its residual. The CLI `verify`
//! subcommand and the acceptance tests both run these.

use crate::clifford::{build_clifford, certify_iso, graded_tensor, species, CliffordRep};
use crate::graded::{
    default_odd_unitary, inner_conjugacy_witness, inner_grad_residual, morita_psi_e, order_two_check,
    relative_signs, sqrt_unitary, ConjugacyOutcome, GradedRealAlgebra, SignPair,
};
use crate::mat::{
    c, conj, cr, direct_sum, identity, kron, norm, pauli_x, pauli_y, pauli_z, rand_unitary, CMat,
};
use crate::models::{build_kane_mele, build_ssh, SymmetrySpec};
use crate::vandaele::{bl_representative, rotation_homotopy, Osu};
use crate::{Result, TOL_ALG};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteCase {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub detail: String,
    /// Full certificate payload for certificate-backed cases.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub cases: Vec<SuiteCase>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteResult {
    fn collect(suite: &str, cases: Vec<SuiteCase>) -> SuiteResult {
        let passed = cases.iter().filter(|c| c.pass).count();
        let failed = cases.len() - passed;
        SuiteResult {
            suite: suite.to_string(),
            cases,
            passed,
            failed,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

fn cert_case(name: &str, cert: &crate::clifford::IsoCertificate) -> SuiteCase {
    SuiteCase {
        name: name.to_string(),
        pass: cert.pass,
        residual: cert.max_residual(),
        detail: format!(
            "ranks {}/{}/{} (src/img/expected)",
            cert.source_rank, cert.image_rank, cert.expected_rank
        ),
        certificate: serde_json::to_value(cert).ok(),
    }
}

fn bool_case(name: &str, pass: bool, residual: f64, detail: &str) -> SuiteCase {
    SuiteCase {
        name: name.to_string(),
        pass,
        residual,
        detail: detail.to_string(),
        certificate: None,
    }
}

/// Quaternion tensor targets ℍ ⊗ Cl_{r,s} for the reduction certificates.
fn quat_tensor(cl: &CliffordRep) -> Result<GradedRealAlgebra> {
    crate::graded::graded_tensor_algebras(&GradedRealAlgebra::quaternions(), &cl.as_algebra())
}

/// The six quaternion/matrix reduction isomorphisms with explicit odd
/// generator lists, tensor additivity Cl(r,s)⊗Cl(r',s') ≅ Cl(r+r',s+s')
/// up to total rank 5, and the M_2(R)/M_2(C) stabilization reductions.
pub fn run_clifford_suite() -> Result<SuiteResult> {
    let mut cases = Vec::new();
    let i = c(0.0, 1.0);
    let iq = [pauli_x() * i, pauli_y() * i, pauli_z() * i];

    // (1) ℍ⊗Cl_{1,0} ≅ Cl_{0,3} with {iσ_k ⊗ e}
    {
        let src = build_clifford(0, 3, true)?;
        let b = build_clifford(1, 0, true)?;
        let tgt = quat_tensor(&b)?;
        let e = &b.gens[0];
        let images: Vec<CMat> = iq.iter().map(|q| kron(q, e)).collect();
        cases.push(cert_case("quaternion reduction (1): H⊗Cl(1,0) ≅ Cl(0,3)", &certify_iso(&src, &tgt, &images)?));
    }
    // (2) ℍ⊗Cl_{0,1} ≅ Cl_{3,0} with {iσ_k ⊗ f}
    {
        let src = build_clifford(3, 0, true)?;
        let b = build_clifford(0, 1, true)?;
        let tgt = quat_tensor(&b)?;
        let f = &b.gens[0];
        let images: Vec<CMat> = iq.iter().map(|q| kron(q, f)).collect();
        cases.push(cert_case("quaternion reduction (2): H⊗Cl(0,1) ≅ Cl(3,0)", &certify_iso(&src, &tgt, &images)?));
    }
    // (3) ℍ⊗Cl_{1,1} ≅ Cl_{0,4} with {1⊗iσ_y, iσ_k⊗σ_x}
    {
        let src = build_clifford(0, 4, true)?;
        let b = build_clifford(1, 1, true)?;
        let tgt = quat_tensor(&b)?;
        let mut images = vec![kron(&identity(2), &(pauli_y() * i))];
        images.extend(iq.iter().map(|q| kron(q, &pauli_x())));
        cases.push(cert_case("quaternion reduction (3): H⊗Cl(1,1) ≅ Cl(0,4)", &certify_iso(&src, &tgt, &images)?));
    }
    // (4) ℍ⊗Cl_{2,0} ≅ Cl_{1,3} with {1⊗σ_x, iσ_k⊗σ_y}
    {
        let src = build_clifford(1, 3, true)?;
        let b = build_clifford(2, 0, true)?;
        let tgt = quat_tensor(&b)?;
        let mut images = vec![kron(&identity(2), &pauli_x())];
        images.extend(iq.iter().map(|q| kron(q, &pauli_y())));
        cases.push(cert_case("quaternion reduction (4): H⊗Cl(2,0) ≅ Cl(1,3)", &certify_iso(&src, &tgt, &images)?));
    }
    // (5) ℍ⊗Cl_{0,2} ≅ Cl_{3,1} with {1⊗iσ_x, σ_k⊗σ_y}
    {
        let src = build_clifford(3, 1, true)?;
        let b = build_clifford(0, 2, true)?;
        let tgt = quat_tensor(&b)?;
        let images = vec![
            kron(&pauli_x(), &pauli_y()),
            kron(&pauli_y(), &pauli_y()),
            kron(&pauli_z(), &pauli_y()),
            kron(&identity(2), &(pauli_x() * i)),
        ];
        cases.push(cert_case("quaternion reduction (5): H⊗Cl(0,2) ≅ Cl(3,1)", &certify_iso(&src, &tgt, &images)?));
    }
    // (6) Cl_{1,1}⊗Cl_{r,s} ≅ Cl_{r+1,s+1}, the M_2(R) reduction, at (2,1)
    {
        let a = build_clifford(1, 1, true)?;
        let b = build_clifford(2, 1, true)?;
        let prod = graded_tensor(&a, &b)?;
        let src = build_clifford(3, 2, true)?;
        let images = prod.gens.clone();
        cases.push(cert_case(
            "quaternion reduction (6): Cl(1,1)⊗Cl(2,1) ≅ Cl(3,2)",
            &certify_iso(&src, &prod.as_algebra(), &images)?,
        ));
    }
    // tensor additivity Cl_{r,s} ⊗̂ Cl_{r',s'} ≅ Cl_{r+r',s+s'} for total rank ≤ 5
    for total in 0..=5usize {
        for r in 0..=total {
            for s in 0..=(total - r) {
                for rp in 0..=(total - r - s) {
                    let sp = total - r - s - rp;
                    let a = build_clifford(r, s, true)?;
                    let b = build_clifford(rp, sp, true)?;
                    let prod = graded_tensor(&a, &b)?;
                    let src = build_clifford(r + rp, s + sp, true)?;
                    let cert = certify_iso(&src, &prod.as_algebra(), &prod.gens.clone())?;
                    cases.push(cert_case(
                        &format!("tensor addition: Cl({r},{s})⊗Cl({rp},{sp}) ≅ Cl({},{})", r + rp, s + sp),
                        &cert,
                    ));
                }
            }
        }
    }
    // M_2(R) stabilization for r+s ≤ 3
    for r in 0..=3usize {
        for s in 0..=(3 - r) {
            let a = build_clifford(1, 1, true)?;
            let b = build_clifford(r, s, true)?;
            let prod = graded_tensor(&a, &b)?;
            let src = build_clifford(r + 1, s + 1, true)?;
            let cert = certify_iso(&src, &prod.as_algebra(), &prod.gens.clone())?;
            cases.push(cert_case(
                &format!("M_2(R) reduction: M_2(R)⊗Cl({r},{s}) ≅ Cl({},{})", r + 1, s + 1),
                &cert,
            ));
        }
    }
    // M_2(C) stabilization for n ≤ 3
    for n in 0..=3usize {
        let a = build_clifford(2, 0, false)?;
        let b = build_clifford(n, 0, false)?;
        let prod = graded_tensor(&a, &b)?;
        let src = build_clifford(n + 2, 0, false)?;
        let cert = certify_iso(&src, &prod.as_algebra(), &prod.gens.clone())?;
        cases.push(cert_case(&format!("M_2(C) reduction: M_2(C)⊗Cl_{n} ≅ Cl_{}", n + 2), &cert));
    }
    // species cross-checks along the ladder
    {
        let sp = species(1, 1);
        cases.push(bool_case(
            "species(1,1) = M_2(R)",
            format!("{sp}") == "M_2(R)",
            0.0,
            &sp.to_string(),
        ));
        let sp = species(0, 2);
        cases.push(bool_case("species(0,2) = H", format!("{sp}") == "H", 0.0, &sp.to_string()));
        let sp = species(3, 1);
        cases.push(bool_case(
            "species(3,1) = M_4(R)",
            format!("{sp}") == "M_4(R)",
            0.0,
            &sp.to_string(),
        ));
        let ok = (0..=6usize).all(|r| (0..=(6 - r)).all(|s| species(r, s).real_dimension() == 1 << (r + s)));
        cases.push(bool_case("species dimensions match 2^(r+s)", ok, 0.0, "r+s ≤ 6"));
    }
    Ok(SuiteResult::collect("clifford", cases))
}

/// Sign-table rows: the four balanced graded real structures on M_n(ℂ) and
/// the four real structures on M_n(ℂ)⊗ℂl_1, each with its sign pair and a
/// certificate identifying the real subalgebra.
pub fn run_signs_suite() -> Result<SuiteResult> {
    let mut cases = Vec::new();
    let i = c(0.0, 1.0);

    // rows of the balanced graded table: (Θ, η, real subalgebra)
    struct GradedRow {
        label: &'static str,
        dim: usize,
        gamma: CMat,
        theta: CMat,
        eta: SignPair,
        src: (usize, usize),
        images: Vec<CMat>,
    }
    let rows = vec![
        GradedRow {
            label: "balanced structure row 1: Θ=1 → (+1,+1), Cl(1,1)",
            dim: 2,
            gamma: pauli_z(),
            theta: identity(2),
            eta: SignPair { eta1: 1, eta2: 1 },
            src: (1, 1),
            images: vec![pauli_x(), pauli_y() * i],
        },
        GradedRow {
            label: "balanced structure row 2: Θ=σ_x → (+1,-1), Cl(2,0)",
            dim: 2,
            gamma: pauli_z(),
            theta: pauli_x(),
            eta: SignPair { eta1: 1, eta2: -1 },
            src: (2, 0),
            images: vec![pauli_x(), pauli_y()],
        },
        GradedRow {
            label: "balanced structure row 3: Θ=σ_y → (-1,-1), Cl(0,2)",
            dim: 2,
            gamma: pauli_z(),
            theta: pauli_y(),
            eta: SignPair { eta1: -1, eta2: -1 },
            src: (0, 2),
            images: vec![pauli_x() * i, pauli_y() * i],
        },
        GradedRow {
            label: "balanced structure row 4: Θ=σ_y⊗1 → (-1,+1), Cl(0,4)",
            dim: 4,
            gamma: kron(&identity(2), &pauli_z()),
            theta: kron(&pauli_y(), &identity(2)),
            eta: SignPair { eta1: -1, eta2: 1 },
            src: (0, 4),
            images: vec![
                kron(&identity(2), &(pauli_y() * i)),
                kron(&(pauli_x() * i), &pauli_x()),
                kron(&(pauli_y() * i), &pauli_x()),
                kron(&(pauli_z() * i), &pauli_x()),
            ],
        },
    ];
    for row in rows {
        let alg = GradedRealAlgebra::reference(row.dim, Some(row.gamma.clone()))?;
        let eta = relative_signs(&alg, &row.theta)?;
        cases.push(bool_case(
            &format!("{} signs", row.label),
            eta == row.eta,
            0.0,
            &format!("computed {eta}"),
        ));
        let src = build_clifford(row.src.0, row.src.1, true)?;
        let tgt = GradedRealAlgebra::new(row.dim, Some(row.gamma.clone()), Some(row.theta.clone()))?;
        let cert = certify_iso(&src, &tgt, &row.images)?;
        cases.push(cert_case(&format!("{} subalgebra", row.label), &cert));
    }

    // rows of the fixed-point table on M_n(ℂ)⊗ℂl_1; the ℂl_1 model has
    // generator σ_x and grading σ_z, 𝔩_{1,0} ↦ Θ = 1, 𝔩_{0,1} ↦ Θ = σ_z
    struct FpRow {
        label: &'static str,
        n: usize,
        theta: CMat,
        eta1: i8,
        src: (usize, usize),
        images: Vec<CMat>,
        gens: Vec<CMat>,
    }
    let fp_rows = vec![
        FpRow {
            label: "fixed-point structure row 1: 𝔠 ⊗ l(1,0) → +1, Cl(1,0)",
            n: 1,
            theta: identity(2),
            eta1: 1,
            src: (1, 0),
            images: vec![pauli_x()],
            gens: vec![pauli_x()],
        },
        FpRow {
            label: "fixed-point structure row 2: φ𝔠 ⊗ l(0,1) → +1, Cl(0,1)",
            n: 1,
            theta: pauli_z(),
            eta1: 1,
            src: (0, 1),
            images: vec![pauli_x() * i],
            gens: vec![pauli_x() * i],
        },
        FpRow {
            label: "fixed-point structure row 3: Ad_σy𝔠 ⊗ l(1,0) → -1, Cl(0,3)",
            n: 2,
            theta: kron(&pauli_y(), &identity(2)),
            eta1: -1,
            src: (0, 3),
            images: vec![
                kron(&(pauli_x() * i), &pauli_x()),
                kron(&(pauli_y() * i), &pauli_x()),
                kron(&(pauli_z() * i), &pauli_x()),
            ],
            gens: vec![
                kron(&(pauli_x() * i), &identity(2)),
                kron(&(pauli_y() * i), &identity(2)),
                kron(&identity(2), &pauli_x()),
            ],
        },
        FpRow {
            label: "fixed-point structure row 4: Ad_σy𝔠 ⊗ l(0,1) → -1, Cl(3,0)",
            n: 2,
            theta: kron(&pauli_y(), &pauli_z()),
            eta1: -1,
            src: (3, 0),
            images: vec![
                kron(&(pauli_x() * i), &(pauli_x() * i)),
                kron(&(pauli_y() * i), &(pauli_x() * i)),
                kron(&(pauli_z() * i), &(pauli_x() * i)),
            ],
            gens: vec![
                kron(&(pauli_x() * i), &identity(2)),
                kron(&(pauli_y() * i), &identity(2)),
                kron(&identity(2), &(pauli_x() * i)),
            ],
        },
    ];
    for row in fp_rows {
        let dim = 2 * row.n;
        let gamma = kron(&identity(row.n), &pauli_z());
        let alg = GradedRealAlgebra::reference(dim, Some(gamma.clone()))?;
        let eta = relative_signs(&alg, &row.theta)?;
        cases.push(bool_case(
            &format!("{} parity", row.label),
            eta.eta1 == row.eta1 && eta.eta2 == 1,
            0.0,
            &format!("computed {eta}"),
        ));
        let src = build_clifford(row.src.0, row.src.1, true)?;
        let tgt = GradedRealAlgebra::new(dim, Some(gamma), Some(row.theta.clone()))?
            .with_gens(row.gens.clone());
        let cert = certify_iso(&src, &tgt, &row.images)?;
        cases.push(cert_case(&format!("{} subalgebra", row.label), &cert));
    }
    Ok(SuiteResult::collect("signs", cases))
}

/// Morita certificates on (M_2, σ_z, 𝔣) and (M_2, σ_z, Ad_σx∘𝔣) with
/// e = σ_x, covering the real inner (2+/3+) and imaginary inner (2−/3−)
/// cases, plus the Koszul untwisting residuals on Clifford factors.
pub fn run_morita_suite() -> Result<SuiteResult> {
    let mut cases = Vec::new();
    let real = GradedRealAlgebra::reference(2, Some(pauli_z()))?;
    let cert = morita_psi_e(&real, &pauli_x())?;
    let mut case = bool_case(
        "Morita (M_2, σ_z, f), e = σ_x: cases 2+/3+",
        cert.pass && cert.case_label == "3+" && cert.result_signs == Some(SignPair { eta1: 1, eta2: 1 }),
        cert.u_conjugation_residual
            .max(cert.psi_small_homomorphism_residual)
            .max(cert.psi_small_real_residual.unwrap_or(0.0)),
        &format!("result signs {:?}", cert.result_signs),
    );
    case.certificate = serde_json::to_value(&cert).ok();
    cases.push(case);
    let imag = GradedRealAlgebra::new(2, Some(pauli_z()), Some(pauli_x()))?;
    let cert = morita_psi_e(&imag, &pauli_x())?;
    let mut case = bool_case(
        "Morita (M_2, σ_z, Ad_σx∘f), e = σ_x: cases 2−/3−",
        cert.pass && cert.case_label == "3-" && cert.result_signs == Some(SignPair { eta1: 1, eta2: -1 }),
        cert.u_conjugation_residual
            .max(cert.psi_small_homomorphism_residual)
            .max(cert.psi_small_real_residual.unwrap_or(0.0)),
        &format!("result signs {:?}", cert.result_signs),
    );
    case.certificate = serde_json::to_value(&cert).ok();
    cases.push(case);
    // complex case on M_4 with a nontrivial grading basis
    let alg4 = GradedRealAlgebra::new(4, Some(kron(&pauli_z(), &identity(2))), None)?;
    let e4 = default_odd_unitary(&kron(&pauli_z(), &identity(2)))?;
    let cert = morita_psi_e(&alg4, &e4)?;
    cases.push(bool_case(
        "Morita (M_4, σ_z⊗1), complex case",
        cert.pass,
        cert.u_conjugation_residual.max(cert.psi_small_homomorphism_residual),
        &cert.case_label.clone(),
    ));
    // Koszul untwisting: real inner and imaginary inner first factor
    let cl11 = build_clifford(1, 1, true)?.as_algebra();
    let cl20 = build_clifford(2, 0, true)?.as_algebra();
    let res_real = inner_grad_residual(&cl11, &cl20)?;
    cases.push(bool_case(
        "Koszul untwisting, real inner Cl(1,1) factor",
        res_real < TOL_ALG,
        res_real,
        "R1⊗R2 intertwined",
    ));
    let res_imag = inner_grad_residual(&cl20, &cl11)?;
    cases.push(bool_case(
        "Koszul untwisting, imaginary inner Cl(2,0) factor",
        res_imag < TOL_ALG,
        res_imag,
        "R1⊗(R2∘γ2) intertwined",
    ));
    Ok(SuiteResult::collect("morita", cases))
}

/// Van Daele-side properties: the rotation path, randomized square roots,
/// randomized order-two diagnostics, randomized conjugacy witnesses with
/// the two obstruction rows, degree-wise representatives, and the parity
/// algebra identity on all eight sign configurations in M_4.
pub fn run_vandaele_suite(seed: u64) -> Result<SuiteResult> {
    let mut cases = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // rotation path w(t) = cos(t)e1 + sin(t)e2
    let alg = GradedRealAlgebra::new(2, Some(pauli_z()), None)?;
    let e1 = Osu::new(&alg, pauli_x())?;
    let e2 = Osu::new(&alg, pauli_y())?;
    let witness = rotation_homotopy(&alg, &e1, &e2)?;
    cases.push(bool_case(
        "rotation homotopy e1 → −e1 valid on 64 samples",
        witness.valid(),
        witness.max_residual,
        &format!("min gap {:.3}", witness.min_gap),
    ));

    // randomized square roots, ξ-invariant where requested
    let mut worst = 0.0f64;
    let mut ok = true;
    for n in [2usize, 4, 8] {
        for _ in 0..20 {
            let u = rand_unitary(&mut rng, n);
            match sqrt_unitary(&u, None) {
                Ok(v) => worst = worst.max(norm(&(&v * &v - &u))),
                Err(_) => ok = false,
            }
        }
    }
    cases.push(bool_case(
        "sqrt_unitary on randomized gapped unitaries (n = 2,4,8)",
        ok && worst < TOL_ALG,
        worst,
        "60 draws",
    ));

    // order-two diagnostics agree with direct composition
    let m2 = GradedRealAlgebra::reference(2, Some(pauli_z()))?;
    let mut agree = true;
    for _ in 0..20 {
        let u = rand_unitary(&mut rng, 2);
        let rep = order_two_check(&m2, &u)?;
        agree &= rep.agrees;
    }
    cases.push(bool_case(
        "order-two predicate matches direct composition (random)",
        agree,
        0.0,
        "20 draws in M_2",
    ));

    // randomized even symmetric Θ in M_4: witnesses; σ_x/σ_y rows: obstructions
    let gamma4 = kron(&pauli_z(), &identity(2));
    let alg4 = GradedRealAlgebra::reference(4, Some(gamma4.clone()))?;
    let mut worst_conj = 0.0f64;
    let mut all_witnessed = true;
    for _ in 0..10 {
        let v = direct_sum(&rand_unitary(&mut rng, 2), &rand_unitary(&mut rng, 2));
        let theta = &v * v.transpose();
        match inner_conjugacy_witness(&alg4, &theta)? {
            ConjugacyOutcome::Witness(w) => {
                worst_conj = worst_conj.max(crate::graded::conjugacy_residual(&alg4, &theta, &w));
            }
            ConjugacyOutcome::Obstructed(_) => all_witnessed = false,
        }
    }
    cases.push(bool_case(
        "inner conjugacy witnesses on randomized even symmetric Θ in M_4",
        all_witnessed && worst_conj < TOL_ALG,
        worst_conj,
        "10 draws",
    ));
    let m2ref = GradedRealAlgebra::reference(2, Some(pauli_z()))?;
    let obstructed_y = matches!(
        inner_conjugacy_witness(&m2ref, &pauli_y())?,
        ConjugacyOutcome::Obstructed(SignPair { eta1: -1, eta2: -1 })
    );
    let obstructed_x = matches!(
        inner_conjugacy_witness(&m2ref, &pauli_x())?,
        ConjugacyOutcome::Obstructed(SignPair { eta1: 1, eta2: -1 })
    );
    cases.push(bool_case(
        "obstruction tags for Θ = σ_y and Θ = σ_x",
        obstructed_y && obstructed_x,
        0.0,
        "η = (−1,−1) and (+1,−1)",
    ));

    // one constructive accept-case per Boersema–Loring degree
    let alg_r = GradedRealAlgebra::new(2, None, Some(identity(2)))?;
    let alg_r1 = GradedRealAlgebra::new(1, None, Some(identity(1)))?;
    let i = c(0.0, 1.0);
    let theta07 = identity(2) * cr(0.7_f64.cos()) + pauli_y() * c(0.0, 0.7_f64.sin());
    let bl_cases: Vec<(u8, CMat, &GradedRealAlgebra)> = vec![
        (0, pauli_z(), &alg_r),
        (1, pauli_x(), &alg_r),
        (2, pauli_y(), &alg_r),
        (3, pauli_y() * i, &alg_r),
        (4, kron(&identity(2), &pauli_z()), &alg_r),
        (5, theta07, &alg_r1),
        (6, pauli_y(), &alg_r1),
        (7, CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![cr(1.0), i])), &alg_r),
    ];
    let mut bl_ok = true;
    let mut bl_worst = 0.0f64;
    for (deg, u, alg) in &bl_cases {
        match bl_representative(*deg, u, alg) {
            Ok(rep) => bl_worst = bl_worst.max(rep.residual),
            Err(_) => bl_ok = false,
        }
    }
    cases.push(bool_case(
        "Boersema–Loring representatives accepted in all eight degrees",
        bl_ok && bl_worst < TOL_ALG,
        bl_worst,
        "degrees 0..7",
    ));

    // parity algebra: η¹(γ∘𝔱) = Γ𝔱(Γ)·η¹(𝔱) on all 8 sign configurations
    let mut parity_ok = true;
    let configs: Vec<(CMat, CMat)> = vec![
        // Γ real: 𝔣(Γ)Γ = +1
        (kron(&identity(2), &pauli_z()), kron(&identity(2), &identity(2))),
        (kron(&identity(2), &pauli_z()), kron(&identity(2), &pauli_x())),
        (kron(&identity(2), &pauli_z()), kron(&identity(2), &pauli_y())),
        (kron(&identity(2), &pauli_z()), kron(&pauli_y(), &identity(2))),
        // Γ imaginary: 𝔣(Γ)Γ = −1
        (kron(&pauli_y(), &pauli_x()), kron(&identity(2), &identity(2))),
        (kron(&pauli_y(), &pauli_x()), kron(&pauli_x(), &identity(2))),
        (kron(&pauli_y(), &pauli_x()), kron(&pauli_y(), &pauli_z())),
        (kron(&pauli_y(), &pauli_x()), kron(&pauli_y(), &pauli_x())),
    ];
    for (gamma, theta) in &configs {
        let sign_t = crate::mat::scalar_sign(&(theta * conj(theta)), "ΘΘ̄")?;
        // 𝔭 = γ∘𝔱 has generator ΓΘ
        let gt = gamma * theta;
        let sign_p = crate::mat::scalar_sign(&(&gt * conj(&gt)), "parity of 𝔭")?;
        // Γ𝔱(Γ) with 𝔱 = Ad_Θ∘𝔣
        let t_gamma = theta * conj(gamma) * theta.adjoint();
        let reality = crate::mat::scalar_sign(&(gamma * t_gamma), "Γ𝔱(Γ)")?;
        parity_ok &= sign_p == reality * sign_t;
    }
    cases.push(bool_case(
        "parity algebra: parity(γ∘𝔱) = Γ𝔱(Γ)·parity(𝔱) on 8 configurations",
        parity_ok,
        0.0,
        "M_4 sign configurations",
    ));

    // winding inverse law and additivity on SSH models
    {
        let (ssh, spec) = build_ssh(0.3, 1.0);
        let w = crate::invariants::winding_number(&ssh, &spec, 128)?;
        let e = pauli_x();
        let negated = ssh.map_hoppings(|t| crate::vandaele::inverse_transform(&e, t));
        let w_neg = crate::invariants::winding_number(&negated, &spec, 128)?;
        cases.push(bool_case(
            "winding negation under x ↦ −exe",
            w_neg.value == -w.value,
            0.0,
            &format!("{} ↦ {}", w.value, w_neg.value),
        ));
        let (ssh2, spec2) = build_ssh(1.0, 0.2);
        let sum = ssh.direct_sum(&ssh2)?;
        let spec_sum = SymmetrySpec {
            chiral: Some(direct_sum(&pauli_z(), &pauli_z())),
            ..Default::default()
        };
        let w2 = crate::invariants::winding_number(&ssh2, &spec2, 128)?;
        let w_sum = crate::invariants::winding_number(&sum, &spec_sum, 128)?;
        cases.push(bool_case(
            "winding additivity under ⊕",
            w_sum.value == w.value + w2.value,
            0.0,
            &format!("{} + {} = {}", w.value, w2.value, w_sum.value),
        ));
    }

    // mod-2 doubling of the topological Kane–Mele phase
    {
        let (km, spec) = build_kane_mele(1.0, 0.1, 0.0, 0.0);
        let rep = crate::invariants::mod2_doubling_check(&km, &spec, 24)?;
        cases.push(bool_case(
            "Kane–Mele ⊕ itself has Z2 = 0",
            rep.single.value == 1 && rep.doubled.value == 0,
            0.0,
            &format!("single {}, doubled {}", rep.single.value, rep.doubled.value),
        ));
    }
    Ok(SuiteResult::collect("vandaele", cases))
}

/// Run the named suite, or all of them.
pub fn run_suite(name: &str, seed: u64) -> Result<Vec<SuiteResult>> {
    match name {
        "clifford" => Ok(vec![run_clifford_suite()?]),
        "signs" => Ok(vec![run_signs_suite()?]),
        "morita" => Ok(vec![run_morita_suite()?]),
        "vandaele" => Ok(vec![run_vandaele_suite(seed)?]),
        "all" => Ok(vec![
            run_clifford_suite()?,
            run_signs_suite()?,
            run_morita_suite()?,
            run_vandaele_suite(seed)?,
        ]),
        other => Err(crate::Error::Unsupported {
            what: format!("unknown suite '{other}'"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_suite_is_green() {
        let result = run_clifford_suite().unwrap();
        for case in &result.cases {
            assert!(case.pass, "{}: residual {:.3e} ({})", case.name, case.residual, case.detail);
        }
    }

    #[test]
    fn signs_suite_is_green() {
        let result = run_signs_suite().unwrap();
        for case in &result.cases {
            assert!(case.pass, "{}: {:?}", case.name, case);
        }
    }

    #[test]
    fn morita_suite_is_green() {
        let result = run_morita_suite().unwrap();
        for case in &result.cases {
            assert!(case.pass, "{}: {:?}", case.name, case);
        }
    }
}
