//! Tight-binding Bloch models: finitely supported hopping matrices t_n
//! defining h(k) = Σ t_n e^{2πi n·k} on the d-torus, canonical builders,
//! symmetry verification on sampled grids, and the JSON model schema.
//!
//! Conventions: momenta live in [0,1)^d with phases e^{2πi n·k}; antiunitary
//! symmetries act as Θ·conj(·)·Θ† combined with k ↦ −k, the chiral symmetry
//! does not touch k. This is the unique convention under which the reference
//! real structure is entrywise conjugation of the hopping matrices.

use crate::mat::{c, conj, cr, eigh, identity, kron, norm, pauli_x, pauli_y, pauli_z, zeros, CMat};
use crate::{Error, Result, TOL_ALG};
use num_complex::Complex64;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct BlochModel {
    pub d: usize,
    pub fiber: usize,
    hoppings: BTreeMap<Vec<i64>, CMat>,
    pub name: String,
    pub params: BTreeMap<String, f64>,
}

impl BlochModel {
    pub fn new(d: usize, fiber: usize, name: &str) -> BlochModel {
        BlochModel {
            d,
            fiber,
            hoppings: BTreeMap::new(),
            name: name.to_string(),
            params: BTreeMap::new(),
        }
    }

    pub fn hoppings(&self) -> impl Iterator<Item = (&Vec<i64>, &CMat)> {
        self.hoppings.iter()
    }

    /// Add t to the hopping at n and t† at −n, keeping t_{−n} = t_n†.
    /// For n = 0 the contribution must be self-adjoint.
    pub fn add_hopping(&mut self, n: &[i64], t: CMat) -> Result<()> {
        if n.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: n.len(),
            });
        }
        if t.nrows() != self.fiber || t.ncols() != self.fiber {
            return Err(Error::DimensionMismatch {
                expected: self.fiber,
                got: t.nrows(),
            });
        }
        let zero = vec![0i64; self.d];
        if n == zero.as_slice() {
            let sa = norm(&(&t - t.adjoint()));
            if sa > TOL_ALG {
                return Err(Error::NotSelfAdjoint { residual: sa });
            }
            *self
                .hoppings
                .entry(zero)
                .or_insert_with(|| zeros(self.fiber, self.fiber)) += t;
            return Ok(());
        }
        let minus: Vec<i64> = n.iter().map(|x| -x).collect();
        let adj = t.adjoint();
        *self
            .hoppings
            .entry(n.to_vec())
            .or_insert_with(|| zeros(self.fiber, self.fiber)) += t;
        *self
            .hoppings
            .entry(minus)
            .or_insert_with(|| zeros(self.fiber, self.fiber)) += adj;
        Ok(())
    }

    /// Largest |n_i| over the support.
    pub fn support_radius(&self) -> i64 {
        self.hoppings
            .keys()
            .flat_map(|n| n.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    /// h(k) = Σ t_n e^{2πi n·k}.
    pub fn evaluate(&self, k: &[f64]) -> CMat {
        let mut h = zeros(self.fiber, self.fiber);
        for (n, t) in &self.hoppings {
            let phase: f64 = n
                .iter()
                .zip(k.iter())
                .map(|(&ni, &ki)| ni as f64 * ki)
                .sum();
            h += t * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
        }
        h
    }

    /// Minimum over the grid of the smallest |eigenvalue| of h(k), with the
    /// minimizing momentum. A gap of zero is a valid return; operations that
    /// need an insulator reject it.
    pub fn gap(&self, grid: usize) -> GapReport {
        let grid = grid.max(2);
        let mut best = f64::INFINITY;
        let mut at = vec![0.0; self.d];
        for idx in GridIter::new(self.d, grid) {
            let k: Vec<f64> = idx.iter().map(|&i| i as f64 / grid as f64).collect();
            let h = self.evaluate(&k);
            let (vals, _) = eigh(&h);
            let g = vals.iter().fold(f64::INFINITY, |m, &v| m.min(v.abs()));
            if g < best {
                best = g;
                at = k;
            }
        }
        GapReport { gap: best, at }
    }

    /// Verify t_{−n} = t_n† across the stored map.
    pub fn selfadjoint_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (n, t) in &self.hoppings {
            let minus: Vec<i64> = n.iter().map(|x| -x).collect();
            match self.hoppings.get(&minus) {
                Some(tm) => worst = worst.max(norm(&(tm - t.adjoint()))),
                None => worst = worst.max(norm(t)),
            }
        }
        worst
    }

    /// Apply a fiber-wise map to every hopping matrix.
    pub fn map_hoppings(&self, f: impl Fn(&CMat) -> CMat) -> BlochModel {
        let mut out = self.clone();
        out.hoppings = self
            .hoppings
            .iter()
            .map(|(n, t)| (n.clone(), f(t)))
            .collect();
        out
    }

    /// Entrywise conjugate model t_n ↦ conj(t_n) (h(k) ↦ conj(h(−k))).
    pub fn conjugate(&self) -> BlochModel {
        let mut out = self.map_hoppings(conj);
        out.name = format!("{}*", self.name);
        out
    }

    /// Block direct sum with another model on the same torus.
    pub fn direct_sum(&self, other: &BlochModel) -> Result<BlochModel> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        let fiber = self.fiber + other.fiber;
        let mut out = BlochModel::new(self.d, fiber, &format!("{}(+){}", self.name, other.name));
        let mut keys: std::collections::BTreeSet<Vec<i64>> = self.hoppings.keys().cloned().collect();
        keys.extend(other.hoppings.keys().cloned());
        for n in keys {
            let a = self
                .hoppings
                .get(&n)
                .cloned()
                .unwrap_or_else(|| zeros(self.fiber, self.fiber));
            let b = other
                .hoppings
                .get(&n)
                .cloned()
                .unwrap_or_else(|| zeros(other.fiber, other.fiber));
            out.hoppings.insert(n, crate::mat::direct_sum(&a, &b));
        }
        Ok(out)
    }

    /// Restriction of the fiber to a subset of indices (e.g. one spin block
    /// of a spin-conserving model).
    pub fn restrict(&self, indices: &[usize]) -> BlochModel {
        let m = indices.len();
        let mut out = BlochModel::new(self.d, m, &format!("{}|restricted", self.name));
        for (n, t) in &self.hoppings {
            let mut sub = zeros(m, m);
            for (a, &i) in indices.iter().enumerate() {
                for (b, &j) in indices.iter().enumerate() {
                    sub[(a, b)] = t[(i, j)];
                }
            }
            out.hoppings.insert(n.clone(), sub);
        }
        out
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct GapReport {
    pub gap: f64,
    pub at: Vec<f64>,
}

/// Row-major iteration over a d-dimensional grid.
pub struct GridIter {
    d: usize,
    grid: usize,
    next: Option<Vec<usize>>,
}

impl GridIter {
    pub fn new(d: usize, grid: usize) -> GridIter {
        GridIter {
            d,
            grid,
            next: Some(vec![0; d]),
        }
    }
}

impl Iterator for GridIter {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.clone()?;
        let mut bump = current.clone();
        let mut i = self.d;
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            bump[i] += 1;
            if bump[i] < self.grid {
                self.next = Some(bump);
                break;
            }
            bump[i] = 0;
        }
        Some(current)
    }
}

/// Declared fiber symmetry operators. Antiunitary operators act with
/// momentum reversal; the chiral operator does not reverse k.
#[derive(Debug, Clone, Default)]
pub struct SymmetrySpec {
    pub chiral: Option<CMat>,
    pub trs: Option<CMat>,
    pub phs: Option<CMat>,
}

impl SymmetrySpec {
    pub fn direct_sum(&self, other: &SymmetrySpec) -> SymmetrySpec {
        let combine = |a: &Option<CMat>, b: &Option<CMat>| match (a, b) {
            (Some(x), Some(y)) => Some(crate::mat::direct_sum(x, y)),
            _ => None,
        };
        SymmetrySpec {
            chiral: combine(&self.chiral, &other.chiral),
            trs: combine(&self.trs, &other.trs),
            phs: combine(&self.phs, &other.phs),
        }
    }
}

/// Per-symmetry residuals and parities over a sampled grid.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SymmetryReport {
    pub grid: usize,
    pub chiral_residual: Option<f64>,
    pub trs_residual: Option<f64>,
    pub trs_parity: Option<i8>,
    pub phs_residual: Option<f64>,
    pub phs_parity: Option<i8>,
    /// Sign of 𝔱(Γ)Γ when both chiral and TRS are declared.
    pub grading_reality: Option<i8>,
    /// Alignment residual of Θ_P against Γ·Θ_T up to phase, when all three
    /// operators are declared.
    pub product_residual: Option<f64>,
}

impl SymmetryReport {
    pub fn max_residual(&self) -> f64 {
        [self.chiral_residual, self.trs_residual, self.phs_residual]
            .into_iter()
            .flatten()
            .fold(0.0, f64::max)
    }
}

/// Max-over-grid residuals of the defining relations: chiral ΓhΓ = −h,
/// TRS Θ conj(h(−k)) Θ† = h(k), PHS Θ conj(h(−k)) Θ† = −h(k).
pub fn verify_symmetries(model: &BlochModel, spec: &SymmetrySpec, grid: usize) -> SymmetryReport {
    let grid = grid.max(2);
    let mut chiral_res = spec.chiral.as_ref().map(|_| 0.0f64);
    let mut trs_res = spec.trs.as_ref().map(|_| 0.0f64);
    let mut phs_res = spec.phs.as_ref().map(|_| 0.0f64);
    for idx in GridIter::new(model.d, grid) {
        let k: Vec<f64> = idx.iter().map(|&i| i as f64 / grid as f64).collect();
        let minus_k: Vec<f64> = k.iter().map(|&x| (1.0 - x) % 1.0).collect();
        let h = model.evaluate(&k);
        let h_minus = model.evaluate(&minus_k);
        if let (Some(g), Some(acc)) = (&spec.chiral, chiral_res.as_mut()) {
            *acc = acc.max(norm(&(g * &h * g + &h)));
        }
        if let (Some(t), Some(acc)) = (&spec.trs, trs_res.as_mut()) {
            *acc = acc.max(norm(&(t * conj(&h_minus) * t.adjoint() - &h)));
        }
        if let (Some(p), Some(acc)) = (&spec.phs, phs_res.as_mut()) {
            *acc = acc.max(norm(&(p * conj(&h_minus) * p.adjoint() + &h)));
        }
    }
    let parity = |t: &CMat| crate::mat::scalar_sign(&(t * conj(t)), "ΘΘ̄").ok();
    let trs_parity = spec.trs.as_ref().and_then(parity);
    let phs_parity = spec.phs.as_ref().and_then(parity);
    let grading_reality = match (&spec.chiral, &spec.trs) {
        (Some(g), Some(t)) => {
            let tg = t * conj(g) * t.adjoint();
            crate::mat::scalar_sign(&(tg * g), "𝔱(Γ)Γ").ok()
        }
        _ => None,
    };
    let product_residual = match (&spec.chiral, &spec.trs, &spec.phs) {
        (Some(g), Some(t), Some(p)) => {
            // 𝔭 = γ∘𝔱 means Θ_P = Γ·Θ_T up to a unit scalar
            let gt = g * t;
            let overlap = (p.adjoint() * &gt).diagonal().sum();
            let lambda = if overlap.norm() > 1e-12 {
                overlap / overlap.norm()
            } else {
                cr(1.0)
            };
            Some(norm(&(gt - p * lambda)))
        }
        _ => None,
    };
    SymmetryReport {
        grid,
        chiral_residual: chiral_res,
        trs_residual: trs_res,
        trs_parity,
        phs_residual: phs_res,
        phs_parity,
        grading_reality,
        product_residual,
    }
}

/// SSH chain: h(k) = [[0, v + w e^{−2πik}], [v + w e^{2πik}, 0]] with the
/// chiral grading σ_z.
pub fn build_ssh(v: f64, w: f64) -> (BlochModel, SymmetrySpec) {
    let mut m = BlochModel::new(1, 2, "ssh");
    m.params.insert("v".into(), v);
    m.params.insert("w".into(), w);
    let mut t0 = zeros(2, 2);
    t0[(0, 1)] = cr(v);
    t0[(1, 0)] = cr(v);
    m.add_hopping(&[0], t0).unwrap();
    let mut t1 = zeros(2, 2);
    t1[(1, 0)] = cr(w); // B in cell 0 ← A in cell 1
    m.add_hopping(&[1], t1).unwrap();
    let spec = SymmetrySpec {
        chiral: Some(pauli_z()),
        ..Default::default()
    };
    (m, spec)
}

/// Qi–Wu–Zhang model: h(k) = sin(2πk_x)σ_x − sin(2πk_y)σ_y +
/// (m + cos(2πk_x) + cos(2πk_y))σ_z. The σ_y sign fixes the orientation so
/// that the m = −1 phase carries Chern number +1.
pub fn build_qwz(m_par: f64) -> (BlochModel, SymmetrySpec) {
    let mut m = BlochModel::new(2, 2, "qwz");
    m.params.insert("m".into(), m_par);
    m.add_hopping(&[0, 0], pauli_z() * cr(m_par)).unwrap();
    let half = cr(0.5);
    let i = c(0.0, 1.0);
    // t_{e_x} = (σ_z − iσ_x)/2, t_{e_y} = (σ_z + iσ_y)/2
    m.add_hopping(&[1, 0], (pauli_z() - pauli_x() * i) * half)
        .unwrap();
    m.add_hopping(&[0, 1], (pauli_z() + pauli_y() * i) * half)
        .unwrap();
    (m, SymmetrySpec::default())
}

/// Honeycomb geometry shared by Haldane and Kane–Mele, in lattice
/// coordinates. B neighbors of A sit in cells {0, −e₁, −e₂}; next-nearest
/// vectors are b₁ = e₁, b₂ = e₂ − e₁, b₃ = −e₂ (counterclockwise).
const NN_CELLS: [[i64; 2]; 3] = [[0, 0], [-1, 0], [0, -1]];
const NNN_CELLS: [[i64; 2]; 3] = [[1, 0], [-1, 1], [0, -1]];

/// Primitive vectors recorded in model metadata for reproducibility.
fn insert_honeycomb_vectors(m: &mut BlochModel) {
    m.params.insert("a1x".into(), 1.0);
    m.params.insert("a1y".into(), 0.0);
    m.params.insert("a2x".into(), 0.5);
    m.params.insert("a2y".into(), 3.0_f64.sqrt() / 2.0);
}

/// Cartesian bond directions for the Rashba coupling, with primitive
/// vectors a₁ = (1,0), a₂ = (1/2, √3/2); the A→B offsets are δ = (a₁+a₂)/3
/// shifted by the NN cell.
fn nn_directions() -> [[f64; 2]; 3] {
    let a1 = [1.0, 0.0];
    let a2 = [0.5, 3.0_f64.sqrt() / 2.0];
    let delta0 = [(a1[0] + a2[0]) / 3.0, (a1[1] + a2[1]) / 3.0];
    let mut out = [[0.0; 2]; 3];
    for (i, cell) in NN_CELLS.iter().enumerate() {
        let dx = delta0[0] + cell[0] as f64 * a1[0] + cell[1] as f64 * a2[0];
        let dy = delta0[1] + cell[0] as f64 * a1[1] + cell[1] as f64 * a2[1];
        let len = (dx * dx + dy * dy).sqrt();
        out[i] = [dx / len, dy / len];
    }
    out
}

/// Add a directed bond contribution: for n = 0 the reverse bond is folded
/// in to keep the on-site block self-adjoint, for n ≠ 0 `add_hopping`
/// already stores the adjoint at −n.
fn add_bond(model: &mut BlochModel, n: &[i64], t: CMat) {
    if n.iter().all(|&x| x == 0) {
        let block = &t + t.adjoint();
        model.add_hopping(n, block).unwrap();
    } else {
        model.add_hopping(n, t).unwrap();
    }
}

/// Haldane model on the honeycomb lattice: nearest-neighbor t1, complex
/// next-nearest t2·e^{±iφ} (sign set by sublattice and orientation), and
/// staggered mass m.
pub fn build_haldane(t1: f64, t2: f64, phi: f64, m_par: f64) -> (BlochModel, SymmetrySpec) {
    let mut m = BlochModel::new(2, 2, "haldane");
    m.params.insert("t1".into(), t1);
    m.params.insert("t2".into(), t2);
    m.params.insert("phi".into(), phi);
    m.params.insert("m".into(), m_par);
    insert_honeycomb_vectors(&mut m);
    m.add_hopping(&[0, 0], pauli_z() * cr(m_par)).unwrap();
    for cell in NN_CELLS {
        let mut t = zeros(2, 2);
        t[(0, 1)] = cr(t1); // ⟨A,0|H|B,cell⟩
        add_bond(&mut m, &cell, t);
    }
    let phase = Complex64::from_polar(t2, phi);
    for cell in NNN_CELLS {
        let mut t = zeros(2, 2);
        t[(0, 0)] = phase; // A → A along the oriented bond
        t[(1, 1)] = phase.conj(); // B gets the opposite phase
        m.add_hopping(&cell, t).unwrap();
    }
    (m, SymmetrySpec::default())
}

/// Kane–Mele model: two time-reversed Haldane copies coupled by a Rashba
/// term, fiber ordering (↑A, ↑B, ↓A, ↓B). Carries odd TRS Θ_T = σ_y⊗1.
pub fn build_kane_mele(t: f64, lambda_so: f64, lambda_r: f64, m_par: f64) -> (BlochModel, SymmetrySpec) {
    let mut m = BlochModel::new(2, 4, "kane_mele");
    m.params.insert("t".into(), t);
    m.params.insert("lambda_so".into(), lambda_so);
    m.params.insert("lambda_r".into(), lambda_r);
    m.params.insert("m".into(), m_par);
    insert_honeycomb_vectors(&mut m);
    let up = |t2: &CMat| kron(&CMat::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(0.0)]), t2);
    let down = |t2: &CMat| kron(&CMat::from_row_slice(2, 2, &[cr(0.0), cr(0.0), cr(0.0), cr(1.0)]), t2);
    // staggered mass, both spins
    let mass = pauli_z() * cr(m_par);
    m.add_hopping(&[0, 0], up(&mass) + down(&mass)).unwrap();
    // nearest-neighbor hopping, both spins
    for cell in NN_CELLS {
        let mut t_ab = zeros(2, 2);
        t_ab[(0, 1)] = cr(t);
        add_bond(&mut m, &cell, up(&t_ab) + down(&t_ab));
    }
    // spin-orbit term: Haldane phase +π/2 for spin up, −π/2 for spin down,
    // so that the down block is the entrywise conjugate of the up block
    let so_up = Complex64::from_polar(lambda_so, std::f64::consts::FRAC_PI_2);
    for cell in NNN_CELLS {
        let mut tu = zeros(2, 2);
        tu[(0, 0)] = so_up;
        tu[(1, 1)] = so_up.conj();
        let td = conj(&tu);
        m.add_hopping(&cell, up(&tu) + down(&td)).unwrap();
    }
    // Rashba term iλ_R (s × d̂)_z on nearest-neighbor bonds
    if lambda_r != 0.0 {
        let dirs = nn_directions();
        for (cell, dir) in NN_CELLS.iter().zip(dirs.iter()) {
            // spin matrix iλ_R (s_x d_y − s_y d_x)
            let spin = (pauli_x() * cr(dir[1]) - pauli_y() * cr(dir[0])) * c(0.0, lambda_r);
            // sublattice structure: A→B on this bond
            let mut subl = zeros(2, 2);
            subl[(0, 1)] = cr(1.0);
            add_bond(&mut m, cell, kron(&spin, &subl));
        }
    }
    let spec = SymmetrySpec {
        trs: Some(kron(&pauli_y(), &identity(2))),
        ..Default::default()
    };
    (m, spec)
}

// ---------------------------------------------------------------------------
// JSON schema

#[derive(serde::Serialize, serde::Deserialize)]
struct MatrixFile {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct HoppingFile {
    n: Vec<i64>,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(serde::Serialize, serde::Deserialize, Default)]
struct SymmetriesFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    chiral: Option<MatrixFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trs: Option<MatrixFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phs: Option<MatrixFile>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct ModelFile {
    name: String,
    d: usize,
    #[serde(rename = "N")]
    fiber: usize,
    hoppings: Vec<HoppingFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symmetries: Option<SymmetriesFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    params: BTreeMap<String, f64>,
}

fn matrix_to_file(m: &CMat) -> MatrixFile {
    let n = m.nrows();
    let mut re = vec![vec![0.0; m.ncols()]; n];
    let mut im = vec![vec![0.0; m.ncols()]; n];
    for i in 0..n {
        for j in 0..m.ncols() {
            re[i][j] = m[(i, j)].re;
            im[i][j] = m[(i, j)].im;
        }
    }
    MatrixFile { re, im }
}

fn matrix_from_file(f: &MatrixFile, fiber: usize, field: &str) -> Result<CMat> {
    if f.re.len() != fiber || f.im.len() != fiber {
        return Err(Error::Schema {
            field: field.into(),
            what: format!("expected {fiber} rows, got {}/{}", f.re.len(), f.im.len()),
        });
    }
    let mut m = zeros(fiber, fiber);
    for i in 0..fiber {
        if f.re[i].len() != fiber || f.im[i].len() != fiber {
            return Err(Error::Schema {
                field: field.into(),
                what: format!("row {i} has wrong length"),
            });
        }
        for j in 0..fiber {
            m[(i, j)] = c(f.re[i][j], f.im[i][j]);
        }
    }
    Ok(m)
}

/// Serialize a model (and its declared symmetries) to the JSON schema.
pub fn to_json(model: &BlochModel, spec: &SymmetrySpec) -> String {
    let file = ModelFile {
        name: model.name.clone(),
        d: model.d,
        fiber: model.fiber,
        hoppings: model
            .hoppings
            .iter()
            .map(|(n, t)| {
                let mf = matrix_to_file(t);
                HoppingFile {
                    n: n.clone(),
                    re: mf.re,
                    im: mf.im,
                }
            })
            .collect(),
        symmetries: Some(SymmetriesFile {
            chiral: spec.chiral.as_ref().map(matrix_to_file),
            trs: spec.trs.as_ref().map(matrix_to_file),
            phs: spec.phs.as_ref().map(matrix_to_file),
        }),
        params: model.params.clone(),
    };
    serde_json::to_string_pretty(&file).expect("model serialization")
}

/// Parse a model from JSON. Enforces t_{−n} = t_n† by symmetrization,
/// returning a warning when the file stores only one orientation of a bond,
/// and an error when both orientations are stored inconsistently.
pub fn from_json(text: &str) -> Result<(BlochModel, SymmetrySpec, Vec<String>)> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Schema {
        field: "json".into(),
        what: e.to_string(),
    })?;
    if file.d == 0 || file.d > 3 {
        return Err(Error::Schema {
            field: "d".into(),
            what: format!("lattice dimension {} unsupported", file.d),
        });
    }
    if file.fiber == 0 {
        return Err(Error::Schema {
            field: "N".into(),
            what: "fiber dimension must be positive".into(),
        });
    }
    let mut warnings = Vec::new();
    let mut raw: BTreeMap<Vec<i64>, CMat> = BTreeMap::new();
    for (idx, hop) in file.hoppings.iter().enumerate() {
        if hop.n.len() != file.d {
            return Err(Error::Schema {
                field: format!("hoppings[{idx}].n"),
                what: format!("expected {} components, got {}", file.d, hop.n.len()),
            });
        }
        let mf = MatrixFile {
            re: hop.re.clone(),
            im: hop.im.clone(),
        };
        let t = matrix_from_file(&mf, file.fiber, &format!("hoppings[{idx}]"))?;
        if raw.contains_key(&hop.n) {
            return Err(Error::Schema {
                field: format!("hoppings[{idx}]"),
                what: format!("duplicate entry for n = {:?}", hop.n),
            });
        }
        raw.insert(hop.n.clone(), t);
    }
    let mut model = BlochModel::new(file.d, file.fiber, &file.name);
    model.params = file.params;
    let keys: Vec<Vec<i64>> = raw.keys().cloned().collect();
    let mut done: std::collections::BTreeSet<Vec<i64>> = Default::default();
    for n in keys {
        if done.contains(&n) {
            continue;
        }
        let minus: Vec<i64> = n.iter().map(|x| -x).collect();
        let t = raw[&n].clone();
        if n == minus {
            let sym = (&t + t.adjoint()) * cr(0.5);
            if norm(&(&sym - &t)) > TOL_ALG {
                warnings.push(format!(
                    "on-site block at n = {n:?} symmetrized (residual {:.3e})",
                    norm(&(&sym - &t))
                ));
            }
            model.hoppings.insert(n.clone(), sym);
            done.insert(n);
            continue;
        }
        match raw.get(&minus) {
            Some(tm) => {
                let res = norm(&(tm - t.adjoint()));
                if res > 1e-6 {
                    return Err(Error::Schema {
                        field: format!("hoppings n = {n:?}"),
                        what: format!("t_-n differs from t_n† (residual {res:.3e})"),
                    });
                }
                if res > TOL_ALG {
                    warnings.push(format!(
                        "hoppings at ±{n:?} symmetrized (residual {res:.3e})"
                    ));
                }
                let sym = (&t + tm.adjoint()) * cr(0.5);
                model.hoppings.insert(n.clone(), sym.clone());
                model.hoppings.insert(minus.clone(), sym.adjoint());
            }
            None => {
                warnings.push(format!(
                    "hopping at n = {n:?} stored one-sided; added t_-n = t_n†"
                ));
                model.hoppings.insert(n.clone(), t.clone());
                model.hoppings.insert(minus.clone(), t.adjoint());
            }
        }
        done.insert(n);
        done.insert(minus.clone());
    }
    let mut spec = SymmetrySpec::default();
    if let Some(sf) = &file.symmetries {
        if let Some(mf) = &sf.chiral {
            spec.chiral = Some(matrix_from_file(mf, file.fiber, "symmetries.chiral")?);
        }
        if let Some(mf) = &sf.trs {
            spec.trs = Some(matrix_from_file(mf, file.fiber, "symmetries.trs")?);
        }
        if let Some(mf) = &sf.phs {
            spec.phs = Some(matrix_from_file(mf, file.fiber, "symmetries.phs")?);
        }
    }
    Ok((model, spec, warnings))
}
