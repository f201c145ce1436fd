//! Numerical strong invariants on sampled momentum grids: the 1D chiral
//! winding number through the Q_e compression, the 2D Chern number by
//! plaquette field strengths of occupied-frame link overlaps, and the 2D
//! time-reversal Z2 index by the sewing-matrix Pfaffian with branch
//! tracking in a parallel-transport gauge.

use crate::graded::default_odd_unitary;
use crate::mat::{conj, eigh, norm, pfaffian, polar_unitary, unitary_power, CMat};
use crate::models::{BlochModel, SymmetrySpec};
use crate::vandaele::sign_matrix;
use crate::{Error, Result, TOL_ALG, TOL_GAP};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum InvariantKind {
    Winding,
    Chern,
    Z2,
}

/// A computed invariant with its gap certificate and the values at the two
/// recorded resolutions.
#[derive(Debug, Clone, serde::Serialize)]
pub struct InvariantReport {
    pub kind: InvariantKind,
    pub value: i64,
    pub grid: usize,
    pub gap: f64,
    pub convergence: Vec<(usize, i64)>,
    pub residual: f64,
}

pub const DEFAULT_WINDING_GRID: usize = 256;
pub const DEFAULT_CHERN_GRID: usize = 24;
pub const DEFAULT_Z2_SEGMENT: usize = 64;

fn occupied_frame(h: &CMat) -> Result<(CMat, f64)> {
    let (vals, vecs) = eigh(h);
    let gap = vals.iter().fold(f64::INFINITY, |m, &v| m.min(v.abs()));
    if gap < TOL_GAP {
        return Err(Error::GapFailure {
            at: vec![],
            value: gap,
        });
    }
    let n_occ = vals.iter().filter(|&&v| v < 0.0).count();
    Ok((vecs.columns(0, n_occ).into_owned(), gap))
}

/// Winding of det Q_e(sgn h(k)) around the Brillouin circle, as the sum of
/// principal phase increments divided by 2π.
pub fn winding_number(
    model: &BlochModel,
    spec: &SymmetrySpec,
    grid: usize,
) -> Result<InvariantReport> {
    if model.d != 1 {
        return Err(Error::Unsupported {
            what: format!("winding number needs d = 1, model has d = {}", model.d),
        });
    }
    let gamma = spec.chiral.as_ref().ok_or_else(|| Error::Unsupported {
        what: "winding number needs a chiral symmetry".into(),
    })?;
    let report = crate::models::verify_symmetries(model, spec, grid.min(64));
    if report.chiral_residual.unwrap_or(f64::INFINITY) > TOL_ALG {
        return Err(Error::InconsistentProfile {
            what: format!(
                "chiral residual {:.3e} over the grid",
                report.chiral_residual.unwrap_or(f64::INFINITY)
            ),
        });
    }
    let (value, gap, residual) = winding_raw(model, gamma, grid)?;
    let (value2, _, _) = winding_raw(model, gamma, 2 * grid)?;
    if value != value2 {
        return Err(Error::Numerical {
            what: format!("winding unstable under grid doubling: {value} vs {value2}"),
            residual: (value - value2).abs() as f64,
        });
    }
    Ok(InvariantReport {
        kind: InvariantKind::Winding,
        value,
        grid,
        gap,
        convergence: vec![(grid, value), (2 * grid, value2)],
        residual,
    })
}

fn winding_raw(model: &BlochModel, gamma: &CMat, grid: usize) -> Result<(i64, f64, f64)> {
    let (gvals, gvecs) = eigh(gamma);
    let n = model.fiber;
    let n_plus = gvals.iter().filter(|&&v| v > 0.0).count();
    if 2 * n_plus != n {
        return Err(Error::Hypothesis {
            what: "chiral grading is not balanced".into(),
        });
    }
    let v_plus = gvecs.columns(n - n_plus, n_plus).into_owned();
    let e = default_odd_unitary(gamma)?;
    let mut dets = Vec::with_capacity(grid);
    let mut min_gap = f64::INFINITY;
    for j in 0..grid {
        let k = j as f64 / grid as f64;
        let h = model.evaluate(&[k]);
        let (sign, gap) = sign_matrix(&h).map_err(|err| match err {
            Error::GapFailure { value, .. } => Error::GapFailure {
                at: vec![k],
                value,
            },
            other => other,
        })?;
        min_gap = min_gap.min(gap);
        let q = v_plus.adjoint() * &e * &sign * &v_plus;
        let res = crate::mat::unitary_residual(&q);
        if res > 1e-8 {
            return Err(Error::NotUnitary { residual: res });
        }
        dets.push(q.determinant());
    }
    let mut total = 0.0f64;
    for j in 0..grid {
        let a = dets[j];
        let b = dets[(j + 1) % grid];
        total += (b / a).arg();
    }
    let winding = total / (2.0 * std::f64::consts::PI);
    let value = winding.round();
    let residual = (winding - value).abs();
    if residual > 0.1 {
        return Err(Error::Rounding {
            what: "winding number".into(),
            residual,
            limit: 0.1,
        });
    }
    Ok((value as i64, min_gap, residual))
}

/// Chern number by the plaquette lattice field strength of occupied-frame
/// link overlaps. The plaquette sum is an exact integer multiple of 2π up
/// to floating error; a non-integer total triggers one automatic retry at
/// doubled resolution.
pub fn chern_number(model: &BlochModel, grid: usize) -> Result<InvariantReport> {
    if model.d != 2 {
        return Err(Error::Unsupported {
            what: format!("Chern number needs d = 2, model has d = {}", model.d),
        });
    }
    let mut grid = grid.max(4);
    let mut first = chern_raw(model, grid);
    if matches!(first, Err(Error::Rounding { .. })) {
        grid *= 2;
        first = chern_raw(model, grid);
    }
    let (value, gap, residual) = first?;
    let (value2, _, _) = chern_raw(model, 2 * grid)?;
    if value != value2 {
        return Err(Error::Numerical {
            what: format!("Chern number unstable under grid doubling: {value} vs {value2}"),
            residual: (value - value2).abs() as f64,
        });
    }
    Ok(InvariantReport {
        kind: InvariantKind::Chern,
        value,
        grid,
        gap,
        convergence: vec![(grid, value), (2 * grid, value2)],
        residual,
    })
}

fn chern_raw(model: &BlochModel, grid: usize) -> Result<(i64, f64, f64)> {
    let mut frames: Vec<CMat> = Vec::with_capacity(grid * grid);
    let mut min_gap = f64::INFINITY;
    let mut n_occ = None;
    for ix in 0..grid {
        for iy in 0..grid {
            let k = [ix as f64 / grid as f64, iy as f64 / grid as f64];
            let h = model.evaluate(&k);
            let (frame, gap) = occupied_frame(&h).map_err(|err| match err {
                Error::GapFailure { value, .. } => Error::GapFailure {
                    at: k.to_vec(),
                    value,
                },
                other => other,
            })?;
            min_gap = min_gap.min(gap);
            match n_occ {
                None => n_occ = Some(frame.ncols()),
                Some(m) if m != frame.ncols() => {
                    return Err(Error::GapFailure {
                        at: k.to_vec(),
                        value: min_gap,
                    })
                }
                _ => {}
            }
            frames.push(frame);
        }
    }
    let at = |ix: usize, iy: usize| &frames[(ix % grid) * grid + (iy % grid)];
    let link = |a: &CMat, b: &CMat| -> Complex64 {
        let overlap = (a.adjoint() * b).determinant();
        overlap / overlap.norm().max(1e-300)
    };
    let mut total = 0.0f64;
    for ix in 0..grid {
        for iy in 0..grid {
            let ux = link(at(ix, iy), at(ix + 1, iy));
            let uy_right = link(at(ix + 1, iy), at(ix + 1, iy + 1));
            let ux_top = link(at(ix, iy + 1), at(ix + 1, iy + 1));
            let uy = link(at(ix, iy), at(ix, iy + 1));
            total += (ux * uy_right * ux_top.conj() * uy.conj()).arg();
        }
    }
    let chern = total / (2.0 * std::f64::consts::PI);
    let value = chern.round();
    let residual = (chern - value).abs();
    if residual > 1e-6 {
        return Err(Error::Rounding {
            what: "Chern number plaquette sum".into(),
            residual,
            limit: 1e-6,
        });
    }
    Ok((value as i64, min_gap, residual))
}

/// Fu–Kane Z2 index from the sewing matrix w(k) = F(−k)† Θ conj(F(k)):
/// ν = Π over the four time-reversal-invariant momenta of Pf(w)/√(det w),
/// with the √det branch tracked along the two TR-invariant circles in a
/// smooth periodic gauge (parallel transport plus distributed holonomy).
pub fn z2_invariant(
    model: &BlochModel,
    spec: &SymmetrySpec,
    segment: usize,
) -> Result<InvariantReport> {
    if model.d != 2 {
        return Err(Error::Unsupported {
            what: format!("Z2 index needs d = 2, model has d = {}", model.d),
        });
    }
    let theta = spec.trs.as_ref().ok_or_else(|| Error::Unsupported {
        what: "Z2 index needs a time-reversal symmetry".into(),
    })?;
    let parity = crate::mat::scalar_sign(&(theta * conj(theta)), "ΘΘ̄")?;
    if parity != -1 {
        return Err(Error::Unsupported {
            what: "Z2 index needs odd TRS (ΘΘ̄ = −1)".into(),
        });
    }
    let report = crate::models::verify_symmetries(model, spec, 16);
    if report.trs_residual.unwrap_or(f64::INFINITY) > TOL_ALG {
        return Err(Error::InconsistentProfile {
            what: format!(
                "TRS residual {:.3e} over the grid",
                report.trs_residual.unwrap_or(f64::INFINITY)
            ),
        });
    }
    let (value, gap, residual) = z2_raw(model, theta, segment)?;
    let (value2, _, _) = z2_raw(model, theta, 2 * segment)?;
    if value != value2 {
        return Err(Error::Numerical {
            what: format!("Z2 index unstable under grid doubling: {value} vs {value2}"),
            residual: 1.0,
        });
    }
    Ok(InvariantReport {
        kind: InvariantKind::Z2,
        value,
        grid: segment,
        gap,
        convergence: vec![(segment, value), (2 * segment, value2)],
        residual,
    })
}

/// The two circle signs must be computed in gauges that extend continuously
/// over the cylinder between ky = 0 and ky = 1/2; each sign alone is only
/// defined up to the winding parity of its gauge. The ky = 0 gauge is built
/// by parallel transport with distributed holonomy, then transported column
/// by column to ky = 1/2.
fn z2_raw(model: &BlochModel, theta: &CMat, segment: usize) -> Result<(i64, f64, f64)> {
    let n_pts = 2 * segment;
    let mut min_gap = f64::INFINITY;
    let frame_at = |k: [f64; 2], min_gap: &mut f64| -> Result<CMat> {
        let h = model.evaluate(&k);
        let (frame, gap) = occupied_frame(&h).map_err(|err| match err {
            Error::GapFailure { value, .. } => Error::GapFailure {
                at: k.to_vec(),
                value,
            },
            other => other,
        })?;
        *min_gap = min_gap.min(gap);
        Ok(frame)
    };
    let mut frames0 = Vec::with_capacity(n_pts);
    for j in 0..n_pts {
        frames0.push(frame_at([j as f64 / n_pts as f64, 0.0], &mut min_gap)?);
    }
    let gauge0 = periodic_transport_gauge(&frames0)?;
    let mut gauge_half = Vec::with_capacity(n_pts);
    for (j, start) in gauge0.iter().enumerate() {
        let kx = j as f64 / n_pts as f64;
        let mut g = start.clone();
        for step in 1..=segment {
            let ky = 0.5 * step as f64 / segment as f64;
            let frame = frame_at([kx, ky], &mut min_gap)?;
            let overlap = g.adjoint() * &frame;
            g = &frame * polar_unitary(&overlap).adjoint();
        }
        gauge_half.push(g);
    }
    let (s0, r0) = circle_delta(&gauge0, theta, 0.0)?;
    let (s1, r1) = circle_delta(&gauge_half, theta, 0.5)?;
    let value = if s0 * s1 == 1 { 0 } else { 1 };
    Ok((value, min_gap, r0.max(r1)))
}

/// Parallel-transport gauge around a closed circle of frames, with the loop
/// holonomy distributed so the gauge closes periodically.
fn periodic_transport_gauge(frames: &[CMat]) -> Result<Vec<CMat>> {
    let n_pts = frames.len();
    let mut gauge: Vec<CMat> = Vec::with_capacity(n_pts);
    gauge.push(frames[0].clone());
    for frame in frames.iter().skip(1) {
        let overlap = gauge.last().unwrap().adjoint() * frame;
        let up = polar_unitary(&overlap);
        gauge.push(frame * up.adjoint());
    }
    let wrap_overlap = gauge[n_pts - 1].adjoint() * &frames[0];
    let transported_back = &frames[0] * polar_unitary(&wrap_overlap).adjoint();
    let holonomy = polar_unitary(&(transported_back.adjoint() * &gauge[0]));
    for (j, g) in gauge.iter_mut().enumerate() {
        let correction = unitary_power(&holonomy, j as f64 / n_pts as f64)?;
        *g = &*g * correction;
    }
    Ok(gauge)
}

/// δ = Pf(w(π))/√det(w(π)) with the branch continued from √det(w(0)) :=
/// Pf(w(0)) along half the circle, in the supplied smooth periodic gauge.
fn circle_delta(gauge: &[CMat], theta: &CMat, ky: f64) -> Result<(i64, f64)> {
    let n_pts = gauge.len();
    let segment = n_pts / 2;
    let sewing = |j: usize| -> CMat {
        let jm = (n_pts - j) % n_pts;
        gauge[jm].adjoint() * theta * conj(&gauge[j])
    };
    let w0 = sewing(0);
    let w_half = sewing(segment);
    let mut antisym = norm(&(&w0 + w0.transpose())).max(norm(&(&w_half + w_half.transpose())));
    antisym = antisym.max((w0.determinant().norm() - 1.0).abs());
    if antisym > 1e-6 {
        return Err(Error::Numerical {
            what: format!("sewing matrix defect on circle ky = {ky}"),
            residual: antisym,
        });
    }
    let mut branch = pfaffian(&w0)?;
    let mut prev_det = w0.determinant();
    for j in 1..=segment {
        let det = sewing(j).determinant();
        let ratio = det / prev_det;
        branch *= Complex64::from_polar(ratio.norm().sqrt(), 0.5 * ratio.arg());
        prev_det = det;
    }
    let delta = pfaffian(&w_half)? / branch;
    let to_plus = (delta - Complex64::new(1.0, 0.0)).norm();
    let to_minus = (delta + Complex64::new(1.0, 0.0)).norm();
    let residual = to_plus.min(to_minus);
    if residual > 0.1 {
        return Err(Error::Numerical {
            what: format!("Pfaffian branch ambiguity on circle ky = {ky}"),
            residual,
        });
    }
    Ok((if to_plus < to_minus { 1 } else { -1 }, residual))
}

/// Z2 of a model against Z2 of its doubling: the doubled index must vanish
/// (twice any class is trivial in the Z_2 group) while complex data of the
/// blocks may survive.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DoublingReport {
    pub single: InvariantReport,
    pub doubled: InvariantReport,
}

pub fn mod2_doubling_check(
    model: &BlochModel,
    spec: &SymmetrySpec,
    segment: usize,
) -> Result<DoublingReport> {
    let single = z2_invariant(model, spec, segment)?;
    let doubled_model = model.direct_sum(model)?;
    let doubled_spec = spec.direct_sum(spec);
    let doubled = z2_invariant(&doubled_model, &doubled_spec, segment)?;
    Ok(DoublingReport { single, doubled })
}
