//! The Garcia-Stichtenoth tower `z_l^q0 + z_l = x_{l-1}^(q0+1)`,
//! `x_{l-1} = z_{l-1} / x_{l-2}`, over GF(q0^2).
//!
//! Points over `x1 != 0` are enumerated level by level. Codes on level
//! `l >= 3` are not built here; only their designed parameters are computed.
//! Level 2 is the Hermitian curve and is built through [`crate::hermitian`].

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{Elem, FiniteField};
use crate::hermitian::{code_proj_x, hermitian_field};
use crate::lrc::{Family, LinearCode};

/// Default cap on the number of enumerated points.
pub const POINT_CAP: u64 = 1_000_000;

/// `(x1, z2, ..., zl)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerPoint {
    pub coords: Vec<Elem>,
}

impl TowerPoint {
    pub fn level(&self) -> usize {
        self.coords.len()
    }

    /// `x_1, ..., x_l` with `x_i = z_i / x_{i-1}`; `None` if a division by zero occurs.
    pub fn x_chain(&self, field: &FiniteField) -> Option<Vec<Elem>> {
        let mut xs = vec![self.coords[0]];
        for &z in &self.coords[1..] {
            let prev = *xs.last().unwrap();
            xs.push(field.div(z, prev).ok()?);
        }
        Some(xs)
    }

    /// Checks every defining equation of the tower.
    pub fn satisfies(&self, field: &FiniteField, q0: u32) -> bool {
        let Some(xs) = self.x_chain(field) else { return false };
        self.coords[1..].iter().zip(&xs).all(|(&z, &x_prev)| {
            field.add(field.pow(z, q0 as u64), z) == field.pow(x_prev, q0 as u64 + 1)
        })
    }
}

/// `n_l = q0^(l-1) (q0^2 - 1)`.
pub fn tower_point_count(q0: u32, l: u32) -> u64 {
    (q0 as u64).pow(l.saturating_sub(1)) * ((q0 as u64).pow(2) - 1)
}

/// Rational points of level `l` lying over `x1 != 0`, in lexicographic
/// canonical order.
pub fn enumerate_tower_points(q0: u32, l: u32) -> Result<Vec<TowerPoint>> {
    enumerate_tower_points_capped(q0, l, POINT_CAP)
}

pub fn enumerate_tower_points_capped(q0: u32, l: u32, cap: u64) -> Result<Vec<TowerPoint>> {
    if l == 0 {
        return Err(Error::InvalidParameter("tower level starts at 1".into()));
    }
    let field = hermitian_field(q0)?;
    let expected = tower_point_count(q0, l);
    if expected > cap {
        return Err(Error::CapExceeded { count: expected as u128, cap: cap as u128 });
    }
    // preimages of each value under z -> z^q0 + z
    let mut preimages = vec![Vec::new(); field.order() as usize];
    for z in field.elements() {
        let c = field.add(field.pow(z, q0 as u64), z);
        preimages[c.index()].push(z);
    }
    let x1s: Vec<Elem> = field.nonzero_elements().collect();
    let points: Vec<TowerPoint> = x1s
        .par_iter()
        .map(|&x1| {
            let mut out = Vec::new();
            extend(&field, q0, &preimages, l as usize, &mut vec![x1], x1, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .concat();
    if points.len() as u64 != expected {
        return Err(Error::InvalidStructure(format!(
            "enumerated {} points, expected {expected}",
            points.len()
        )));
    }
    Ok(points)
}

fn extend(
    field: &FiniteField,
    q0: u32,
    preimages: &[Vec<Elem>],
    level: usize,
    coords: &mut Vec<Elem>,
    x_prev: Elem,
    out: &mut Vec<TowerPoint>,
) {
    if coords.len() == level {
        out.push(TowerPoint { coords: coords.clone() });
        return;
    }
    let c = field.pow(x_prev, q0 as u64 + 1);
    for &z in &preimages[c.index()] {
        // x_i = z_i / x_{i-1} must stay nonzero to continue the chain
        let Ok(x) = field.div(z, x_prev) else { continue };
        if x.is_zero() && coords.len() + 1 < level {
            continue;
        }
        coords.push(z);
        extend(field, q0, preimages, level, coords, x, out);
        coords.pop();
    }
}

/// Designed parameters of a tower code family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerParams {
    pub family: &'static str,
    pub q0: u32,
    pub level: u32,
    pub t: i64,
    pub n: i64,
    pub r: i64,
    /// Degree of the coordinate function used for interpolation.
    pub h: i64,
    /// Upper bound on the genus of the base curve, as used in the k formula.
    pub base_genus_bound: i64,
    /// Upper bound on the genus of `X_l`: `q0^l + q0^(l-1)`.
    pub genus_bound: i64,
    pub k_lower: i64,
    pub k_lower_raw: i64,
    pub k_clamped: bool,
    /// For `l = 2` the base curve is the projective line; `r (t + 1)`.
    pub k_lower_genus_zero: Option<i64>,
    pub d_lower: i64,
    pub t_min: i64,
    pub t_max: i64,
}

fn check_q0(q0: u32, l: u32) -> Result<()> {
    if l < 2 {
        return Err(Error::InvalidParameter("tower codes need level l >= 2".into()));
    }
    hermitian_field(q0).map(|_| ())
}

fn finish(mut p: TowerParams, checked: bool) -> Result<TowerParams> {
    if checked && !(p.t_min..=p.t_max).contains(&p.t) {
        return Err(Error::OutOfRange { t: p.t, lo: p.t_min, hi: p.t_max });
    }
    p.k_clamped = p.k_lower_raw < 0;
    p.k_lower = p.k_lower_raw.max(0);
    Ok(p)
}

/// Projection `X_l -> X_{l-1}`: `r = q0 - 1`, `h = 2 q0^(l-1)`,
/// `k >= r(t - n_{l-1}/(q0-1) + 1)`, `d >= n_l - t q0 - 2 q0^(l-1)(q0-2)`.
pub fn gs1_params(q0: u32, l: u32, t: i64) -> Result<TowerParams> {
    gs1(q0, l, t, true)
}

/// [`gs1_params`] without the range check on `t`.
pub fn gs1_formula(q0: u32, l: u32, t: i64) -> Result<TowerParams> {
    gs1(q0, l, t, false)
}

fn gs1(q0: u32, l: u32, t: i64, checked: bool) -> Result<TowerParams> {
    check_q0(q0, l)?;
    let q = q0 as i64;
    let n = tower_point_count(q0, l) as i64;
    let n_prev = tower_point_count(q0, l - 1) as i64;
    let pow = q.pow(l - 1);
    let r = q - 1;
    // n_{l-1}/(q0-1) = q0^(l-2)(q0+1), exact
    let genus_prev = q.pow(l - 2) * (q + 1);
    finish(
        TowerParams {
            family: "gs1",
            q0,
            level: l,
            t,
            n,
            r,
            h: 2 * pow,
            base_genus_bound: genus_prev,
            genus_bound: q.pow(l) + pow,
            k_lower: 0,
            k_lower_raw: r * (t - genus_prev + 1),
            k_clamped: false,
            k_lower_genus_zero: (l == 2).then_some(r * (t + 1)),
            d_lower: n - t * q - 2 * pow * (q - 2),
            t_min: if l == 2 { 0 } else { genus_prev },
            t_max: n_prev,
        },
        checked,
    )
}

/// Projection `X_l -> Y_l`: `r = q0`, `h = q0^(l-1)`,
/// `k >= r(t - q0^(l-1) + 1)`, `d >= n_l - t(q0+1) - (q0-1) q0^(l-1)`.
pub fn gs2_params(q0: u32, l: u32, t: i64) -> Result<TowerParams> {
    gs2(q0, l, t, true)
}

/// [`gs2_params`] without the range check on `t`.
pub fn gs2_formula(q0: u32, l: u32, t: i64) -> Result<TowerParams> {
    gs2(q0, l, t, false)
}

fn gs2(q0: u32, l: u32, t: i64, checked: bool) -> Result<TowerParams> {
    check_q0(q0, l)?;
    let q = q0 as i64;
    let n = tower_point_count(q0, l) as i64;
    let n_prev = tower_point_count(q0, l - 1) as i64;
    let pow = q.pow(l - 1);
    finish(
        TowerParams {
            family: "gs2",
            q0,
            level: l,
            t,
            n,
            r: q,
            h: pow,
            base_genus_bound: pow,
            genus_bound: q.pow(l) + pow,
            k_lower: 0,
            k_lower_raw: q * (t - pow + 1),
            k_clamped: false,
            k_lower_genus_zero: (l == 2).then_some(q * (t + 1)),
            d_lower: n - t * (q + 1) - (q - 1) * pow,
            t_min: pow,
            t_max: n_prev,
        },
        checked,
    )
}

/// The level-2 member of the second tower family: the Hermitian
/// projection-on-`x` code, cross-checked against the tower formulas.
pub fn gs2_code_l2(q0: u32, t: u32) -> Result<LinearCode> {
    let code = code_proj_x(q0, t)?;
    let p = gs2_formula(q0, 2, t as i64)?;
    let (n, k, r) = (code.len() as i64, code.dimension() as i64, code.localities()[0] as i64);
    if n != p.n || r != p.r || code.designed_distance() != p.d_lower || k < p.k_lower_raw {
        return Err(Error::ParameterMismatch(format!(
            "Hermitian code (n={n}, k={k}, r={r}, d={}) vs tower formulas (n={}, k>={}, r={}, d={})",
            code.designed_distance(),
            p.n,
            p.k_lower_raw,
            p.r,
            p.d_lower
        )));
    }
    Ok(code.with_family(Family::GsTowerL2))
}

/// Field over which the tower with parameter `q0` is defined.
pub fn tower_field(q0: u32) -> Result<Arc<FiniteField>> {
    hermitian_field(q0)
}
