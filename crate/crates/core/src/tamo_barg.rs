//! Reed-Solomon-like optimal LRC codes from good polynomials.
//!
//! A good polynomial `g` of degree `r+1` is constant on each block of a
//! partition of the evaluation points into `(r+1)`-sets. Cosets of a
//! multiplicative or additive subgroup `H` with `|H| = r+1` give such
//! partitions.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{mult_subgroup_cosets, Elem, FiniteField, UniPoly};
use crate::lrc::{build_generator, EvaluationCodeSpec, Family, LinearCode, Partition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPolynomial {
    poly: UniPoly,
    parts: Vec<Vec<Elem>>,
    constants: Vec<Elem>,
}

impl GoodPolynomial {
    /// Checks that the parts are disjoint, of size `deg g`, and that `g` is
    /// constant on each of them.
    pub fn new(poly: UniPoly, parts: Vec<Vec<Elem>>) -> Result<GoodPolynomial> {
        let deg = poly.degree().unwrap_or(0);
        if deg < 2 {
            return Err(Error::InvalidParameter("good polynomial needs degree r+1 >= 2".into()));
        }
        let mut seen = HashSet::new();
        let mut constants = Vec::with_capacity(parts.len());
        for part in &parts {
            if part.len() != deg {
                return Err(Error::InvalidParameter(format!(
                    "part {part:?} has size {}, expected {deg}",
                    part.len()
                )));
            }
            if let Some(x) = part.iter().find(|&&x| !seen.insert(x)) {
                return Err(Error::InvalidParameter(format!("{x} lies in two parts")));
            }
            let c = poly.eval(part[0])?;
            for &x in &part[1..] {
                if poly.eval(x)? != c {
                    return Err(Error::InvalidParameter(format!(
                        "{poly} is not constant on {part:?}"
                    )));
                }
            }
            constants.push(c);
        }
        Ok(GoodPolynomial { poly, parts, constants })
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn parts(&self) -> &[Vec<Elem>] {
        &self.parts
    }

    pub fn constants(&self) -> &[Elem] {
        &self.constants
    }

    pub fn locality(&self) -> usize {
        self.parts.first().map_or(0, |p| p.len() - 1)
    }
}

/// `g(x) = x^(r+1)` on the cosets `rep * H` of the order-`(r+1)` subgroup.
pub fn good_poly_multiplicative(
    field: Arc<FiniteField>,
    r: usize,
    reps: &[Elem],
) -> Result<GoodPolynomial> {
    if r == 0 {
        return Err(Error::InvalidParameter("locality must be at least 1".into()));
    }
    let cosets = mult_subgroup_cosets(&field, r as u32 + 1, reps)?;
    let poly = UniPoly::monomial(field, Elem::ONE, r + 1);
    GoodPolynomial::new(poly, cosets.cosets)
}

/// `g(x) = prod_{b in H} (x - b)` on the additive cosets `rep + H`.
pub fn good_poly_additive(
    field: Arc<FiniteField>,
    subgroup: &[Elem],
    reps: &[Elem],
) -> Result<GoodPolynomial> {
    let set: HashSet<Elem> = subgroup.iter().copied().collect();
    if set.len() != subgroup.len() || !set.contains(&Elem::ZERO) {
        return Err(Error::InvalidParameter("subgroup must list distinct elements including 0".into()));
    }
    for &a in subgroup {
        for &b in subgroup {
            if !set.contains(&field.add(a, b)) {
                return Err(Error::InvalidParameter(format!(
                    "{subgroup:?} is not closed under addition"
                )));
            }
        }
    }
    if subgroup.len() < 2 {
        return Err(Error::InvalidParameter("locality must be at least 1".into()));
    }
    let parts = reps
        .iter()
        .map(|&rep| subgroup.iter().map(|&h| field.add(rep, h)).collect())
        .collect();
    let poly = UniPoly::from_roots(field, subgroup);
    GoodPolynomial::new(poly, parts)
}

/// The `(n, k, r)` code spanned by `g^j x^i`, `i < r`, `j < k/r`, evaluated on
/// the parts of `gp`.
///
/// Fibers are sorted by the canonical order of `g`'s value on them and points
/// within a fiber by canonical order.
pub fn tb_spec(gp: &GoodPolynomial, k: usize) -> Result<EvaluationCodeSpec> {
    let field = gp.poly.field().clone();
    let r = gp.locality();
    if k == 0 || k % r != 0 {
        return Err(Error::Divisibility(format!("r = {r} does not divide k = {k}")));
    }
    let m = k / r;
    let distinct: HashSet<Elem> = gp.constants.iter().copied().collect();
    if m > distinct.len() {
        return Err(Error::InvalidParameter(format!(
            "k/r = {m} exceeds the {} distinct values of g",
            distinct.len()
        )));
    }

    let mut order: Vec<usize> = (0..gp.parts.len()).collect();
    order.sort_by_key(|&i| gp.constants[i]);

    let mut xvals = Vec::new();
    let mut fibers = Vec::new();
    let mut constants = Vec::new();
    for &pi in &order {
        let mut pts = gp.parts[pi].clone();
        pts.sort();
        fibers.push((xvals.len()..xvals.len() + pts.len()).collect());
        xvals.extend(pts);
        constants.push(gp.constants[pi]);
    }
    let n = xvals.len();
    let labels = xvals.iter().map(|&x| vec![x]).collect();
    let basis_values = (0..m)
        .map(|j| constants.iter().map(|&c| field.pow(c, j as u64)).collect())
        .collect();
    Ok(EvaluationCodeSpec {
        field,
        partition: Partition::new(n, fibers, xvals)?,
        basis_values,
        t: m as i64 - 1,
        ell: 1,
        genus_y: 0,
        h: 1,
        family: Family::TamoBarg,
        labels,
    })
}

pub fn tb_code(gp: &GoodPolynomial, k: usize) -> Result<LinearCode> {
    build_generator(&tb_spec(gp, k)?)
}
