//! Codes on the Hermitian curve `x^q0 + x = y^(q0+1)` over GF(q0^2).
//!
//! Projecting on `y` gives fibers ("columns") of `q0` points over every
//! `y`; projecting on `x` gives fibers ("rows") of `q0 + 1` points over every
//! `x` outside the trace kernel `M`. Rows and columns meet in at most one
//! point, which gives the family with two disjoint recovering sets.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{prime_power, trace_kernel, Elem, FiniteField, MAX_ORDER};
use crate::lrc::{
    build_generator, EvaluationCodeSpec, Family, LinearCode, Partition, RecoveringStructure,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffinePoint {
    pub x: Elem,
    pub y: Elem,
}

/// Points of a projection fiber, by index into [`HermitianGeometry::points`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub base: Elem,
    pub points: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct HermitianGeometry {
    field: Arc<FiniteField>,
    q0: u32,
    points: Vec<AffinePoint>,
    columns: Vec<Fiber>,
    rows: Vec<Fiber>,
    kernel: Vec<Elem>,
}

/// GF(q0^2) built from the default modulus table.
pub fn hermitian_field(q0: u32) -> Result<Arc<FiniteField>> {
    let (p, b) = prime_power(q0)
        .ok_or_else(|| Error::InvalidParameter(format!("q0 = {q0} is not a prime power")))?;
    if (q0 as u64).pow(2) > MAX_ORDER as u64 {
        return Err(Error::FieldTooLarge { p, a: 2 * b });
    }
    Ok(Arc::new(FiniteField::new(p, 2 * b, None)?))
}

/// All affine points by direct search over GF(q)^2, sorted by `y` then `x`.
pub fn enumerate_points(q0: u32) -> Result<HermitianGeometry> {
    let field = hermitian_field(q0)?;
    HermitianGeometry::new(field)
}

impl HermitianGeometry {
    pub fn new(field: Arc<FiniteField>) -> Result<HermitianGeometry> {
        let q0 = field.sqrt_order().ok_or(Error::NotASquare(field.order()))?;
        let kernel = trace_kernel(&field)?;
        let f = &field;
        let mut points = Vec::new();
        let mut columns = Vec::new();
        for y in f.elements() {
            let rhs = f.pow(y, q0 as u64 + 1);
            let start = points.len();
            points.extend(
                f.elements()
                    .filter(|&x| f.add(f.pow(x, q0 as u64), x) == rhs)
                    .map(|x| AffinePoint { x, y }),
            );
            columns.push(Fiber { base: y, points: (start..points.len()).collect() });
        }
        let rows = f
            .elements()
            .filter(|x| !kernel.contains(x))
            .map(|x| Fiber {
                base: x,
                points: (0..points.len()).filter(|&i| points[i].x == x).collect(),
            })
            .collect();
        let geom = HermitianGeometry { field, q0, points, columns, rows, kernel };
        geom.check()?;
        Ok(geom)
    }

    fn check(&self) -> Result<()> {
        let q0 = self.q0 as usize;
        let bad = |msg: String| Err(Error::InvalidStructure(msg));
        if self.points.len() != q0.pow(3) {
            return bad(format!("{} affine points, expected {}", self.points.len(), q0.pow(3)));
        }
        if let Some(c) = self.columns.iter().find(|c| c.points.len() != q0) {
            return bad(format!("column over {} has {} points", c.base, c.points.len()));
        }
        if let Some(r) = self.rows.iter().find(|r| r.points.len() != q0 + 1) {
            return bad(format!("row over {} has {} points", r.base, r.points.len()));
        }
        let mut seen = HashSet::new();
        for r in &self.rows {
            for &i in &r.points {
                if !seen.insert((self.points[i].y, r.base)) {
                    return bad("a row and a column share two points".into());
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn q0(&self) -> u32 {
        self.q0
    }

    pub fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    /// Fibers of the projection on `y`, one per element of GF(q).
    pub fn columns(&self) -> &[Fiber] {
        &self.columns
    }

    /// Fibers of the projection on `x` over GF(q) minus the kernel.
    pub fn rows(&self) -> &[Fiber] {
        &self.rows
    }

    /// `M = {a : a^q0 + a = 0}`, the fully ramified values of `x`.
    pub fn kernel(&self) -> &[Elem] {
        &self.kernel
    }

    fn label(&self, i: usize) -> Vec<Elem> {
        vec![self.points[i].x, self.points[i].y]
    }
}

/// Projection on `y`: `n = q0^3`, `k = (t+1)(q0-1)`, `r = q0-1`,
/// `d >= n - t q0 - (q0-2)(q0+1)`.
pub fn spec_proj_y(geom: &HermitianGeometry, t: u32) -> Result<EvaluationCodeSpec> {
    let f = &geom.field;
    let q0 = geom.q0 as i64;
    let order: Vec<usize> = geom.columns.iter().flat_map(|c| c.points.iter().copied()).collect();
    let mut fibers = Vec::new();
    let mut pos = 0;
    for c in &geom.columns {
        fibers.push((pos..pos + c.points.len()).collect());
        pos += c.points.len();
    }
    let xvals = order.iter().map(|&i| geom.points[i].x).collect();
    let basis_values = (0..=t as u64)
        .map(|j| geom.columns.iter().map(|c| f.pow(c.base, j)).collect())
        .collect();
    Ok(EvaluationCodeSpec {
        field: f.clone(),
        partition: Partition::new(order.len(), fibers, xvals)?,
        basis_values,
        t: t as i64,
        ell: 1,
        genus_y: 0,
        h: q0 + 1,
        family: Family::HermitianY,
        labels: order.iter().map(|&i| geom.label(i)).collect(),
    })
}

/// Projection on `x`: `n = q0^3 - q0`, `k = (t+1)q0`, `r = q0`,
/// `d >= n - t(q0+1) - q0(q0-1)`.
pub fn spec_proj_x(geom: &HermitianGeometry, t: u32) -> Result<EvaluationCodeSpec> {
    let f = &geom.field;
    let order: Vec<usize> = geom.rows.iter().flat_map(|r| r.points.iter().copied()).collect();
    let mut fibers = Vec::new();
    let mut pos = 0;
    for r in &geom.rows {
        fibers.push((pos..pos + r.points.len()).collect());
        pos += r.points.len();
    }
    let xvals = order.iter().map(|&i| geom.points[i].y).collect();
    let basis_values = (0..=t as u64)
        .map(|j| geom.rows.iter().map(|r| f.pow(r.base, j)).collect())
        .collect();
    Ok(EvaluationCodeSpec {
        field: f.clone(),
        partition: Partition::new(order.len(), fibers, xvals)?,
        basis_values,
        t: t as i64,
        ell: 1,
        genus_y: 0,
        h: geom.q0 as i64,
        family: Family::HermitianX,
        labels: order.iter().map(|&i| geom.label(i)).collect(),
    })
}

pub fn code_proj_y(q0: u32, t: u32) -> Result<LinearCode> {
    build_generator(&spec_proj_y(&enumerate_points(q0)?, t)?)
}

pub fn code_proj_x(q0: u32, t: u32) -> Result<LinearCode> {
    build_generator(&spec_proj_x(&enumerate_points(q0)?, t)?)
}

/// `(q0+1)(q0^2 - 3q0 + 3)`, the Bezout bound for the two-recovering-set code.
pub fn lrc2_designed_distance(q0: u32) -> i64 {
    let q0 = q0 as i64;
    (q0 + 1) * (q0 * q0 - 3 * q0 + 3)
}

/// Evaluations of `x^i y^j`, `i <= q0-2`, `j <= q0-1`, on the points with
/// `y != 0`. Partition 1 is the columns (interpolate in `x`, `r1 = q0-1`),
/// partition 2 the rows (interpolate in `y`, `r2 = q0`).
pub fn code_lrc2(q0: u32) -> Result<LinearCode> {
    if q0 < 3 {
        return Err(Error::InvalidParameter(format!(
            "two-recovering-set code needs q0 >= 3, got {q0}"
        )));
    }
    let geom = enumerate_points(q0)?;
    let f = &geom.field;
    let order: Vec<usize> = geom.columns[1..].iter().flat_map(|c| c.points.iter().copied()).collect();
    let n = order.len();
    let index_of = |pt: usize| order.iter().position(|&o| o == pt).expect("row point has y != 0");

    let mut col_fibers = Vec::new();
    let mut pos = 0;
    for c in &geom.columns[1..] {
        col_fibers.push((pos..pos + c.points.len()).collect());
        pos += c.points.len();
    }
    let row_fibers = geom
        .rows
        .iter()
        .map(|r| r.points.iter().map(|&p| index_of(p)).collect())
        .collect();
    let xs: Vec<Elem> = order.iter().map(|&i| geom.points[i].x).collect();
    let ys: Vec<Elem> = order.iter().map(|&i| geom.points[i].y).collect();
    let structure = RecoveringStructure::new(
        n,
        vec![Partition::new(n, col_fibers, xs.clone())?, Partition::new(n, row_fibers, ys.clone())?],
    )?;

    let mut generator = Vec::new();
    for i in 0..(q0 - 1) as u64 {
        for j in 0..q0 as u64 {
            generator.push((0..n).map(|c| f.mul(f.pow(xs[c], i), f.pow(ys[c], j))).collect());
        }
    }
    LinearCode::new(
        f.clone(),
        generator,
        structure,
        Family::HermitianLrc2,
        lrc2_designed_distance(q0),
        order.iter().map(|&i| geom.label(i)).collect(),
    )
}

/// `(n + 2) - (d_designed + k(r+1)/r)` with `r` the first locality; zero for
/// codes meeting the Singleton-type bound with their designed distance.
pub fn singleton_gap(code: &LinearCode) -> Result<i64> {
    let r = code.localities()[0];
    let k = code.dimension();
    if k % r != 0 {
        return Err(Error::Divisibility(format!("r = {r} does not divide k = {k}")));
    }
    Ok(code.len() as i64 + 2 - (code.designed_distance() + (k / r * (r + 1)) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q0_three_matches_the_figure() {
        let g = enumerate_points(3).unwrap();
        let f = g.field();
        let a = |k| f.alpha_pow(k);
        assert_eq!(g.points().len(), 27);
        let col0: Vec<Elem> = g.columns()[0].points.iter().map(|&i| g.points()[i].x).collect();
        assert_eq!(col0, vec![Elem::ZERO, a(2), a(6)]);
        // odd powers of y sit over {1, a^5, a^7}, even nonzero ones over {a, a^3, a^4}
        for c in &g.columns()[1..] {
            let xs: Vec<Elem> = c.points.iter().map(|&i| g.points()[i].x).collect();
            let odd = c.base.log().unwrap() % 2 == 1;
            let expect = if odd { vec![Elem::ONE, a(5), a(7)] } else { vec![a(1), a(3), a(4)] };
            assert_eq!(xs, expect, "column over {}", c.base);
        }
        assert_eq!(g.kernel(), &[Elem::ZERO, a(2), a(6)]);
    }

    #[test]
    fn q0_two_points() {
        let g = enumerate_points(2).unwrap();
        let f = g.field();
        let w = f.primitive();
        assert_eq!(g.points().len(), 8);
        for c in g.columns() {
            let xs: Vec<Elem> = c.points.iter().map(|&i| g.points()[i].x).collect();
            if c.base.is_zero() {
                assert_eq!(xs, vec![Elem::ZERO, Elem::ONE]);
            } else {
                assert_eq!(xs, vec![w, f.mul(w, w)]);
            }
        }
    }

    #[test]
    fn origin_always_on_curve() {
        for q0 in [2, 3, 4, 5] {
            let g = enumerate_points(q0).unwrap();
            assert!(g.points().contains(&AffinePoint { x: Elem::ZERO, y: Elem::ZERO }));
        }
    }

    #[test]
    fn unsupported_q0() {
        assert!(enumerate_points(6).is_err());
        assert!(enumerate_points(257).is_err());
    }

    #[test]
    fn proj_y_parameters() {
        let c = code_proj_y(3, 2).unwrap();
        assert_eq!((c.len(), c.dimension(), c.localities(), c.designed_distance()), (27, 6, vec![2], 17));
        let c = code_proj_y(3, 0).unwrap();
        assert_eq!((c.dimension(), c.designed_distance()), (2, 23));
        let c = code_proj_y(4, 3).unwrap();
        assert_eq!((c.len(), c.dimension(), c.designed_distance()), (64, 12, 42));
        assert!(code_proj_y(3, 7).is_ok());
        assert!(matches!(code_proj_y(3, 8), Err(Error::DesignedDistanceTooSmall(-1))));
    }

    #[test]
    fn proj_x_parameters() {
        let c = code_proj_x(3, 2).unwrap();
        assert_eq!((c.len(), c.dimension(), c.localities()), (24, 9, vec![3]));
        let c = code_proj_x(3, 1).unwrap();
        assert_eq!((c.dimension(), c.designed_distance()), (6, 14));
        let c = code_proj_x(2, 0).unwrap();
        assert_eq!((c.len(), c.dimension(), c.designed_distance()), (6, 2, 4));
    }

    #[test]
    fn proj_x_basis_is_the_listed_monomials() {
        // rows are y^i x^j; compare against direct evaluation of the nine monomials
        let c = code_proj_x(3, 2).unwrap();
        let f = c.field();
        for (row_idx, row) in c.generator().iter().enumerate() {
            let (i, j) = (row_idx / 3, row_idx % 3);
            for (col, l) in c.labels().iter().enumerate() {
                let v = f.mul(f.pow(l[0], j as u64), f.pow(l[1], i as u64));
                assert_eq!(row[col], v);
            }
        }
    }

    #[test]
    fn lrc2_parameters() {
        let c = code_lrc2(3).unwrap();
        assert_eq!((c.len(), c.dimension(), c.localities(), c.designed_distance()), (24, 6, vec![2, 3], 12));
        let c = code_lrc2(4).unwrap();
        assert_eq!((c.len(), c.dimension(), c.localities(), c.designed_distance()), (60, 12, vec![3, 4], 35));
        assert!(code_lrc2(2).is_err());
    }

    #[test]
    fn singleton_gaps() {
        let c = code_proj_y(3, 2).unwrap();
        assert_eq!(c.designed_distance() + 9, 26);
        assert_eq!(singleton_gap(&c).unwrap(), 3);
        assert_eq!(singleton_gap(&code_proj_x(3, 1).unwrap()).unwrap(), 4);
        for q0 in [2u32, 3, 4, 5] {
            let q0i = q0 as i64;
            for t in 0..3 {
                if let Ok(c) = code_proj_y(q0, t) {
                    assert_eq!(singleton_gap(&c).unwrap(), q0i * (q0i - 2));
                }
            }
        }
    }

    #[test]
    fn singleton_gap_needs_r_dividing_k() {
        let f = hermitian_field(3).unwrap();
        let part = Partition::new(3, vec![vec![0, 1, 2]], vec![Elem::ZERO, Elem::ONE, f.primitive()]).unwrap();
        let code = LinearCode::new(
            f,
            vec![vec![Elem::ONE; 3]],
            RecoveringStructure::single(part),
            Family::Custom,
            3,
            vec![],
        )
        .unwrap();
        assert!(matches!(singleton_gap(&code), Err(Error::Divisibility(_))));
    }
}
