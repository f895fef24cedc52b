//! Rate/distance bounds for LRC codes.
//!
//! Real-valued routines are generic over [`Float`]; the crate root exposes
//! `f64` aliases.

use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};

fn c<F: Float>(x: f64) -> F {
    F::from(x).expect("constant representable in F")
}

/// Singleton-type bound `n - k - ceil(k/r) + 2`.
pub fn singleton_lrc(n: u64, k: u64, r: u64) -> Result<u64> {
    if !(1 <= r && r <= k && k <= n) {
        return Err(Error::InvalidParameter(format!("need 1 <= r <= k <= n, got n={n}, k={k}, r={r}")));
    }
    Ok(n + 2 - k - k.div_ceil(r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundFamily {
    /// GV-type achievability bound for r-LRC codes.
    Gv,
    /// Tower codes with `r = sqrt(q) - 1`.
    Ab1,
    /// Tower codes with `r = sqrt(q)`.
    Ab2,
    /// AG codes without locality.
    Tvz,
}

impl BoundFamily {
    pub fn parse(s: &str) -> Option<BoundFamily> {
        match s {
            "gv" => Some(BoundFamily::Gv),
            "ab1" => Some(BoundFamily::Ab1),
            "ab2" => Some(BoundFamily::Ab2),
            "tvz" => Some(BoundFamily::Tvz),
            _ => None,
        }
    }
}

/// A `(delta, R)` pair. `rate` is clamped to `[0, 1]`; `raw` is the formula value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatePoint<F> {
    pub delta: F,
    pub rate: F,
    pub raw: F,
    pub family: BoundFamily,
}

impl<F: Float> RatePoint<F> {
    fn new(delta: F, raw: F, family: BoundFamily) -> Self {
        RatePoint { delta, rate: raw.max(F::zero()).min(F::one()), raw, family }
    }
}

/// Search grid for the inner minimization over `s` in the GV-type bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SGrid<F> {
    /// Number of geometrically spaced points on `[lo, 1]`.
    pub points: usize,
    pub lo: F,
    /// Final bracket width of the golden-section refinement.
    pub tol: F,
}

impl<F: Float> Default for SGrid<F> {
    fn default() -> Self {
        SGrid { points: 1000, lo: c(1e-6), tol: c(1e-10) }
    }
}

/// `ln b(s)` with `b(s) = ((1 + (q-1)s)^(r+1) + (q-1)(1-s)^(r+1)) / q`,
/// evaluated as a log-sum-exp so that large `r` does not overflow.
pub fn ln_b<F: Float>(q: F, r: u32, s: F) -> F {
    let e = F::from(r + 1).unwrap();
    let q1 = q - F::one();
    let t1 = e * (q1 * s).ln_1p();
    let t2 = if s < F::one() { q1.ln() + e * (-s).ln_1p() } else { F::neg_infinity() };
    let m = t1.max(t2);
    m + ((t1 - m).exp() + (t2 - m).exp()).ln() - q.ln()
}

/// The minimized quantity: `log_q b(s) / (r+1) - delta log_q s`.
pub fn gv_objective<F: Float>(q: F, r: u32, delta: F, s: F) -> F {
    let lnq = q.ln();
    ln_b(q, r, s) / (lnq * F::from(r + 1).unwrap()) - delta * s.ln() / lnq
}

/// GV-type rate `r/(r+1) - min_{0<s<=1} [log_q b(s)/(r+1) - delta log_q s]`.
///
/// The minimum is located on a geometric grid and refined by golden-section
/// search on the bracketing interval. At `delta = 0` the infimum is the limit
/// `s -> 0`, where the objective tends to 0.
pub fn gv_lrc<F: Float>(q: F, r: u32, delta: F, grid: &SGrid<F>) -> Result<RatePoint<F>> {
    if !(delta >= F::zero() && delta < F::one()) {
        return Err(Error::InvalidParameter("delta must lie in [0, 1)".into()));
    }
    if q < c(2.0) || r == 0 || grid.points < 3 {
        return Err(Error::InvalidParameter("need q >= 2, r >= 1 and at least 3 grid points".into()));
    }
    let rr = F::from(r).unwrap();
    let base = rr / (rr + F::one());
    if delta == F::zero() {
        return Ok(RatePoint::new(delta, base, BoundFamily::Gv));
    }
    let obj = |s: F| gv_objective(q, r, delta, s);
    let last = grid.points - 1;
    let ratio = (F::one() / grid.lo).ln() / F::from(last).unwrap();
    let s_at = |i: usize| if i == last { F::one() } else { grid.lo * (ratio * F::from(i).unwrap()).exp() };
    let (best, _) = (0..grid.points)
        .map(|i| (i, obj(s_at(i))))
        .fold((0, F::infinity()), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
    let (mut a, mut b) = (s_at(best.saturating_sub(1)), s_at((best + 1).min(last)));
    let min = golden_section(&obj, &mut a, &mut b, grid.tol).min(obj(s_at(best)));
    Ok(RatePoint::new(delta, base - min, BoundFamily::Gv))
}

fn golden_section<F: Float, O: Fn(F) -> F>(obj: &O, a: &mut F, b: &mut F, tol: F) -> F {
    let inv_phi = c::<F>((5f64.sqrt() - 1.0) / 2.0);
    let mut x1 = *b - inv_phi * (*b - *a);
    let mut x2 = *a + inv_phi * (*b - *a);
    let (mut f1, mut f2) = (obj(x1), obj(x2));
    while *b - *a > tol {
        if f1 <= f2 {
            *b = x2;
            x2 = x1;
            f2 = f1;
            x1 = *b - inv_phi * (*b - *a);
            f1 = obj(x1);
        } else {
            *a = x1;
            x1 = x2;
            f1 = f2;
            x2 = *a + inv_phi * (*b - *a);
            f2 = obj(x2);
        }
    }
    f1.min(f2)
}

/// Locality paired with an AG family over GF(q0^2).
pub fn ag_locality(q0: u32, family: BoundFamily) -> Option<u32> {
    match family {
        BoundFamily::Ab1 => Some(q0 - 1),
        BoundFamily::Ab2 => Some(q0),
        BoundFamily::Gv | BoundFamily::Tvz => None,
    }
}

/// Asymptotic rates of codes on optimal towers over GF(q0^2):
/// `ab1 = r/(r+1) (1 - delta - 3/(q0+1))` with `r = q0 - 1`,
/// `ab2 = r/(r+1) (1 - delta - 2 q0/(q0^2-1))` with `r = q0`,
/// `tvz = 1 - delta - 1/(q0-1)`.
pub fn ag_rate<F: Float>(q0: u32, delta: F, family: BoundFamily) -> Result<RatePoint<F>> {
    if crate::galois::prime_power(q0).is_none() {
        return Err(Error::InvalidParameter(format!("q0 = {q0} is not a prime power")));
    }
    if !(delta >= F::zero() && delta <= F::one()) {
        return Err(Error::InvalidParameter("delta must lie in [0, 1]".into()));
    }
    let s = F::from(q0).unwrap();
    let one = F::one();
    let raw = match family {
        BoundFamily::Ab1 => {
            let r = s - one;
            r / (r + one) * (one - delta - c::<F>(3.0) / (s + one))
        }
        BoundFamily::Ab2 => s / (s + one) * (one - delta - c::<F>(2.0) * s / (s * s - one)),
        BoundFamily::Tvz => one - delta - one / (s - one),
        BoundFamily::Gv => {
            return Err(Error::InvalidParameter("gv is not an AG family; use gv_lrc".into()))
        }
    };
    Ok(RatePoint::new(delta, raw, family))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Crossover<F> {
    pub q0: u32,
    pub r: u32,
    pub family: BoundFamily,
    /// Maximal interval where the AG rate exceeds the GV-type rate; `None` if empty.
    pub interval: Option<(F, F)>,
}

/// Scans `delta` with step `resolution`, takes the longest run where the
/// AG rate beats the GV-type rate at the same locality, and bisects both
/// endpoints of that run.
pub fn crossover_interval<F: Float>(
    q0: u32,
    family: BoundFamily,
    resolution: F,
    grid: &SGrid<F>,
) -> Result<Crossover<F>> {
    if !(resolution > F::zero() && resolution <= c(1e-3)) {
        return Err(Error::InvalidParameter("resolution must lie in (0, 1e-3]".into()));
    }
    let r = ag_locality(q0, family)
        .ok_or_else(|| Error::InvalidParameter("crossover needs ab1 or ab2".into()))?;
    crossover_with_locality(q0, family, r, resolution, grid)
}

/// [`crossover_interval`] against the GV-type curve at an explicit locality.
pub fn crossover_with_locality<F: Float>(
    q0: u32,
    family: BoundFamily,
    gv_r: u32,
    resolution: F,
    grid: &SGrid<F>,
) -> Result<Crossover<F>> {
    let q = F::from(q0).unwrap().powi(2);
    let gap = |d: F| -> Result<F> {
        Ok(ag_rate(q0, d, family)?.rate - gv_lrc(q, gv_r, d, grid)?.rate)
    };
    let steps = (F::one() / resolution).floor().to_usize().unwrap();
    let deltas: Vec<F> = (0..steps).map(|i| F::from(i).unwrap() * resolution).collect();
    let above: Vec<bool> = deltas.iter().map(|&d| gap(d).map(|g| g > F::zero())).collect::<Result<_>>()?;

    let mut best: Option<(usize, usize)> = None;
    let mut i = 0;
    while i < above.len() {
        if above[i] {
            let start = i;
            while i + 1 < above.len() && above[i + 1] {
                i += 1;
            }
            if best.map_or(true, |(s, e)| i - start > e - s) {
                best = Some((start, i));
            }
        }
        i += 1;
    }
    let tol = resolution * c(1e-3);
    let bisect = |mut inside: F, mut outside: F| -> Result<F> {
        while (inside - outside).abs() > tol {
            let mid = (inside + outside) / c(2.0);
            if gap(mid)? > F::zero() {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        Ok((inside + outside) / c(2.0))
    };
    let interval = match best {
        None => None,
        Some((s, e)) => {
            let lo = if s == 0 { deltas[0] } else { bisect(deltas[s], deltas[s - 1])? };
            let hi = if e + 1 == deltas.len() { deltas[e] } else { bisect(deltas[e], deltas[e + 1])? };
            Some((lo, hi))
        }
    };
    Ok(Crossover { q0, r: gv_r, family, interval })
}

/// `(delta, R)` samples of one bound on `[start, end]` with the given step.
pub fn sweep<F: Float>(
    family: BoundFamily,
    q: u32,
    r: u32,
    start: F,
    end: F,
    step: F,
    grid: &SGrid<F>,
) -> Result<Vec<RatePoint<F>>> {
    if !(step > F::zero()) || end < start {
        return Err(Error::InvalidParameter("delta grid needs step > 0 and start <= end".into()));
    }
    let count = ((end - start) / step + c(1e-9)).floor().to_usize().unwrap() + 1;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let d = start + step * F::from(i).unwrap();
        out.push(match family {
            BoundFamily::Gv => {
                if d >= F::one() {
                    continue;
                }
                gv_lrc(F::from(q).unwrap(), r, d, grid)?
            }
            _ => {
                let q0 = (q as f64).sqrt().round() as u32;
                if q0 * q0 != q {
                    return Err(Error::NotASquare(q));
                }
                ag_rate(q0, d, family)?
            }
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> SGrid<f64> {
        SGrid::default()
    }

    #[test]
    fn singleton_examples() {
        assert_eq!(singleton_lrc(9, 4, 2).unwrap(), 5);
        assert_eq!(singleton_lrc(27, 6, 2).unwrap(), 20);
        for n in 1..20 {
            for k in 1..=n {
                assert_eq!(singleton_lrc(n, k, k).unwrap(), n - k + 1);
            }
        }
        assert!(singleton_lrc(5, 3, 4).is_err());
        assert!(singleton_lrc(5, 6, 2).is_err());
        assert!(singleton_lrc(5, 3, 0).is_err());
    }

    #[test]
    fn gv_at_zero() {
        for (q, r) in [(529.0, 23), (9.0, 2), (13.0, 2)] {
            let p = gv_lrc(q, r, 0.0, &grid()).unwrap();
            assert!((p.rate - r as f64 / (r as f64 + 1.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn gv_objective_vanishes_as_s_goes_to_zero() {
        let v = gv_objective(529.0, 23, 0.0, 1e-9);
        assert!(v.abs() < 1e-12);
        assert!(ln_b(529.0, 23, 0.0).abs() < 1e-15);
    }

    #[test]
    fn ln_b_matches_direct_formula() {
        for &(q, r, s) in &[(9.0f64, 2u32, 0.3f64), (13.0, 2, 0.7), (4.0, 3, 1.0), (529.0, 23, 0.01)] {
            let direct = (((1.0 + (q - 1.0) * s).powi(r as i32 + 1) + (q - 1.0) * (1.0 - s).powi(r as i32 + 1)) / q).ln();
            assert!((ln_b(q, r, s) - direct).abs() < 1e-10, "q={q} r={r} s={s}");
        }
    }

    #[test]
    fn gv_minimum_matches_dense_scan() {
        // independent dense linear scan of the objective
        for &(q, r, d) in &[(529.0, 23u32, 0.413), (529.0, 23, 0.55), (9.0, 2, 0.2), (13.0, 2, 0.4)] {
            let dense = (1..=200_000)
                .map(|i| gv_objective(q, r, d, i as f64 / 200_000.0))
                .fold(f64::INFINITY, f64::min);
            let got = gv_lrc(q, r, d, &grid()).unwrap().raw;
            let expect = r as f64 / (r as f64 + 1.0) - dense;
            assert!(got >= expect - 1e-12 && got - expect < 1e-6, "{q} {r} {d}: {got} vs {expect}");
        }
    }

    #[test]
    fn gv_is_stable_under_grid_refinement() {
        let fine = SGrid { points: 10_000, ..grid() };
        for d in [0.2, 0.413, 0.55, 0.711] {
            let a = gv_lrc(529.0, 23, d, &grid()).unwrap().rate;
            let b = gv_lrc(529.0, 23, d, &fine).unwrap().rate;
            assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn gv_is_non_increasing() {
        let mut prev = f64::INFINITY;
        for i in 0..100 {
            let r = gv_lrc(529.0, 23, i as f64 / 100.0, &grid()).unwrap().rate;
            assert!(r <= prev + 1e-12);
            prev = r;
        }
        assert!(gv_lrc(529.0, 23, 1.0, &grid()).is_err());
    }

    #[test]
    fn ag_examples() {
        let z = ag_rate(23, 1.0 - 46.0 / 528.0, BoundFamily::Ab2).unwrap();
        assert!(z.rate.abs() < 1e-12);
        let p = ag_rate(3, 0.0, BoundFamily::Ab1).unwrap();
        assert!((p.rate - 1.0 / 6.0).abs() < 1e-12);
        let p = ag_rate(23, 0.5, BoundFamily::Ab2).unwrap();
        assert!((p.rate - 23.0 / 24.0 * (0.5 - 46.0 / 528.0)).abs() < 1e-12);
        let p = ag_rate(8, 0.9, BoundFamily::Tvz).unwrap();
        assert_eq!(p.rate, 0.0);
        assert!(p.raw < 0.0);
        assert!(ag_rate(6, 0.1, BoundFamily::Ab2).is_err());
    }

    #[test]
    fn ag_is_affine_in_delta() {
        for fam in [BoundFamily::Ab1, BoundFamily::Ab2, BoundFamily::Tvz] {
            let v: Vec<f64> = (0..5).map(|i| ag_rate(23, 0.1 * i as f64, fam).unwrap().raw).collect();
            for w in v.windows(3) {
                assert!((w[0] - 2.0 * w[1] + w[2]).abs() < 1e-12);
                assert!(w[1] < w[0]);
            }
        }
    }

    #[test]
    fn gv_crosses_ab2_inside_the_interval() {
        let gv = gv_lrc(529.0, 23, 0.413, &grid()).unwrap().rate;
        let ab = ag_rate(23, 0.413, BoundFamily::Ab2).unwrap().rate;
        assert!((gv - ab).abs() < 1e-3);
        let gv = gv_lrc(529.0, 23, 0.55, &grid()).unwrap().rate;
        let ab = ag_rate(23, 0.55, BoundFamily::Ab2).unwrap().rate;
        assert!(gv < ab);
    }

    #[test]
    fn crossover_q0_23() {
        let c = crossover_interval(23, BoundFamily::Ab2, 1e-3, &grid()).unwrap();
        let (lo, hi) = c.interval.unwrap();
        assert!(lo <= 0.42 && hi >= 0.70 && lo >= 0.40 && hi <= 0.72);
        assert!((lo - 0.413).abs() <= 0.005 && (hi - 0.711).abs() <= 0.005);
        for d in [lo, hi] {
            let g = gv_lrc(529.0, 23, d, &grid()).unwrap().rate;
            assert!((ag_rate(23, d, BoundFamily::Ab2).unwrap().rate - g).abs() < 1e-3);
        }
    }

    #[test]
    fn small_fields_do_not_beat_gv() {
        let c = crossover_interval(2, BoundFamily::Ab2, 1e-3, &grid()).unwrap();
        assert!(c.interval.is_none());
    }

    #[test]
    fn crossover_rejects_coarse_resolution() {
        assert!(crossover_interval(23, BoundFamily::Ab2, 0.01, &grid()).is_err());
        assert!(crossover_interval(23, BoundFamily::Tvz, 1e-3, &grid()).is_err());
    }

    #[test]
    fn works_in_f32() {
        let p: RatePoint<f32> = gv_lrc(9.0f32, 2, 0.0, &SGrid::default()).unwrap();
        assert!((p.rate - 2.0 / 3.0).abs() < 1e-6);
        let p: RatePoint<f32> = ag_rate(3, 0.0f32, BoundFamily::Ab1).unwrap();
        assert!((p.rate - 1.0 / 6.0).abs() < 1e-6);
    }

    #[test]
    fn sweep_shapes() {
        let pts = sweep(BoundFamily::Gv, 529, 23, 0.0, 1.0, 0.25, &grid()).unwrap();
        assert_eq!(pts.len(), 4);
        let pts = sweep(BoundFamily::Ab2, 529, 23, 0.0, 1.0, 0.25, &grid()).unwrap();
        assert_eq!(pts.len(), 5);
        assert!(sweep(BoundFamily::Ab2, 528, 23, 0.0, 1.0, 0.25, &grid()).is_err());
    }
}
