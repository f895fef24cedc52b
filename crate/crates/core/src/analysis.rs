//! Verification tools: exact minimum distance by exhaustive enumeration,
//! dual-codeword locality certificates, erasure round trips and rank.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::matrix::{self, Matrix};
use crate::galois::{Elem, FiniteField, UniPoly};
use crate::lrc::{encode, local_recover, LinearCode};

/// Default cap on the number of enumerated messages.
pub const DEFAULT_CAP: u128 = 1_000_000_000;

pub fn rank(field: &FiniteField, m: &[Vec<Elem>]) -> usize {
    matrix::rank(field, m)
}

/// Reduced row echelon form of the generator, i.e. a systematic-style basis.
pub fn row_reduce(code: &LinearCode) -> Matrix {
    matrix::row_reduce(code.field(), code.generator()).0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub workers: usize,
    /// Enumerate one message per scalar class (first nonzero symbol fixed to 1).
    pub scalar_reduction: bool,
    pub cap: u128,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { workers: 1, scalar_reduction: true, cap: DEFAULT_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceReport {
    pub n: usize,
    pub k: usize,
    pub min_distance: usize,
    /// `A_w` for `w = 0..=n`, summing to `q^k`.
    pub weight_distribution: Vec<u64>,
    pub codewords_enumerated: u64,
    pub scalar_reduction: bool,
    pub workers: usize,
    pub wall_time_secs: f64,
}

/// Exact minimum distance over all nonzero messages.
///
/// Messages are walked as an odometer in canonical field order, split into
/// contiguous chunks that are reduced in parallel. The result does not depend
/// on the worker count.
pub fn min_distance_exhaustive(code: &LinearCode, opts: EnumerationOptions) -> Result<DistanceReport> {
    let start = Instant::now();
    let q = code.field().order() as u128;
    let k = code.dimension();
    let n = code.len();
    let count = message_count(q, k, opts.scalar_reduction);
    if count > opts.cap {
        return Err(Error::CapExceeded { count, cap: opts.cap });
    }
    let hist = histogram(code, opts)?;
    let min_distance = hist.iter().position(|&c| c > 0).unwrap_or(0);
    let scale = if opts.scalar_reduction { q as u64 - 1 } else { 1 };
    let mut weight_distribution: Vec<u64> = hist.iter().map(|&c| c * scale).collect();
    weight_distribution[0] += 1;
    Ok(DistanceReport {
        n,
        k,
        min_distance,
        weight_distribution,
        codewords_enumerated: count as u64,
        scalar_reduction: opts.scalar_reduction,
        workers: opts.workers.max(1),
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

pub fn weight_distribution(code: &LinearCode, opts: EnumerationOptions) -> Result<Vec<u64>> {
    min_distance_exhaustive(code, opts).map(|r| r.weight_distribution)
}

fn message_count(q: u128, k: usize, reduced: bool) -> u128 {
    let total = (0..k).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX);
    if reduced {
        (total - 1) / (q - 1)
    } else {
        total - 1
    }
}

struct Chunk {
    digits: Vec<usize>,
    free_from: usize,
}

fn chunks(q: usize, k: usize, reduced: bool, target: usize) -> Vec<Chunk> {
    let leads: Vec<usize> = if reduced { vec![1] } else { (1..q).collect() };
    let mut out = Vec::new();
    for lead_pos in 0..k {
        let free = k - 1 - lead_pos;
        let mut fixed = 0;
        let mut per = leads.len();
        while fixed < free && per < target {
            fixed += 1;
            per *= q;
        }
        for &lead in &leads {
            for combo in 0..q.pow(fixed as u32) {
                let mut digits = vec![0; k];
                digits[lead_pos] = lead;
                let mut c = combo;
                for d in (lead_pos + 1..=lead_pos + fixed).rev() {
                    digits[d] = c % q;
                    c /= q;
                }
                out.push(Chunk { digits, free_from: lead_pos + 1 + fixed });
            }
        }
    }
    out
}

/// Per-row additive increments for stepping one digit through the canonical order.
struct Steps {
    // steps[j][c]: (e_{c+1} - e_c) * G_j, with c = q-1 wrapping back to 0
    steps: Vec<Vec<Vec<u16>>>,
    // scaled[j][c]: e_c * G_j
    scaled: Vec<Vec<Vec<u16>>>,
}

impl Steps {
    fn new(code: &LinearCode) -> Steps {
        let f = code.field();
        let q = f.order() as usize;
        let e = |c: usize| Elem::from_index(c % q);
        let row_times = |c: Elem, row: &[Elem]| -> Vec<u16> {
            row.iter().map(|&g| f.mul(c, g).index() as u16).collect()
        };
        let steps = code
            .generator()
            .iter()
            .map(|row| (0..q).map(|c| row_times(f.sub(e(c + 1), e(c)), row)).collect())
            .collect();
        let scaled = code
            .generator()
            .iter()
            .map(|row| (0..q).map(|c| row_times(e(c), row)).collect())
            .collect();
        Steps { steps, scaled }
    }
}

fn histogram(code: &LinearCode, opts: EnumerationOptions) -> Result<Vec<u64>> {
    let f = code.field();
    let q = f.order() as usize;
    let k = code.dimension();
    let n = code.len();
    let workers = opts.workers.max(1);
    let steps = Steps::new(code);
    let plan = chunks(q, k, opts.scalar_reduction, workers * 16);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;

    let reduce = |mut a: Vec<u64>, b: Vec<u64>| {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    };
    let hist = if q <= 256 {
        let table: Vec<u16> = (0..q * q)
            .map(|i| f.add(Elem::from_index(i / q), Elem::from_index(i % q)).index() as u16)
            .collect();
        let add = |x: u16, y: u16| table[x as usize * q + y as usize];
        pool.install(|| {
            plan.par_iter()
                .map(|c| run_chunk(c, &steps, q, n, &add))
                .reduce(|| vec![0; n + 1], reduce)
        })
    } else {
        let add = |x: u16, y: u16| f.add(Elem::from_index(x as usize), Elem::from_index(y as usize)).index() as u16;
        pool.install(|| {
            plan.par_iter()
                .map(|c| run_chunk(c, &steps, q, n, &add))
                .reduce(|| vec![0; n + 1], reduce)
        })
    };
    Ok(hist)
}

fn run_chunk<A: Fn(u16, u16) -> u16>(chunk: &Chunk, steps: &Steps, q: usize, n: usize, add: &A) -> Vec<u64> {
    let k = chunk.digits.len();
    let mut hist = vec![0u64; n + 1];
    let mut word = vec![0u16; n];
    for (j, &d) in chunk.digits.iter().enumerate() {
        if d != 0 {
            for (w, &s) in word.iter_mut().zip(&steps.scaled[j][d]) {
                *w = add(*w, s);
            }
        }
    }
    let mut weight = word.iter().filter(|&&w| w != 0).count();
    let mut digits = chunk.digits.clone();
    loop {
        hist[weight] += 1;
        let mut j = k;
        loop {
            if j == chunk.free_from {
                return hist;
            }
            j -= 1;
            let d = digits[j];
            for (w, &s) in word.iter_mut().zip(&steps.steps[j][d]) {
                if s != 0 {
                    let before = *w != 0;
                    *w = add(*w, s);
                    let after = *w != 0;
                    weight = weight + after as usize - before as usize;
                }
            }
            if d + 1 < q {
                digits[j] = d + 1;
                break;
            }
            digits[j] = 0;
        }
    }
}

/// Calls `visit` on every codeword, including zero, in odometer order.
pub fn for_each_codeword<F: FnMut(&[Elem])>(code: &LinearCode, cap: u128, mut visit: F) -> Result<()> {
    let f = code.field();
    let q = f.order() as usize;
    let k = code.dimension();
    let count = message_count(q as u128, k, false) + 1;
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let steps = Steps::new(code);
    let mut word = vec![Elem::ZERO; code.len()];
    let mut digits = vec![0usize; k];
    loop {
        visit(&word);
        let mut j = k;
        loop {
            if j == 0 {
                return Ok(());
            }
            j -= 1;
            let d = digits[j];
            for (w, &s) in word.iter_mut().zip(&steps.steps[j][d]) {
                *w = f.add(*w, Elem::from_index(s as usize));
            }
            if d + 1 < q {
                digits[j] = d + 1;
                break;
            }
            digits[j] = 0;
        }
    }
}

/// A dual codeword supported on `I_i ∪ {i}` that is nonzero at `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualCertificate {
    pub coordinate: usize,
    pub support: Vec<usize>,
    pub values: Vec<Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityFailure {
    pub coordinate: usize,
}

/// `I_i` for every coordinate under partition `which` (0-based).
pub fn recovering_sets(code: &LinearCode, which: usize) -> Result<Vec<Vec<usize>>> {
    let part = code.structure().partition(which)?;
    Ok((0..code.len()).map(|i| part.recovering_set(i)).collect())
}

/// For each coordinate `i`, finds `h` with `G h^T = 0`, supported on
/// `recovering_sets[i] ∪ {i}` and with `h_i != 0`. Such a vector shows that
/// `c_i` is a linear function of `c` restricted to `I_i` for every codeword.
pub fn verify_locality(
    code: &LinearCode,
    recovering_sets: &[Vec<usize>],
) -> std::result::Result<Vec<DualCertificate>, LocalityFailure> {
    let f = code.field();
    let g = code.generator();
    let mut certs = Vec::with_capacity(code.len());
    for (i, set) in recovering_sets.iter().enumerate() {
        // i goes last, so it is a free column exactly when it depends on the others
        let mut support: Vec<usize> = set.iter().copied().filter(|&c| c != i).collect();
        support.push(i);
        let sub: Matrix = g.iter().map(|row| support.iter().map(|&c| row[c]).collect()).collect();
        let last = support.len() - 1;
        let cert = matrix::null_space(f, &sub, support.len())
            .into_iter()
            .find(|h| !h[last].is_zero())
            .map(|values| DualCertificate { coordinate: i, support, values })
            .filter(|c| certificate_is_dual(code, c))
            .ok_or(LocalityFailure { coordinate: i })?;
        certs.push(cert);
    }
    Ok(certs)
}

pub fn certificate_is_dual(code: &LinearCode, cert: &DualCertificate) -> bool {
    let f = code.field();
    !cert.values[cert.support.iter().position(|&c| c == cert.coordinate).unwrap()].is_zero()
        && code.generator().iter().all(|row| {
            f.sum(cert.support.iter().zip(&cert.values).map(|(&c, &v)| f.mul(row[c], v))).is_zero()
        })
}

/// Checks the locality definition directly: no codeword vanishes on `I_i`
/// while being nonzero at `i` (for linear codes this is the same as the
/// restrictions of `{c : c_i = a}` to `I_i` being disjoint across `a`).
/// Returns the first failing coordinate.
pub fn verify_locality_exhaustive(
    code: &LinearCode,
    recovering_sets: &[Vec<usize>],
    cap: u128,
) -> Result<Option<usize>> {
    let mut failed: Option<usize> = None;
    for_each_codeword(code, cap, |w| {
        for (i, set) in recovering_sets.iter().enumerate() {
            if !w[i].is_zero() && set.iter().all(|&c| w[c].is_zero()) {
                failed = Some(failed.map_or(i, |f| f.min(i)));
            }
        }
    })?;
    Ok(failed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RoundtripFailure {
    pub trial: usize,
    pub position: usize,
    pub partition: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub trials: usize,
    pub checks: usize,
    pub passes: usize,
    pub failures: Vec<RoundtripFailure>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.passes == self.checks
    }
}

pub fn random_message<R: Rng>(code: &LinearCode, rng: &mut R) -> Vec<Elem> {
    let q = code.field().order() as usize;
    (0..code.dimension()).map(|_| Elem::from_index(rng.gen_range(0..q))).collect()
}

/// Encode a random message, erase one random coordinate, repair it through
/// every partition and compare. Deterministic in `seed`.
pub fn erasure_roundtrip(code: &LinearCode, trials: usize, seed: u64) -> Result<RoundtripReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RoundtripReport { trials, checks: 0, passes: 0, failures: Vec::new() };
    for trial in 0..trials {
        let msg = random_message(code, &mut rng);
        let word = encode(code, &msg)?;
        let pos = rng.gen_range(0..code.len());
        let mut erased: Vec<Option<Elem>> = word.iter().copied().map(Some).collect();
        erased[pos] = None;
        for which in 0..code.structure().partitions().len() {
            report.checks += 1;
            if local_recover(code, &erased, pos, which)? == word[pos] {
                report.passes += 1;
            } else {
                report.failures.push(RoundtripFailure { trial, position: pos, partition: which });
            }
        }
    }
    Ok(report)
}

/// Number of fibers (of partition `which`) on which `word` is not the
/// evaluation of a polynomial of degree below `r` in the fiber coordinate.
pub fn fiber_residual(code: &LinearCode, word: &[Elem], which: usize) -> Result<usize> {
    if word.len() != code.len() {
        return Err(Error::LengthMismatch { expected: code.len(), got: word.len() });
    }
    let part = code.structure().partition(which)?;
    let r = part.locality();
    let mut bad = 0;
    for fiber in part.fibers() {
        let nodes: Vec<(Elem, Elem)> = fiber[..r].iter().map(|&c| (part.xvals()[c], word[c])).collect();
        let poly = UniPoly::interpolate(code.field().clone(), &nodes)?;
        for &c in &fiber[r..] {
            if poly.eval(part.xvals()[c])? != word[c] {
                bad += 1;
                break;
            }
        }
    }
    Ok(bad)
}
