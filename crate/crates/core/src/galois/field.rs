use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order supported by the table representation.
pub const MAX_ORDER: u32 = 1 << 16;

/// Default moduli, coefficients low to high. Everything not listed here falls
/// back to the lexicographically first monic irreducible of the right degree.
///
/// GF(9) uses t^2 - t - 1 so that the class of t satisfies a^2 = a + 1.
pub const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (5, 2, &[2, 1, 1]),
    (7, 2, &[3, 1, 1]),
];

/// A field element, stored by discrete logarithm.
///
/// `Elem(0)` is zero and `Elem(k + 1)` is `primitive^k`, so the derived
/// ordering is the canonical element order `0, 1, a, a^2, ..., a^(q-2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Position in the canonical order, in `0..q`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Elem {
        Elem(index as u32)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete log with respect to the field's primitive element.
    pub fn log(self) -> Option<u32> {
        self.0.checked_sub(1)
    }

    /// Log-index wire encoding: `-1` for zero, otherwise the discrete log.
    pub fn to_wire(self) -> i64 {
        self.0 as i64 - 1
    }

    pub(crate) fn from_raw_log(log: u32) -> Elem {
        Elem(log + 1)
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(0) => write!(f, "1"),
            Some(1) => write!(f, "a"),
            Some(k) => write!(f, "a^{k}"),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Serializable description of a field: enough to rebuild it bit-exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub a: u32,
    /// Monic modulus over GF(p), coefficients low to high.
    pub modulus: Vec<u32>,
    /// Primitive element as a base-p coefficient integer.
    pub primitive: u32,
}

/// GF(p^a) with log/antilog and Zech tables.
///
/// Immutable once built; share it behind an `Arc`.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    a: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    // log -> base-p coefficient integer, length q - 1
    exp: Vec<u32>,
    // coefficient integer -> log; entry 0 unused
    log: Vec<u32>,
    // zech[k] = 1 + primitive^k
    zech: Vec<Elem>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.a == other.a
            && self.modulus == other.modulus
            && self.primitive == other.primitive
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("a", &self.a)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

impl FiniteField {
    /// Builds GF(p^a). Without an explicit modulus the default table is used.
    ///
    /// The primitive element is the class of `t` when that has full order,
    /// otherwise the smallest coefficient integer of full order.
    pub fn new(p: u32, a: u32, modulus: Option<&[u32]>) -> Result<FiniteField> {
        Self::with_primitive(p, a, modulus, None)
    }

    pub fn prime(p: u32) -> Result<FiniteField> {
        Self::new(p, 1, None)
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<FiniteField> {
        Self::with_primitive(desc.p, desc.a, Some(&desc.modulus), Some(desc.primitive))
    }

    pub fn with_primitive(
        p: u32,
        a: u32,
        modulus: Option<&[u32]>,
        primitive: Option<u32>,
    ) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(a)
            .filter(|&q| q <= MAX_ORDER as u64)
            .ok_or(Error::FieldTooLarge { p, a })? as u32;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != a as usize + 1 || m[a as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic degree-{a} polynomial over GF({p}), got {m:?}"
                    )));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(m.to_vec()));
                }
                m.to_vec()
            }
            None => default_modulus(p, a),
        };

        let ring = PolyRing { p, modulus: &modulus };
        let q1 = q as u64 - 1;
        let primes = prime_factors(q1);
        let has_full_order = |g: u32| {
            g != 0 && ring.pow(g, q1) == 1 && primes.iter().all(|&l| ring.pow(g, q1 / l) != 1)
        };

        let primitive = match primitive {
            Some(g) => {
                if g >= q || !has_full_order(g) {
                    return Err(Error::NotPrimitive(g));
                }
                g
            }
            None => {
                let t = ring.reduce_t();
                if has_full_order(t) {
                    t
                } else {
                    (1..q).find(|&g| has_full_order(g)).expect("GF(q)* is cyclic")
                }
            }
        };

        let mut exp = Vec::with_capacity(q1 as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = 1u32;
        for k in 0..q1 as u32 {
            if log[cur as usize] != u32::MAX {
                return Err(Error::NotPrimitive(primitive));
            }
            exp.push(cur);
            log[cur as usize] = k;
            cur = ring.mul(cur, primitive);
        }

        let zech = exp
            .iter()
            .map(|&v| {
                let c0 = v % p;
                let w = v - c0 + (c0 + 1) % p;
                if w == 0 {
                    Elem::ZERO
                } else {
                    Elem::from_raw_log(log[w as usize])
                }
            })
            .collect();

        Ok(FiniteField { p, a, q, modulus, primitive, exp, log, zech })
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            a: self.a,
            modulus: self.modulus.clone(),
            primitive: self.primitive,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.a
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `q0` with `q = q0^2`, if the field order is a square.
    pub fn sqrt_order(&self) -> Option<u32> {
        (self.a % 2 == 0).then(|| self.p.pow(self.a / 2))
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The fixed primitive element.
    pub fn primitive(&self) -> Elem {
        self.alpha_pow(1)
    }

    pub fn alpha_pow(&self, k: i64) -> Elem {
        let m = self.q as i64 - 1;
        Elem::from_raw_log(k.rem_euclid(m) as u32)
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.q
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.q).map(Elem)
    }

    /// Element of the prime subfield represented by `n mod p`.
    pub fn from_int(&self, n: i64) -> Elem {
        self.from_coeff_int(n.rem_euclid(self.p as i64) as u32)
    }

    /// Element whose base-p digits are its polynomial coefficients, low first.
    pub fn from_coeff_int(&self, v: u32) -> Elem {
        assert!(v < self.q, "coefficient integer {v} out of range for GF({})", self.q);
        if v == 0 {
            Elem::ZERO
        } else {
            Elem::from_raw_log(self.log[v as usize])
        }
    }

    pub fn to_coeff_int(&self, x: Elem) -> u32 {
        match x.log() {
            None => 0,
            Some(k) => self.exp[k as usize],
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.a as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameter(format!(
                "{coeffs:?} is not a coefficient vector over GF({})",
                self.p
            )));
        }
        let v = coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c);
        Ok(self.from_coeff_int(v))
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        let mut v = self.to_coeff_int(x);
        (0..self.a)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_wire(&self, w: i64) -> Result<Elem> {
        if w == -1 {
            Ok(Elem::ZERO)
        } else if (0..self.q as i64 - 1).contains(&w) {
            Ok(Elem::from_raw_log(w as u32))
        } else {
            Err(Error::InvalidParameter(format!("log index {w} out of range for GF({})", self.q)))
        }
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        let (Some(lx), Some(ly)) = (x.log(), y.log()) else {
            return if x.is_zero() { y } else { x };
        };
        let m = self.q - 1;
        let d = (ly + m - lx) % m;
        match self.zech[d as usize].log() {
            None => Elem::ZERO,
            Some(z) => Elem::from_raw_log((lx + z) % m),
        }
    }

    pub fn neg(&self, x: Elem) -> Elem {
        match x.log() {
            Some(l) if self.p != 2 => Elem::from_raw_log((l + (self.q - 1) / 2) % (self.q - 1)),
            _ => x,
        }
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match (x.log(), y.log()) {
            (Some(lx), Some(ly)) => Elem::from_raw_log((lx + ly) % (self.q - 1)),
            _ => Elem::ZERO,
        }
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        let l = x.log().ok_or(Error::DivisionByZero)?;
        let m = self.q - 1;
        Ok(Elem::from_raw_log((m - l) % m))
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e`, with `0^0 = 1`.
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        match x.log() {
            _ if e == 0 => Elem::ONE,
            None => Elem::ZERO,
            Some(l) => {
                let m = (self.q - 1) as u64;
                Elem::from_raw_log(((l as u64 * (e % m)) % m) as u32)
            }
        }
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn dot(&self, xs: &[Elem], ys: &[Elem]) -> Elem {
        xs.iter().zip(ys).fold(Elem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// Polynomials over GF(p) modulo a fixed modulus, with elements packed as
/// base-p integers. Only used while building tables.
struct PolyRing<'a> {
    p: u32,
    modulus: &'a [u32],
}

impl PolyRing<'_> {
    fn unpack(&self, mut v: u32) -> Vec<u32> {
        let a = self.modulus.len() - 1;
        (0..a)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    fn pack(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn reduce_t(&self) -> u32 {
        let a = self.modulus.len() - 1;
        if a >= 2 {
            self.p
        } else {
            // t = -m0 mod (t + m0)
            (self.p - self.modulus[0]) % self.p
        }
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        let p = self.p as u64;
        let a = self.modulus.len() - 1;
        let (xs, ys) = (self.unpack(x), self.unpack(y));
        let mut prod = vec![0u64; 2 * a];
        for (i, &xi) in xs.iter().enumerate() {
            for (j, &yj) in ys.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        for d in (a..2 * a).rev() {
            let c = prod[d];
            if c != 0 {
                for (i, &m) in self.modulus.iter().enumerate().take(a) {
                    let idx = d - a + i;
                    prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
                }
                prod[d] = 0;
            }
        }
        let low: Vec<u32> = prod[..a].iter().map(|&c| c as u32).collect();
        self.pack(&low)
    }

    fn pow(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q = p^b` as `(p, b)` when `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut b = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        b += 1;
    }
    (r == 1).then_some((p, b))
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for lower in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut v = lower;
            for _ in 0..d {
                div.push((v % p as u64) as u32);
                v /= p as u64;
            }
            div.push(1);
            if poly_rem_is_zero(m, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u32], monic_div: &[u32], p: u32) -> bool {
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let dd = monic_div.len() - 1;
    for top in (dd..r.len()).rev() {
        let c = r[top] % p;
        if c != 0 {
            for (i, &dc) in monic_div.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = (r[idx] + (p - c) * dc as u64) % p;
            }
        }
    }
    r[..dd].iter().all(|&c| c % p == 0)
}

fn default_modulus(p: u32, a: u32) -> Vec<u32> {
    if let Some((_, _, m)) = DEFAULT_MODULI.iter().find(|(pp, aa, _)| *pp == p && *aa == a) {
        return m.to_vec();
    }
    if a == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(a);
    (0..count)
        .map(|lower| {
            let mut v = lower;
            let mut m: Vec<u32> = (0..a)
                .map(|_| {
                    let c = (v % p as u64) as u32;
                    v /= p as u64;
                    c
                })
                .collect();
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}
