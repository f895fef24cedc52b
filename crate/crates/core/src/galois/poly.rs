use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{Elem, FiniteField};

/// Univariate polynomial over a finite field, lowest degree first.
///
/// Trailing zeros are never stored, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Arc<FiniteField>,
    coeffs: Vec<Elem>,
}

impl UniPoly {
    pub fn new(field: Arc<FiniteField>, mut coeffs: Vec<Elem>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: Arc<FiniteField>) -> UniPoly {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: Arc<FiniteField>, c: Elem) -> UniPoly {
        UniPoly::new(field, vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(field: Arc<FiniteField>, c: Elem, deg: usize) -> UniPoly {
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        coeffs[deg] = c;
        UniPoly::new(field, coeffs)
    }

    /// `prod (x - root)`
    pub fn from_roots(field: Arc<FiniteField>, roots: &[Elem]) -> UniPoly {
        let one = UniPoly::constant(field.clone(), Elem::ONE);
        roots.iter().fold(one, |acc, &b| {
            let lin = UniPoly::new(field.clone(), vec![field.neg(b), Elem::ONE]);
            acc.mul(&lin)
        })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Elem) -> Result<Elem> {
        if !self.field.contains(x) {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        Ok(self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c)))
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        UniPoly::new(f.clone(), coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(self.field.neg(Elem::ONE)))
    }

    pub fn scale(&self, c: Elem) -> UniPoly {
        let coeffs = self.coeffs.iter().map(|&x| self.field.mul(x, c)).collect();
        UniPoly::new(self.field.clone(), coeffs)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut coeffs = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(f.clone(), coeffs)
    }

    /// Lagrange interpolation: the unique polynomial of degree below
    /// `points.len()` through all `(x, v)` pairs.
    pub fn interpolate(field: Arc<FiniteField>, points: &[(Elem, Elem)]) -> Result<UniPoly> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("interpolation needs at least one point".into()));
        }
        if points.iter().any(|&(x, v)| !field.contains(x) || !field.contains(v)) {
            return Err(Error::FieldMismatch);
        }
        for (i, &(xi, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|&(xj, _)| xj == xi) {
                return Err(Error::DuplicateNode(xi));
            }
        }
        let f = &field;
        let mut acc = UniPoly::zero(field.clone());
        for (i, &(xi, vi)) in points.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let others: Vec<Elem> =
                points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &(x, _))| x).collect();
            let basis = UniPoly::from_roots(field.clone(), &others);
            let denom = others.iter().fold(Elem::ONE, |d, &xj| f.mul(d, f.sub(xi, xj)));
            acc = acc.add(&basis.scale(f.div(vi, denom)?));
        }
        Ok(acc)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, *c == Elem::ONE) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}
