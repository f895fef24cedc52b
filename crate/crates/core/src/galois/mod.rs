//! Arithmetic in GF(p^a): elements, polynomials, multiplicative cosets and
//! the kernel of `x -> x^q0 + x`.

mod field;
pub mod matrix;
mod poly;

pub use field::{prime_power, Elem, FieldDescriptor, FiniteField, DEFAULT_MODULI, MAX_ORDER};
pub use poly::UniPoly;

use crate::error::{Error, Result};

/// A multiplicative subgroup together with some of its cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cosets {
    /// Listed in generator-power order, starting from 1.
    pub subgroup: Vec<Elem>,
    /// `rep * subgroup` for each requested representative, in the subgroup's order.
    pub cosets: Vec<Vec<Elem>>,
}

/// The unique multiplicative subgroup of the given order and the cosets
/// `rep * H` for each representative.
pub fn mult_subgroup_cosets(field: &FiniteField, order: u32, reps: &[Elem]) -> Result<Cosets> {
    let q1 = field.order() - 1;
    if order == 0 || q1 % order != 0 {
        return Err(Error::Divisibility(format!("{order} does not divide q - 1 = {q1}")));
    }
    let step = (q1 / order) as i64;
    let subgroup: Vec<Elem> = (0..order as i64).map(|k| field.alpha_pow(k * step)).collect();
    let cosets = reps
        .iter()
        .map(|&rep| {
            if rep.is_zero() || !field.contains(rep) {
                return Err(Error::InvalidParameter(format!("{rep} is not a unit of the field")));
            }
            Ok(subgroup.iter().map(|&h| field.mul(rep, h)).collect())
        })
        .collect::<Result<_>>()?;
    Ok(Cosets { subgroup, cosets })
}

/// `{a : a^q0 + a = 0}` for `q = q0^2`, in canonical order.
pub fn trace_kernel(field: &FiniteField) -> Result<Vec<Elem>> {
    let q0 = field.sqrt_order().ok_or(Error::NotASquare(field.order()))?;
    Ok(field
        .elements()
        .filter(|&a| field.add(field.pow(a, q0 as u64), a).is_zero())
        .collect())
}
