//! Weighted-graded polynomial rings, monomial orders and sparse polynomials.

mod monomial;
mod parse;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::coeff::Field;
use crate::error::{Error, Result};

pub use monomial::{monomial_counts, monomials_of_degree, Exponents, Monomial};
pub use parse::{
    load_ideal_file, parse_ideal_file, parse_poly, parse_ring_header, print_ideal_file, print_poly,
    AnyIdealFile, IdealFile, RingHeader,
};
pub use poly::{graded_substitution_scale, Polynomial};

/// Monomial orders used by the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted degree first, reverse-lexicographic tiebreak (last variable smallest).
    WeightedGrevlex,
    /// Variables `0..cutoff` form the first block, compared before the rest.
    /// Within each block the order is weighted grevlex; variables of weight 0
    /// count with weight 1 inside their block.
    EliminationBlock { cutoff: usize },
}

/// A polynomial ring `k[x_1..x_n]` graded by positive integer weights.
#[derive(Clone, Debug)]
pub struct Ring<F: Field> {
    names: Vec<String>,
    weights: Vec<u32>,
    field: F,
    order: MonomialOrder,
}

pub type RingRef<F> = Arc<Ring<F>>;

impl<F: Field> PartialEq for Ring<F> {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.weights == other.weights
            && self.field == other.field
            && self.order == other.order
    }
}

impl<F: Field> Eq for Ring<F> {}

impl<F: Field> Ring<F> {
    /// Graded ring with the weighted grevlex order. Names must be unique
    /// identifiers and weights positive.
    pub fn new<S: AsRef<str>>(field: F, names: &[S], weights: &[u32]) -> Result<RingRef<F>> {
        if weights.contains(&0) {
            return Err(Error::Ring("variable weights must be positive".into()));
        }
        Self::build(field, names, weights, MonomialOrder::WeightedGrevlex)
    }

    /// Like [`Ring::new`] but admits weight-0 variables. Used for auxiliary
    /// parameters (e.g. the `t` of ideal intersection) that must not affect the grading.
    pub fn with_auxiliary<S: AsRef<str>>(
        field: F,
        names: &[S],
        weights: &[u32],
        order: MonomialOrder,
    ) -> Result<RingRef<F>> {
        Self::build(field, names, weights, order)
    }

    fn build<S: AsRef<str>>(
        field: F,
        names: &[S],
        weights: &[u32],
        order: MonomialOrder,
    ) -> Result<RingRef<F>> {
        if names.len() != weights.len() {
            return Err(Error::Ring(format!(
                "{} names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Ring(format!("`{n}` is not a valid variable name")));
            }
            if names[..i].contains(n) {
                return Err(Error::Ring(format!("duplicate variable `{n}`")));
            }
        }
        if let MonomialOrder::EliminationBlock { cutoff } = order {
            if cutoff > names.len() {
                return Err(Error::Ring("block cutoff beyond the last variable".into()));
            }
        }
        Ok(Arc::new(Ring { names, weights: weights.to_vec(), field, order }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables and weights, different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef<F> {
        Arc::new(Ring { order, ..self.clone() })
    }

    /// The subring on the listed variables (in the given order), weighted grevlex.
    pub fn subring(&self, keep: &[usize]) -> Result<RingRef<F>> {
        let names: Vec<&str> = keep.iter().map(|&i| self.names[i].as_str()).collect();
        let weights: Vec<u32> = keep.iter().map(|&i| self.weights[i]).collect();
        Self::build(self.field.clone(), &names, &weights, MonomialOrder::WeightedGrevlex)
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        Monomial::new(Exponents::from_slice(exps), &self.weights)
    }

    /// Compare two monomials in this ring's order.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::WeightedGrevlex => {
                a.degree().cmp(&b.degree()).then_with(|| revlex(a.exps(), b.exps()))
            }
            MonomialOrder::EliminationBlock { cutoff } => {
                let (a1, a2) = a.exps().split_at(cutoff);
                let (b1, b2) = b.exps().split_at(cutoff);
                let (w1, w2) = self.weights.split_at(cutoff);
                block_degree(a1, w1)
                    .cmp(&block_degree(b1, w1))
                    .then_with(|| revlex(a1, b1))
                    .then_with(|| block_degree(a2, w2).cmp(&block_degree(b2, w2)))
                    .then_with(|| revlex(a2, b2))
            }
        }
    }
}

#[inline]
fn block_degree(e: &[u16], w: &[u32]) -> u32 {
    e.iter().zip(w).map(|(&e, &w)| e as u32 * w.max(1)).sum()
}

/// Larger in revlex iff the last differing exponent is smaller.
#[inline]
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> fmt::Display for Ring<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let weights: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "ring {} [{}] {}", self.field.spec(), weights.join(","), self.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::PrimeField;
    use proptest::prelude::*;

    fn ring3() -> RingRef<PrimeField> {
        Ring::new(PrimeField::default(), &["x", "y", "z"], &[1, 2, 3]).unwrap()
    }

    #[test]
    fn rejects_bad_rings() {
        let f = PrimeField::default();
        assert!(Ring::new(f, &["x", "x"], &[1, 1]).is_err());
        assert!(Ring::new(f, &["x", "y"], &[1, 0]).is_err());
        assert!(Ring::new(f, &["x"], &[1, 1]).is_err());
        assert!(Ring::new(f, &["2x"], &[1]).is_err());
    }

    #[test]
    fn grevlex_tiebreak() {
        let r = Ring::new(PrimeField::default(), &["x", "y", "z"], &[1, 1, 1]).unwrap();
        // x*z < y^2 in grevlex
        assert_eq!(r.cmp(&r.monomial(&[1, 0, 1]), &r.monomial(&[0, 2, 0])), Ordering::Less);
        assert_eq!(r.cmp(&r.monomial(&[2, 0, 0]), &r.monomial(&[0, 2, 0])), Ordering::Greater);
    }

    fn arb_mono() -> impl Strategy<Value = Vec<u16>> {
        proptest::collection::vec(0u16..5, 3)
    }

    proptest! {
        #[test]
        fn grevlex_is_a_monomial_order(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            let r = ring3();
            let (ma, mb, mc) = (r.monomial(&a), r.monomial(&b), r.monomial(&c));
            let ab = r.cmp(&ma, &mb);
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(r.cmp(&mb, &ma), ab.reverse());
            prop_assert_eq!(r.cmp(&ma.mul(&mc), &mb.mul(&mc)), ab);
            prop_assert_ne!(r.cmp(&Monomial::one(3), &ma), Ordering::Greater);
            // transitivity
            if ab != Ordering::Less && r.cmp(&mb, &mc) != Ordering::Less {
                prop_assert_ne!(r.cmp(&ma, &mc), Ordering::Less);
            }
        }

        #[test]
        fn block_order_is_a_monomial_order(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            let r = ring3().with_order(MonomialOrder::EliminationBlock { cutoff: 1 });
            let (ma, mb, mc) = (r.monomial(&a), r.monomial(&b), r.monomial(&c));
            let ab = r.cmp(&ma, &mb);
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(r.cmp(&ma.mul(&mc), &mb.mul(&mc)), ab);
            prop_assert_ne!(r.cmp(&Monomial::one(3), &ma), Ordering::Greater);
            // anything involving x beats anything free of x
            if a[0] > 0 && b[0] == 0 {
                prop_assert_eq!(ab, Ordering::Greater);
            }
        }
    }
}
