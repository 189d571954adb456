//! Gröbner bases and the ideal operations built on them.

mod buchberger;
mod ops;

use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::ring::{Monomial, MonomialOrder, Polynomial, RingRef};

pub use buchberger::{buchberger, normal_form, GbRun};
pub use ops::{jacobian_ideal, maximal_minors, JacobianIdeal};

pub(crate) use buchberger::{reduce, Reducer};
pub(crate) use ops::combinations;

/// Knobs for a Gröbner basis computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbOptions {
    /// Stop after all S-pairs of weighted degree at most this value (homogeneous input only).
    pub truncation: Option<u32>,
    /// Give up with [`Error::Timeout`] after this long.
    pub time_budget: Option<Duration>,
}

impl GbOptions {
    pub fn full() -> Self {
        GbOptions::default()
    }

    pub fn truncated(d: u32) -> Self {
        GbOptions { truncation: Some(d), time_budget: None }
    }

    pub fn with_budget(mut self, budget: Option<Duration>) -> Self {
        self.time_budget = budget;
        self
    }

    fn deadline(&self) -> Option<Instant> {
        self.time_budget.map(|b| Instant::now() + b)
    }
}

/// A reduced (possibly degree-truncated) Gröbner basis in its ring's order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: RingRef<F>,
    elements: Vec<Polynomial<F>>,
    truncation: Option<u32>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `None` for a complete basis.
    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn is_complete(&self) -> bool {
        self.truncation.is_none()
    }

    /// The basis is `{1}`.
    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_unit()
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|p| p.lead_monomial().unwrap().clone()).collect()
    }

    /// Normal form of `p`; `p` may live in a ring that differs only in its order.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let q = if Arc::ptr_eq(p.ring(), &self.ring) || **p.ring() == *self.ring {
            p.clone()
        } else {
            p.reorder(&self.ring)
        };
        let r = reduce(&q, &Reducer::new(&self.elements), true);
        if Arc::ptr_eq(p.ring(), &self.ring) {
            r
        } else {
            r.reorder(p.ring())
        }
    }

    /// Membership test; a truncated basis only answers up to its degree
    /// (the ideal is homogeneous, so each homogeneous part is tested separately).
    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        if let Some(d) = self.truncation {
            if let Some(deg) = p.degree() {
                if deg > d {
                    return Err(Error::TruncationTooLow { available: d, requested: deg });
                }
            }
        }
        Ok(self.normal_form(p).is_zero())
    }
}

/// An ideal: its generators and, optionally, a cached Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: RingRef<F>,
    generators: Vec<Polynomial<F>>,
    gb: Option<Arc<GroebnerBasis<F>>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &RingRef<F>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), generators, gb: None })
    }

    pub fn zero(ring: &RingRef<F>) -> Self {
        Ideal { ring: ring.clone(), generators: Vec::new(), gb: None }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    pub fn cached_gb(&self) -> Option<&Arc<GroebnerBasis<F>>> {
        self.gb.as_ref()
    }

    /// Runs Buchberger in the ring's own order and returns the ideal with the cache filled.
    pub fn with_gb(&self, opts: &GbOptions) -> Result<Ideal<F>> {
        let gb = self.groebner(opts)?;
        Ok(Ideal { gb: Some(Arc::new(gb)), ..self.clone() })
    }

    /// The cached basis if it satisfies `opts`, otherwise a fresh computation.
    pub fn groebner(&self, opts: &GbOptions) -> Result<GroebnerBasis<F>> {
        if let Some(gb) = &self.gb {
            let good = match (gb.truncation, opts.truncation) {
                (None, _) => true,
                (Some(have), Some(want)) => have >= want,
                (Some(_), None) => false,
            };
            if good {
                return Ok((**gb).clone());
            }
        }
        let run = buchberger(&self.ring, &self.generators, opts.truncation, opts.deadline())?;
        Ok(GroebnerBasis { ring: self.ring.clone(), elements: run.basis, truncation: run.truncation })
    }

    /// Cached basis, computing a complete one on first use.
    pub fn gb(&mut self) -> Result<Arc<GroebnerBasis<F>>> {
        if self.gb.is_none() {
            self.gb = Some(Arc::new(self.groebner(&GbOptions::full())?));
        }
        Ok(self.gb.clone().unwrap())
    }

    /// Same generators, viewed in a ring with another order (cache dropped).
    pub fn in_order(&self, order: MonomialOrder) -> Ideal<F> {
        let ring = self.ring.with_order(order);
        let generators = self.generators.iter().map(|g| g.reorder(&ring)).collect();
        Ideal { ring, generators, gb: None }
    }

    /// `I + (extra)`.
    pub fn plus(&self, extra: &[Polynomial<F>]) -> Result<Ideal<F>> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.plus(&other.generators)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        let mut gens = Vec::new();
        for f in &self.generators {
            for g in &other.generators {
                gens.push(f.try_mul(g)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `p ∈ I`, computing (or reusing) a basis good enough for `deg p`.
    pub fn contains(&self, p: &Polynomial<F>, opts: &GbOptions) -> Result<bool> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let gb = self.groebner(opts)?;
        gb.contains(p)
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal<F>, opts: &GbOptions) -> Result<bool> {
        let gb = self.groebner(opts)?;
        for g in &other.generators {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as mutual containment.
    pub fn equals(&self, other: &Ideal<F>, opts: &GbOptions) -> Result<bool> {
        Ok(self.contains_ideal(other, opts)? && other.contains_ideal(self, opts)?)
    }

    pub fn eliminate(&self, drop: &[usize], opts: &GbOptions) -> Result<Ideal<F>> {
        ops::eliminate(self, drop, opts)
    }

    pub fn intersect(&self, other: &Ideal<F>, opts: &GbOptions) -> Result<Ideal<F>> {
        ops::intersect(self, other, opts)
    }

    pub fn quotient(&self, f: &Polynomial<F>, opts: &GbOptions) -> Result<Ideal<F>> {
        ops::quotient(self, f, opts)
    }

    pub fn saturate(&self, f: &Polynomial<F>, opts: &GbOptions) -> Result<Ideal<F>> {
        ops::saturate(self, f, opts)
    }

    pub fn locus_disjoint(&self, kept: &[usize], opts: &GbOptions) -> Result<bool> {
        ops::locus_disjoint(self, kept, opts)
    }
}

/// `p ∈ I`.
pub fn ideal_member<F: Field>(p: &Polynomial<F>, ideal: &Ideal<F>, opts: &GbOptions) -> Result<bool> {
    ideal.contains(p, opts)
}

#[cfg(test)]
mod tests;
