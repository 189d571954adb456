use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::coeff::{Field, FieldElement};
use crate::error::{Error, Result};

use super::{Exponents, Monomial, RingRef};

/// Sparse polynomial: terms sorted strictly descending in the ring's order,
/// no zero coefficients, no repeated monomials.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: RingRef<F>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::print_poly(self))
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::print_poly(self))
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &RingRef<F>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &RingRef<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &RingRef<F>, c: F::Elem) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &RingRef<F>, n: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(n))
    }

    pub fn monomial(ring: &RingRef<F>, m: Monomial, c: F::Elem) -> Self {
        let terms = if ring.field().is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &RingRef<F>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(i, ring.weights()), ring.field().one())
    }

    /// Variable by name; `None` if the ring has no such variable.
    pub fn var_named(ring: &RingRef<F>, name: &str) -> Option<Self> {
        ring.var_index(name).map(|i| Self::var(ring, i))
    }

    /// Canonicalizes an arbitrary term list (any order, duplicates, zeros allowed).
    pub fn from_terms(ring: &RingRef<F>, mut terms: Vec<(Monomial, F::Elem)>) -> Self {
        let field = ring.field();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if field.is_zero(lc) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if field.is_zero(lc) {
                out.pop();
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Trusts that `terms` is already canonical for `ring`.
    pub(crate) fn from_sorted_terms(ring: &RingRef<F>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !ring.field().is_zero(c)));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        match self.terms.binary_search_by(|(t, _)| self.ring.cmp(m, t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field().zero(),
        }
    }

    /// Coefficient of the monomial with exponent vector `exps`.
    pub fn coeff_of(&self, exps: &[u16]) -> F::Elem {
        self.coeff(&self.ring.monomial(exps))
    }

    /// Largest weighted degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some() || self.is_zero()
    }

    /// `Some(d)` iff nonzero and every monomial has weighted degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul(other))
    }

    /// Sum; both operands must live in the same ring (checked in debug builds).
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        debug_assert!(self.check_ring(other).is_ok());
        let field = self.field();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let conv = |c: &F::Elem| if negate { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), conv(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { field.sub(&a[i].1, &b[j].1) } else { field.add(&a[i].1, &b[j].1) };
                    if !field.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), conv(c))));
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Self {
        let field = self.field();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// `c * m * self`; order is preserved because monomial orders are multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), field.mul(a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.check_ring(other).is_ok());
        let (small, large) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        match small.terms.len() {
            0 => Self::zero(&self.ring),
            1 => large.mul_term(&small.terms[0].0, &small.terms[0].1),
            _ => {
                let field = self.field();
                let mut all = Vec::with_capacity(small.terms.len() * large.terms.len());
                for (m, c) in &small.terms {
                    for (n, d) in &large.terms {
                        all.push((m.mul(n), field.mul(c, d)));
                    }
                }
                Self::from_terms(&self.ring, all)
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("nonzero lead coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient by a monomial dividing every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            terms.push((m.divide_into(t)?, c.clone()));
        }
        Some(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn divide_exact(&self, d: &Self) -> Option<Self> {
        let lm = d.lead_monomial()?;
        let field = self.field();
        let lc_inv = field.inv(d.lead_coeff()?).expect("nonzero lead coefficient");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let q = lm.divide_into(m)?;
            let coef = field.mul(c, &lc_inv);
            rem = rem.sub(&d.mul_term(&q, &coef));
            quot.push((q, coef));
        }
        Some(Self::from_terms(&self.ring, quot))
    }

    /// Largest monomial dividing every term (1 for zero).
    pub fn content_monomial(&self) -> Monomial {
        let weights = self.ring.weights();
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.ring.nvars()),
            Some((first, _)) => it.fold(first.clone(), |g, (m, _)| g.gcd(m, weights)),
        }
    }

    /// The part of weighted degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let field = self.field();
        let weights = self.ring.weights();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            if e == 0 {
                continue;
            }
            let mut exps: Exponents = m.exps().into();
            exps[var] -= 1;
            let c = field.mul(c, &field.from_i64(e as i64));
            if !field.is_zero(&c) {
                terms.push((Monomial::new(exps, weights), c));
            }
        }
        // differentiation does not preserve the order in general (e.g. block orders)
        Self::from_terms(&self.ring, terms)
    }

    /// Evaluates at a point given as raw field elements.
    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(Error::PointLength { expected: n, found: point.len() });
        }
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = field.mul(&t, &field.pow(x, e as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Evaluates at a point of self-describing field elements.
    pub fn evaluate_at_point(&self, point: &[FieldElement]) -> Result<FieldElement> {
        let field = self.field();
        let raw = point.iter().map(|p| p.to_elem(field)).collect::<Result<Vec<_>>>()?;
        Ok(FieldElement::from_elem(field, &self.eval(&raw)?))
    }

    /// Ring homomorphism sending variable `i` to `images[i]` (all in one target ring).
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if images.len() != self.ring.nvars() {
            let missing = self.ring.names().get(images.len()).cloned().unwrap_or_default();
            return Err(Error::MissingImage(missing));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        for img in images {
            img.check_ring(&images[0])?;
        }
        let mut cache: HashMap<(usize, u16), Polynomial<F>> = HashMap::new();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache.entry((i, e)).or_insert_with(|| images[i].pow(e as u32));
                t = t.mul(p);
                if t.is_zero() {
                    break;
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitution with images keyed by source variable name.
    pub fn substitute_named(
        &self,
        images: &HashMap<String, Polynomial<F>>,
        target: &RingRef<F>,
    ) -> Result<Polynomial<F>> {
        let mut list = Vec::with_capacity(self.ring.nvars());
        for name in self.ring.names() {
            match images.get(name) {
                Some(p) if p.ring == *target => list.push(p.clone()),
                Some(_) => return Err(Error::RingMismatch),
                None => return Err(Error::MissingImage(name.clone())),
            }
        }
        if list.is_empty() {
            return Ok(Polynomial::zero(target).add(&self.recast_constant(target)));
        }
        self.substitute(&list)
    }

    fn recast_constant(&self, target: &RingRef<F>) -> Polynomial<F> {
        match self.terms.first() {
            Some((_, c)) => Polynomial::constant(target, c.clone()),
            None => Polynomial::zero(target),
        }
    }

    /// Moves the polynomial into `target`, sending variable `i` to variable `map[i]`.
    pub fn map_vars(&self, target: &RingRef<F>, map: &[usize]) -> Polynomial<F> {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps: Exponents = smallvec::smallvec![0; n];
                for (i, &e) in m.exps().iter().enumerate() {
                    exps[map[i]] += e;
                }
                (Monomial::new(exps, target.weights()), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Same variables and coefficients in a ring that differs only in its order.
    pub fn reorder(&self, target: &RingRef<F>) -> Polynomial<F> {
        debug_assert_eq!(target.names(), self.ring.names());
        Polynomial::from_terms(target, self.terms.clone())
    }

    /// Restricts to the subring spanned by `keep` (given as source indices, in
    /// target order); `None` if some term involves a dropped variable.
    pub fn restrict(&self, target: &RingRef<F>, keep: &[usize]) -> Option<Polynomial<F>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exps();
            let kept: usize = keep.iter().map(|&i| e[i] as usize).sum();
            if kept != e.iter().map(|&x| x as usize).sum::<usize>() {
                return None;
            }
            let exps: Exponents = keep.iter().map(|&i| e[i]).collect();
            terms.push((Monomial::new(exps, target.weights()), c.clone()));
        }
        Some(Polynomial::from_terms(target, terms))
    }

    /// Sets the listed variables to zero.
    pub fn set_zero(&self, vars: &[usize]) -> Polynomial<F> {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| vars.iter().all(|&v| m.exps()[v] == 0))
            .cloned()
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

/// If every image is homogeneous of degree `scale * weight(source var)` for a
/// common positive `scale`, returns that scale (zero images are compatible with any scale).
pub fn graded_substitution_scale<F: Field>(
    source_weights: &[u32],
    images: &[Polynomial<F>],
) -> Option<u32> {
    let mut scale: Option<(u32, u32)> = None; // (deg, weight) as a ratio
    for (img, &w) in images.iter().zip(source_weights) {
        if img.is_zero() {
            continue;
        }
        let d = img.homogeneous_degree()?;
        match scale {
            None => scale = Some((d, w)),
            Some((d0, w0)) => {
                if d * w0 != d0 * w {
                    return None;
                }
            }
        }
    }
    match scale {
        None => Some(1),
        Some((d, w)) if d % w == 0 && d > 0 => Some(d / w),
        _ => None,
    }
}
