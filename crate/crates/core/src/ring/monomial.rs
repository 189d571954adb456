use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 12]>;

/// Exponent vector with its weighted degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: impl Into<Exponents>, weights: &[u32]) -> Self {
        let exps = exps.into();
        assert_eq!(exps.len(), weights.len(), "exponent vector length");
        let degree = exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn var(i: usize, weights: &[u32]) -> Self {
        let mut exps: Exponents = SmallVec::from_elem(0, weights.len());
        exps[i] = 1;
        Monomial { exps, degree: weights[i] }
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_exponent(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Recomputes the weighted degree from scratch.
    pub fn recomputed_degree(&self, weights: &[u32]) -> u32 {
        self.exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn pow(&self, k: u16) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
            degree: self.degree * k as u32,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect();
        Monomial::new(exps, weights)
    }

    pub fn gcd(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.min(b)).collect();
        Monomial::new(exps, weights)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `i` set iff variable `i` occurs (variables beyond 63 share the top bit).
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | 1 << i.min(63))
    }

    /// Index of the single variable if this is a pure power `x_i^k`, k ≥ 1.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Lexicographic comparison of raw exponents, first variable most significant.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}", self.exps.as_slice(), self.degree)
    }
}

/// All exponent vectors of weighted degree `degree`, in a fixed deterministic order.
pub fn monomials_of_degree(weights: &[u32], degree: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        if w == 0 {
            cur.push(0);
            rec(weights, i + 1, left, cur, out);
            cur.pop();
            return;
        }
        for e in (0..=left / w).rev() {
            cur.push(e as u16);
            rec(weights, i + 1, left - e * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, degree, &mut Vec::with_capacity(weights.len()), &mut out);
    out.into_iter().map(|e| Monomial::new(Exponents::from_vec(e), weights)).collect()
}

/// Number of monomials of each weighted degree `0..=upto` (coefficients of `1/Π(1-t^w)`).
pub fn monomial_counts(weights: &[u32], upto: usize) -> Vec<u64> {
    let mut counts = vec![0u64; upto + 1];
    counts[0] = 1;
    for &w in weights {
        let w = w as usize;
        assert!(w > 0, "free ring counts need positive weights");
        for d in w..=upto {
            counts[d] += counts[d - w];
        }
    }
    counts
}
