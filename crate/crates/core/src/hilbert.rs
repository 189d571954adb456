//! Hilbert series of weighted-graded quotients, Krull dimension, and the
//! plurigenus checks used to recognise canonical rings.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::groebner::{GbOptions, GroebnerBasis, Ideal};
use crate::ring::Monomial;

/// `numerator(t) / Π (1 - t^w)` with an integer numerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalSeries {
    /// Coefficient of `t^k` at index `k`, without trailing zeros.
    numerator: Vec<i64>,
    /// Denominator weights, sorted ascending.
    denominator: Vec<u32>,
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Multiplies by `1 - t^w` in place.
fn times_one_minus(p: &mut Vec<i64>, w: u32) {
    let w = w as usize;
    if p.is_empty() {
        return;
    }
    p.resize(p.len() + w, 0);
    for k in (w..p.len()).rev() {
        p[k] -= p[k - w];
    }
    let t = trim(std::mem::take(p));
    *p = t;
}

/// Exact quotient by `1 - t^w`, if it exists.
fn divide_one_minus(p: &[i64], w: u32) -> Option<Vec<i64>> {
    let w = w as usize;
    if p.is_empty() {
        return Some(Vec::new());
    }
    if p.len() <= w {
        return None;
    }
    // q(t) (1 - t^w) = p(t)  =>  q_k = p_k + q_{k-w}
    let n = p.len() - w;
    let mut q = vec![0i64; n];
    for k in 0..n {
        q[k] = p[k] + if k >= w { q[k - w] } else { 0 };
    }
    // remaining coefficients must match
    for k in n..p.len() {
        let lhs = if k >= w && k - w < n { -q[k - w] } else { 0 } + if k < n { q[k] } else { 0 };
        if lhs != p[k] {
            return None;
        }
    }
    Some(trim(q))
}

impl RationalSeries {
    pub fn new(numerator: Vec<i64>, mut denominator: Vec<u32>) -> Self {
        assert!(denominator.iter().all(|&w| w > 0), "denominator weights must be positive");
        denominator.sort_unstable();
        RationalSeries { numerator: trim(numerator), denominator }
    }

    /// `1 / Π(1 - t^w)`.
    pub fn free(weights: &[u32]) -> Self {
        Self::new(vec![1], weights.to_vec())
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }

    /// Cancels factors `1 - t^w` of the denominator that divide the numerator,
    /// largest `w` first.
    pub fn canonical(&self) -> RationalSeries {
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        let mut k = den.len();
        while k > 0 {
            k -= 1;
            if let Some(q) = divide_one_minus(&num, den[k]) {
                num = q;
                den.remove(k);
            }
        }
        RationalSeries { numerator: num, denominator: den }
    }

    /// Power-series coefficients of `t^0 .. t^upto`.
    pub fn expand(&self, upto: usize) -> Vec<i64> {
        let mut c = vec![0i64; upto + 1];
        for (k, &a) in self.numerator.iter().enumerate().take(upto + 1) {
            c[k] = a;
        }
        for &w in &self.denominator {
            let w = w as usize;
            for k in w..=upto {
                c[k] += c[k - w];
            }
        }
        c
    }

    /// Multiplies the series by `1 - t^w` (e.g. restriction to a hyperplane of weight `w`).
    pub fn times_one_minus(&self, w: u32) -> RationalSeries {
        let mut num = self.numerator.clone();
        times_one_minus(&mut num, w);
        RationalSeries::new(num, self.denominator.clone())
    }

    /// Equality of rational functions by cross-multiplication.
    pub fn same_function(&self, other: &RationalSeries) -> bool {
        let mut a = self.numerator.clone();
        for &w in &other.denominator {
            times_one_minus(&mut a, w);
        }
        let mut b = other.numerator.clone();
        for &w in &self.denominator {
            times_one_minus(&mut b, w);
        }
        a == b
    }

    /// Same rational function and same coefficients through degree `upto`.
    pub fn equals_through(&self, other: &RationalSeries, upto: usize) -> bool {
        self.same_function(other) && self.expand(upto) == other.expand(upto)
    }

    /// Order of the pole at `t = 1`; `-1` for the zero series.
    pub fn pole_order(&self) -> i64 {
        if self.numerator.is_empty() {
            return -1;
        }
        let mut num = self.numerator.clone();
        let mut mult = 0i64;
        while let Some(q) = divide_one_minus(&num, 1) {
            if q.is_empty() {
                break;
            }
            num = q;
            mult += 1;
        }
        self.denominator.len() as i64 - mult
    }

    /// Sum of two series over the product of their denominators.
    pub fn add(&self, other: &RationalSeries) -> RationalSeries {
        let mut a = self.numerator.clone();
        for &w in &other.denominator {
            times_one_minus(&mut a, w);
        }
        let mut b = other.numerator.clone();
        for &w in &self.denominator {
            times_one_minus(&mut b, w);
        }
        let len = a.len().max(b.len());
        a.resize(len, 0);
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        let mut den = self.denominator.clone();
        den.extend(&other.denominator);
        RationalSeries::new(a, den).canonical()
    }

    pub fn neg(&self) -> RationalSeries {
        RationalSeries {
            numerator: self.numerator.iter().map(|c| -c).collect(),
            denominator: self.denominator.clone(),
        }
    }
}

fn format_t_poly(p: &[i64]) -> String {
    let mut out = String::new();
    for (k, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        match (k, mag) {
            (0, _) => out.push_str(&mag.to_string()),
            (_, 1) => {}
            _ => out.push_str(&format!("{mag}*")),
        }
        match k {
            0 => {}
            1 => out.push('t'),
            _ => out.push_str(&format!("t^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "num = {}; den = ", format_t_poly(&self.numerator))?;
        if self.denominator.is_empty() {
            return write!(f, "1");
        }
        for &w in &self.denominator {
            if w == 1 {
                write!(f, "(1-t)")?;
            } else {
                write!(f, "(1-t^{w})")?;
            }
        }
        Ok(())
    }
}

/// Keeps only the divisibility-minimal monomials, sorted by degree then exponents.
pub fn minimalize(monos: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = monos.to_vec();
    sorted.sort_by(|a, b| a.total_exponent().cmp(&b.total_exponent()).then_with(|| a.exps().cmp(b.exps())));
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

struct NumeratorCache<'a> {
    weights: &'a [u32],
    memo: HashMap<Vec<Vec<u16>>, Vec<i64>>,
}

impl NumeratorCache<'_> {
    fn deg(&self, e: &[u16]) -> u32 {
        e.iter().zip(self.weights).map(|(&a, &w)| a as u32 * w).sum()
    }

    fn minimal(gens: Vec<Vec<u16>>) -> Vec<Vec<u16>> {
        let mut gens = gens;
        gens.sort_by(|a, b| {
            let sa: u32 = a.iter().map(|&x| x as u32).sum();
            let sb: u32 = b.iter().map(|&x| x as u32).sum();
            sa.cmp(&sb).then_with(|| a.cmp(b))
        });
        gens.dedup();
        let mut out: Vec<Vec<u16>> = Vec::new();
        for g in gens {
            if !out.iter().any(|h| h.iter().zip(&g).all(|(a, b)| a <= b)) {
                out.push(g);
            }
        }
        out.sort();
        out
    }

    /// Numerator of `k[x]/(gens)` over `Π(1 - t^w)`; `gens` minimal and sorted.
    fn numerator(&mut self, gens: Vec<Vec<u16>>) -> Vec<i64> {
        if gens.is_empty() {
            return vec![1];
        }
        if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
            return Vec::new();
        }
        // pairwise coprime generators: a regular sequence
        let n = gens[0].len();
        let mut used = vec![false; n];
        let mut coprime = true;
        'outer: for g in &gens {
            for (i, &e) in g.iter().enumerate() {
                if e > 0 {
                    if used[i] {
                        coprime = false;
                        break 'outer;
                    }
                    used[i] = true;
                }
            }
        }
        if coprime {
            let mut p = vec![1];
            for g in &gens {
                times_one_minus(&mut p, self.deg(g));
            }
            return p;
        }
        if let Some(v) = self.memo.get(&gens) {
            return v.clone();
        }
        // pivot: the variable in the most generators, at its median positive exponent
        let mut counts = vec![0usize; n];
        for g in &gens {
            for (i, &e) in g.iter().enumerate() {
                if e > 0 {
                    counts[i] += 1;
                }
            }
        }
        let var = (0..n).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
        let mut exps: Vec<u16> = gens.iter().map(|g| g[var]).filter(|&e| e > 0).collect();
        exps.sort_unstable();
        let e = exps[(exps.len() - 1) / 2];
        let mut pivot = vec![0u16; n];
        pivot[var] = e;

        let mut plus = gens.clone();
        plus.push(pivot.clone());
        let plus = Self::minimal(plus);
        let colon: Vec<Vec<u16>> = gens
            .iter()
            .map(|g| {
                let mut h = g.clone();
                h[var] = h[var].saturating_sub(e);
                h
            })
            .collect();
        let colon = Self::minimal(colon);

        let a = self.numerator(plus);
        let b = self.numerator(colon);
        let shift = self.deg(&pivot) as usize;
        let mut out = a;
        if out.len() < b.len() + shift {
            out.resize(b.len() + shift, 0);
        }
        for (k, &c) in b.iter().enumerate() {
            out[k + shift] += c;
        }
        let out = trim(out);
        self.memo.insert(gens, out.clone());
        out
    }
}

/// Hilbert series of `k[x]/(monomials)` for positive variable weights.
pub fn hilbert_numerator(monomials: &[Monomial], weights: &[u32]) -> RationalSeries {
    let mut cache = NumeratorCache { weights, memo: HashMap::new() };
    let gens = NumeratorCache::minimal(monomials.iter().map(|m| m.exps().to_vec()).collect());
    RationalSeries::new(cache.numerator(gens), weights.to_vec())
}

/// Hilbert data of a quotient: exact, or only a coefficient prefix when the
/// underlying basis was truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HilbertSeries {
    Exact(RationalSeries),
    Truncated { coefficients: Vec<i64>, degree: u32 },
}

impl HilbertSeries {
    /// Coefficients `0..=upto`; errors if a truncated series cannot supply them.
    pub fn coefficients(&self, upto: usize) -> Result<Vec<i64>> {
        match self {
            HilbertSeries::Exact(s) => Ok(s.expand(upto)),
            HilbertSeries::Truncated { coefficients, degree } => {
                if upto > *degree as usize {
                    Err(Error::TruncationTooLow { available: *degree, requested: upto as u32 })
                } else {
                    Ok(coefficients[..=upto].to_vec())
                }
            }
        }
    }

    pub fn exact(&self) -> Option<&RationalSeries> {
        match self {
            HilbertSeries::Exact(s) => Some(s),
            HilbertSeries::Truncated { .. } => None,
        }
    }

    pub fn is_truncated(&self) -> bool {
        matches!(self, HilbertSeries::Truncated { .. })
    }
}

/// Hilbert series of `R/I` read off the lead monomials of a basis of a homogeneous ideal.
pub fn series_of_basis<F: Field>(gb: &GroebnerBasis<F>) -> HilbertSeries {
    let weights = gb.ring().weights();
    let s = hilbert_numerator(&gb.lead_monomials(), weights);
    match gb.truncation() {
        None => HilbertSeries::Exact(s),
        Some(d) => HilbertSeries::Truncated { coefficients: s.expand(d as usize), degree: d },
    }
}

/// Hilbert series of `R/I` for a homogeneous ideal; `truncation` bounds the
/// basis computation (the answer is then only a coefficient prefix).
pub fn hilbert_series<F: Field>(ideal: &Ideal<F>, opts: &GbOptions) -> Result<HilbertSeries> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous("Hilbert series needs a homogeneous ideal".into()));
    }
    let gb = ideal.groebner(opts)?;
    Ok(series_of_basis(&gb))
}

/// Coefficients `0..=upto` of a series.
pub fn series_expand(s: &RationalSeries, upto: usize) -> Vec<i64> {
    s.expand(upto)
}

/// Krull dimension of `R/I` from the lead monomials of any complete basis
/// (`-1` for the unit ideal). Valid for inhomogeneous ideals too.
pub fn krull_dimension_of_basis<F: Field>(gb: &GroebnerBasis<F>) -> i64 {
    let weights: Vec<u32> = gb.ring().weights().iter().map(|&w| w.max(1)).collect();
    hilbert_numerator(&gb.lead_monomials(), &weights).pole_order()
}

/// Krull dimension of `R/I`; needs a complete basis.
pub fn krull_dimension<F: Field>(ideal: &Ideal<F>, opts: &GbOptions) -> Result<i64> {
    if let Some(available) = opts.truncation {
        return Err(Error::TruncationTooLow { available, requested: u32::MAX });
    }
    let gb = ideal.groebner(opts)?;
    if let Some(d) = gb.truncation() {
        return Err(Error::TruncationTooLow { available: d, requested: u32::MAX });
    }
    Ok(krull_dimension_of_basis(&gb))
}

/// `(1 - t^10) / ((1 - t)^2 (1 - t^2) (1 - t^5))`.
pub fn i_surface_series() -> RationalSeries {
    let mut num = vec![1];
    times_one_minus(&mut num, 10);
    RationalSeries::new(num, vec![1, 1, 2, 5])
}

/// Outcome of one plurigenus formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaCheck {
    pub name: String,
    pub m: u32,
    pub expected: i64,
    pub found: i64,
    pub pass: bool,
}

/// Invariants read from a canonical-ring Hilbert series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    /// Pole order at `t = 1` (3 for the cone over a surface, 2 for a curve).
    pub dimension: i64,
    pub is_curve: bool,
    pub chi: i64,
    /// `K^2` as a reduced fraction `(numerator, denominator)`.
    pub k_squared: (i64, i64),
    pub pg: i64,
    pub q: i64,
    pub plurigenera: Vec<i64>,
    pub checks: Vec<FormulaCheck>,
}

impl InvariantReport {
    pub fn all_pass(&self) -> bool {
        !self.is_curve && self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FormulaCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Default number of plurigenera examined.
pub const PLURIGENERA_UPTO: usize = 20;

/// Reads `p_g = P_1`, `K^2 = (P_3 - P_2)/2`, `χ = P_2 - K^2`, `q = 1 + p_g - χ`
/// and checks `P_m = χ + m(m-1)/2 K^2` for `2 ≤ m ≤ upto`, the odd-degree
/// form `P_{2m+1} = χ + m(2m+1) K^2`, and the I-surface values χ = 3, K^2 = 1, P_2 = 4.
pub fn check_invariants_of(plurigenera: &[i64], dimension: i64) -> InvariantReport {
    let p = |m: usize| plurigenera.get(m).copied().unwrap_or(0);
    let is_curve = dimension == 2;
    let twice_k2 = p(3) - p(2);
    let k_squared = if twice_k2 % 2 == 0 { (twice_k2 / 2, 1) } else { (twice_k2, 2) };
    // χ = P2 - K^2, exact when K^2 is an integer
    let chi = if k_squared.1 == 1 { p(2) - k_squared.0 } else { i64::MIN };
    let pg = p(1);
    let q = 1 + pg - chi;
    let mut checks = Vec::new();
    if !is_curve {
        checks.push(FormulaCheck { name: "dimension".into(), m: 0, expected: 3, found: dimension, pass: dimension == 3 });
        checks.push(FormulaCheck { name: "P0".into(), m: 0, expected: 1, found: p(0), pass: p(0) == 1 });
        checks.push(FormulaCheck { name: "chi".into(), m: 0, expected: 3, found: chi, pass: chi == 3 });
        checks.push(FormulaCheck {
            name: "K^2".into(),
            m: 0,
            expected: 1,
            found: twice_k2 / 2,
            pass: k_squared == (1, 1),
        });
        checks.push(FormulaCheck { name: "P2 = chi + K^2".into(), m: 2, expected: 4, found: p(2), pass: p(2) == 4 });
        if k_squared.1 == 1 {
            let k2 = k_squared.0;
            for m in 2..plurigenera.len() {
                let mi = m as i64;
                let expected = chi + mi * (mi - 1) / 2 * k2;
                checks.push(FormulaCheck {
                    name: "P_m = chi + m(m-1)/2 K^2".into(),
                    m: m as u32,
                    expected,
                    found: p(m),
                    pass: p(m) == expected,
                });
            }
            let mut m = 1usize;
            while 2 * m + 1 < plurigenera.len() {
                let mi = m as i64;
                let expected = chi + mi * (2 * mi + 1) * k2;
                checks.push(FormulaCheck {
                    name: "P_{2m+1} = chi + m(2m+1) K^2".into(),
                    m: (2 * m + 1) as u32,
                    expected,
                    found: p(2 * m + 1),
                    pass: p(2 * m + 1) == expected,
                });
                m += 1;
            }
        }
    }
    InvariantReport { dimension, is_curve, chi, k_squared, pg, q, plurigenera: plurigenera.to_vec(), checks }
}

/// [`check_invariants_of`] applied to the expansion of a series.
pub fn check_invariants(series: &RationalSeries) -> InvariantReport {
    check_invariants_of(&series.expand(PLURIGENERA_UPTO), series.canonical().pole_order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::monomial_counts;
    use proptest::prelude::*;

    fn mono(e: &[u16], w: &[u32]) -> Monomial {
        Monomial::new(crate::ring::Exponents::from_slice(e), w)
    }

    #[test]
    fn small_numerators() {
        // (x^2) in one variable
        let s = hilbert_numerator(&[mono(&[2], &[1])], &[1]);
        assert_eq!(s.numerator(), &[1, 0, -1]);
        assert_eq!(s.canonical(), RationalSeries::new(vec![1, 1], vec![]));
        // zero ideal
        let w = [1, 1, 2, 5];
        assert_eq!(hilbert_numerator(&[], &w), RationalSeries::free(&w));
        // (xy)
        let s = hilbert_numerator(&[mono(&[1, 1], &[1, 1])], &[1, 1]);
        assert_eq!(s.numerator(), &[1, 0, -1]);
    }

    #[test]
    fn target_series() {
        let s = i_surface_series();
        assert_eq!(&s.expand(5), &[1, 2, 4, 6, 9, 13]);
        // oracle: monomials of degree m minus those of degree m - 10
        let counts = monomial_counts(&[1, 1, 2, 5], 20);
        let oracle: Vec<i64> =
            (0..=20).map(|m| counts[m] as i64 - if m >= 10 { counts[m - 10] as i64 } else { 0 }).collect();
        assert_eq!(s.expand(20), oracle);
        for m in 2..=20i64 {
            assert_eq!(oracle[m as usize], 3 + m * (m - 1) / 2);
        }
        assert_eq!(s.to_string(), "num = 1 - t^10; den = (1-t)(1-t)(1-t^2)(1-t^5)");
        assert_eq!(s.pole_order(), 3);
    }

    #[test]
    fn dd_series_cancels() {
        let mut num = vec![1];
        times_one_minus(&mut num, 2);
        times_one_minus(&mut num, 10);
        let dd = RationalSeries::new(num, vec![1, 1, 2, 2, 5]);
        assert!(dd.same_function(&i_surface_series()));
        assert!(dd.canonical().same_function(&i_surface_series()));
        assert_eq!(dd.canonical().denominator().len(), 3);
    }

    #[test]
    fn component_counts() {
        // type D: (1 - t^10) / ((1-t)(1-t^2)^2(1-t^5)), even m gives 2 + m^2/4
        let d = RationalSeries::new(
            {
                let mut n = vec![1];
                times_one_minus(&mut n, 10);
                n
            },
            vec![1, 2, 2, 5],
        );
        let c = d.expand(6);
        assert_eq!((c[2], c[4], c[6]), (3, 6, 11));
        // type E: (1 - t^12) / ((1-t)^2(1-t^4)(1-t^6)) at m = 1
        let mut n = vec![1];
        times_one_minus(&mut n, 12);
        let e = RationalSeries::new(n, vec![1, 1, 4, 6]);
        assert_eq!(e.expand(1)[1], 2);
        assert_eq!(e.expand(0), vec![1]);
    }

    #[test]
    fn invariants() {
        let r = check_invariants(&i_surface_series());
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!((r.pg, r.chi, r.k_squared, r.q), (2, 3, (1, 1), 0));
        assert_eq!((r.plurigenera[2], r.plurigenera[3], r.plurigenera[5]), (4, 6, 13));

        // the free ring agrees up to degree 9, then P_10 is one too large
        let free = check_invariants(&RationalSeries::free(&[1, 1, 2, 5]));
        assert!(!free.all_pass());
        assert!(free.failures().any(|f| f.m == 10));

        let curve = check_invariants(&i_surface_series().times_one_minus(1));
        assert!(curve.is_curve);
        assert!(curve.checks.is_empty());
        assert!(!curve.all_pass());
    }

    #[test]
    fn pole_orders() {
        assert_eq!(RationalSeries::free(&[1, 1, 1]).pole_order(), 3);
        assert_eq!(RationalSeries::new(vec![], vec![1]).pole_order(), -1);
        let w = [1, 1, 1];
        let irrelevant: Vec<Monomial> =
            (0..3).map(|i| { let mut e = [0u16; 3]; e[i] = 1; mono(&e, &w) }).collect();
        assert_eq!(hilbert_numerator(&irrelevant, &w).pole_order(), 0);
    }

    fn brute_force_counts(gens: &[Vec<u16>], weights: &[u32], upto: u32) -> Vec<i64> {
        (0..=upto)
            .map(|d| {
                crate::ring::monomials_of_degree(weights, d)
                    .iter()
                    .filter(|m| !gens.iter().any(|g| g.iter().zip(m.exps()).all(|(a, b)| a <= b)))
                    .count() as i64
            })
            .collect()
    }

    proptest! {
        #[test]
        fn pivot_recursion_matches_counting(
            gens in proptest::collection::vec(proptest::collection::vec(0u16..4, 3), 0..6),
            weights in proptest::collection::vec(1u32..4, 3),
        ) {
            let monos: Vec<Monomial> = gens.iter().map(|g| mono(g, &weights)).collect();
            let s = hilbert_numerator(&monos, &weights);
            prop_assert_eq!(s.expand(15), brute_force_counts(&gens, &weights, 15));
            let c = s.canonical();
            prop_assert!(c.same_function(&s));
            prop_assert_eq!(c.expand(15), s.expand(15));
        }
    }
}
