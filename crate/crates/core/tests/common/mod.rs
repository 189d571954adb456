//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use canring::groebner::GbOptions;
use canring::ring::{monomials_of_degree, Monomial, Polynomial, Ring, RingRef};
use canring::{Field, Ideal, PrimeField};
use rand::{Rng, RngCore};

pub type Poly = Polynomial<PrimeField>;

pub fn fp() -> PrimeField {
    PrimeField::default()
}

/// Random homogeneous polynomial with roughly `density` of the monomials present.
pub fn random_homogeneous(r: &RingRef<PrimeField>, degree: u32, density: f64, rng: &mut impl RngCore) -> Poly {
    let f = r.field();
    let mut terms: Vec<(Monomial, u32)> = Vec::new();
    for m in monomials_of_degree(r.weights(), degree) {
        if rng.random_bool(density) {
            terms.push((m, f.random_nonzero(rng).unwrap()));
        }
    }
    Polynomial::from_terms(r, terms)
}

/// `p ∈ span{ m g : g ∈ gens, deg(m g) = deg p }`, decided by Gaussian
/// elimination on coefficient vectors in the degree of `p`.
pub fn span_contains(gens: &[Poly], p: &Poly) -> bool {
    let Some(d) = p.homogeneous_degree() else { return p.is_zero() };
    let r = p.ring();
    let field = r.field();
    let basis = monomials_of_degree(r.weights(), d);
    let index = |m: &Monomial| basis.iter().position(|b| b == m).expect("monomial of degree d");
    let vector = |q: &Poly| {
        let mut v = vec![0u32; basis.len()];
        for (m, c) in q.terms() {
            v[index(m)] = *c;
        }
        v
    };
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        let Some(e) = g.homogeneous_degree() else { continue };
        if e > d {
            continue;
        }
        for m in monomials_of_degree(r.weights(), d - e) {
            rows.push(vector(&g.mul_term(&m, &field.one())));
        }
    }
    let mut pivots: Vec<(usize, Vec<u32>)> = Vec::new();
    let reduce = |mut v: Vec<u32>, pivots: &[(usize, Vec<u32>)]| {
        for (col, row) in pivots {
            let c = v[*col];
            if c != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a = field.sub(a, &field.mul(&c, b));
                }
            }
        }
        v
    };
    for row in rows {
        let v = reduce(row, &pivots);
        if let Some(col) = v.iter().position(|&c| c != 0) {
            let inv = field.inv(&v[col]).unwrap();
            let v: Vec<u32> = v.iter().map(|c| field.mul(c, &inv)).collect();
            for (_, other) in pivots.iter_mut() {
                let c = other[col];
                if c != 0 {
                    for (a, b) in other.iter_mut().zip(&v) {
                        *a = field.sub(a, &field.mul(&c, b));
                    }
                }
            }
            pivots.push((col, v));
        }
    }
    reduce(vector(p), &pivots).iter().all(|&c| c == 0)
}

/// Outcome of the brute-force membership comparison.
pub struct MembershipRun {
    pub ideals: usize,
    pub queries: usize,
    pub mismatches: Vec<String>,
}

/// Random ideals in at most three variables with generators of degree at
/// most 4; membership of random members and random polynomials up to degree 8
/// is compared against [`span_contains`].
pub fn membership_oracle(count: usize, seed: u64) -> MembershipRun {
    let mut rng = canring::coeff::seeded_rng(seed);
    let names = ["x", "y", "z"];
    let mut queries = 0;
    let mut mismatches = Vec::new();
    for case in 0..count {
        let n = rng.random_range(1..=3usize);
        let weights: Vec<u32> = (0..n).map(|_| if rng.random_bool(0.7) { 1 } else { 2 }).collect();
        let r = Ring::new(fp(), &names[..n], &weights).unwrap();
        let k = rng.random_range(1..=3usize);
        let gens: Vec<Poly> = (0..k)
            .map(|_| loop {
                let d = rng.random_range(1..=4u32);
                let g = random_homogeneous(&r, d, 0.5, &mut rng);
                if !g.is_zero() {
                    break g;
                }
            })
            .collect();
        let ideal = Ideal::new(&r, gens.clone()).unwrap();
        let gb = ideal.groebner(&GbOptions::full()).unwrap();
        for q in 0..6 {
            let d = rng.random_range(1..=8u32);
            let p = if q % 2 == 0 {
                let mut acc = Polynomial::zero(&r);
                for g in &gens {
                    let e = g.homogeneous_degree().unwrap();
                    if e <= d {
                        acc = acc.add(&random_homogeneous(&r, d - e, 0.6, &mut rng).mul(g));
                    }
                }
                acc
            } else {
                random_homogeneous(&r, d, 0.6, &mut rng)
            };
            if p.is_zero() {
                continue;
            }
            queries += 1;
            let kernel = gb.contains(&p).unwrap();
            let oracle = span_contains(&gens, &p);
            if kernel != oracle {
                mismatches.push(format!("case {case}: {p} in {gens:?}: kernel {kernel}, oracle {oracle}"));
            }
        }
    }
    MembershipRun { ideals: count, queries, mismatches }
}

/// Random monomial ideals; `I ∩ J` must equal the ideal of pairwise lcms.
pub fn lcm_oracle(count: usize, seed: u64) -> Vec<String> {
    let mut rng = canring::coeff::seeded_rng(seed);
    let r = Ring::new(fp(), &["x", "y", "z"], &[1, 1, 2]).unwrap();
    let mut bad = Vec::new();
    let mono = |rng: &mut rand_chacha::ChaCha8Rng| {
        let e: Vec<u16> = (0..3).map(|_| rng.random_range(0..=3u16)).collect();
        r.monomial(&e)
    };
    for case in 0..count {
        let a: Vec<Monomial> = (0..rng.random_range(1..=3)).map(|_| mono(&mut rng)).collect();
        let b: Vec<Monomial> = (0..rng.random_range(1..=3)).map(|_| mono(&mut rng)).collect();
        let as_ideal = |ms: &[Monomial]| {
            Ideal::new(&r, ms.iter().map(|m| Polynomial::monomial(&r, m.clone(), 1)).collect()).unwrap()
        };
        let lcms: Vec<Monomial> = a.iter().flat_map(|m| b.iter().map(|n| m.lcm(n, r.weights()))).collect();
        let got = as_ideal(&a).intersect(&as_ideal(&b), &GbOptions::full()).unwrap();
        if !got.equals(&as_ideal(&lcms), &GbOptions::full()).unwrap() {
            bad.push(format!("case {case}: {a:?} cap {b:?}"));
        }
    }
    bad
}

/// Random numeric skew `4×4` matrices: the Pfaffian must equal `af - be + cd`
/// and square to the determinant.
pub fn pfaffian_oracle(count: usize, seed: u64) -> Vec<String> {
    let mut rng = canring::coeff::seeded_rng(seed);
    let f = fp();
    let r = Ring::new(f, &["t"], &[1]).unwrap();
    let mut bad = Vec::new();
    for case in 0..count {
        let v: Vec<u32> = (0..6).map(|_| rng.random_range(0..f.modulus())).collect();
        let (a, b, c, d, e, g) = (v[0], v[1], v[2], v[3], v[4], v[5]);
        let upper = [[0, a, b, c], [0, 0, d, e], [0, 0, 0, g]];
        let entry = |i: usize, j: usize| -> u32 {
            match i.cmp(&j) {
                std::cmp::Ordering::Less => upper[i][j],
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => f.neg(&upper[j][i]),
            }
        };
        let m: Vec<Vec<Poly>> =
            (0..4).map(|i| (0..4).map(|j| Polynomial::constant(&r, entry(i, j))).collect()).collect();
        let pf = canring::strata::pfaffians_4x4(&m).unwrap();
        let closed = f.add(&f.sub(&f.mul(&a, &g), &f.mul(&b, &e)), &f.mul(&c, &d));
        let got = pf[0].coeff_of(&[0]);
        let det = determinant(&(0..4).map(|i| (0..4).map(|j| entry(i, j)).collect()).collect::<Vec<Vec<u32>>>(), &f);
        if got != closed || f.mul(&got, &got) != det {
            bad.push(format!("case {case}: pf {got}, closed form {closed}, det {det}"));
        }
    }
    bad
}

/// Determinant over the field by elimination.
pub fn determinant(m: &[Vec<u32>], f: &PrimeField) -> u32 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = f.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| a[r][col] != 0) else { return 0 };
        if p != col {
            a.swap(p, col);
            det = f.neg(&det);
        }
        det = f.mul(&det, &a[col][col]);
        let inv = f.inv(&a[col][col]).unwrap();
        for r in col + 1..n {
            let factor = f.mul(&a[r][col], &inv);
            for c in col..n {
                let sub = f.mul(&factor, &a[col][c]);
                a[r][c] = f.sub(&a[r][c], &sub);
            }
        }
    }
    det
}
