//! Constructors for the surfaces, curves and components.

use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;

use crate::coeff::{seeded_rng, Field, PrimeField};
use crate::error::Result;
use crate::groebner::{maximal_minors, Ideal};
use crate::ring::{monomials_of_degree, parse_poly, Polynomial, Ring, RingRef};

use super::{StratumInstance, StratumKind};

type Poly = Polynomial<PrimeField>;
type PRing = RingRef<PrimeField>;

pub(crate) fn ring(field: PrimeField, names: &[&str], weights: &[u32]) -> PRing {
    Ring::new(field, names, weights).expect("valid ring")
}

pub(crate) fn var(r: &PRing, name: &str) -> Poly {
    Polynomial::var_named(r, name).unwrap_or_else(|| panic!("no variable {name}"))
}

pub(crate) fn expr(r: &PRing, text: &str) -> Poly {
    parse_poly(text, r).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Dense form of the given degree in the named variables, every coefficient a
/// uniform nonzero residue.
pub fn random_form(r: &PRing, vars: &[&str], degree: u32, rng: &mut ChaCha8Rng) -> Poly {
    let idx: Vec<usize> = vars.iter().map(|v| r.var_index(v).expect("known variable")).collect();
    let weights: Vec<u32> = idx.iter().map(|&i| r.weights()[i]).collect();
    let field = r.field();
    let terms = monomials_of_degree(&weights, degree)
        .into_iter()
        .map(|m| {
            let mut exps = vec![0u16; r.nvars()];
            for (k, &i) in idx.iter().enumerate() {
                exps[i] = m.exps()[k];
            }
            (r.monomial(&exps), field.random_nonzero(rng).expect("prime field"))
        })
        .collect();
    Polynomial::from_terms(r, terms)
}

/// Replaces the coefficient of one monomial.
pub(crate) fn set_coeff(p: &Poly, exps: &[u16], c: u32) -> Poly {
    let r = p.ring();
    let m = r.monomial(exps);
    let mut terms: Vec<_> = p.terms().iter().filter(|(t, _)| *t != m).cloned().collect();
    terms.push((m, c));
    Polynomial::from_terms(r, terms)
}

/// Moves `p` into `target`, matching variables by name.
pub fn embed(p: &Poly, target: &PRing) -> Poly {
    let map: Vec<usize> = p
        .ring()
        .names()
        .iter()
        .map(|n| target.var_index(n).unwrap_or_else(|| panic!("{n} missing from target ring")))
        .collect();
    p.map_vars(target, &map)
}

fn exps_of(r: &PRing, pairs: &[(&str, u16)]) -> Vec<u16> {
    let mut e = vec![0u16; r.nvars()];
    for (n, k) in pairs {
        e[r.var_index(n).unwrap()] = *k;
    }
    e
}

fn instance(kind: StratumKind, seed: u64, gens: Vec<Poly>, params: Vec<(&str, Poly)>) -> StratumInstance {
    let ring = gens[0].ring().clone();
    StratumInstance {
        kind,
        seed,
        ideal: Ideal::new(&ring, gens).expect("same ring"),
        ring,
        parameters: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        points: BTreeMap::new(),
        rerolls: 0,
    }
}

/// `z^2 - f10(x1, x2, y)` in P(1,1,2,5); with `through_0010` the `y^5`
/// coefficient of `f10` is zero, so the surface contains `(0:0:1:0)`.
pub fn build_type_a(field: PrimeField, seed: u64, through_0010: bool) -> StratumInstance {
    let r = ring(field, &["x1", "x2", "y", "z"], &[1, 1, 2, 5]);
    let mut rng = seeded_rng(seed);
    let mut f10 = random_form(&r, &["x1", "x2", "y"], 10, &mut rng);
    if through_0010 {
        f10 = set_coeff(&f10, &exps_of(&r, &[("y", 5)]), 0);
    }
    let g = expr(&r, "z^2").sub(&f10);
    let mut inst = instance(StratumKind::TypeA, seed, vec![g], vec![("f10", f10)]);
    inst.points.insert("0001".into(), vec![0, 0, 0, 1]);
    inst.points.insert("0010".into(), vec![0, 0, 1, 0]);
    inst
}

#[derive(Clone, Debug)]
pub(crate) struct TypeBData {
    pub ring: PRing,
    pub g8: Poly,
    pub k10: Poly,
}

pub(crate) fn type_b_data(field: PrimeField, seed: u64) -> TypeBData {
    let r = ring(field, &["x0", "x", "y", "w", "v", "z", "u"], &[1, 1, 2, 3, 4, 5, 6]);
    let mut rng = seeded_rng(seed);
    let g8 = random_form(&r, &["x0", "y", "w", "v"], 8, &mut rng);
    let g8 = set_coeff(&g8, &exps_of(&r, &[("v", 2)]), 1);
    let k10 = random_form(&r, &["x0", "x", "v"], 10, &mut rng);
    TypeBData { ring: r, g8, k10 }
}

/// The 2×2 minors of `[[lambda, y, w, z], [x, w, v, u]]` and the three
/// relations, `lambda` a constant; `lambda = 0` is the surface itself.
pub(crate) fn type_b_generators(d: &TypeBData, lambda: u32) -> Vec<Poly> {
    let r = &d.ring;
    let l = Polynomial::constant(r, lambda);
    let m = vec![
        vec![l.clone(), var(r, "y"), var(r, "w"), var(r, "z")],
        vec![var(r, "x"), var(r, "w"), var(r, "v"), var(r, "u")],
    ];
    let mut gens: Vec<Poly> = maximal_minors(&m, 2).into_iter().filter(|p| !p.is_zero()).collect();
    let (g, k, x) = (&d.g8, &d.k10, var(r, "x"));
    let l2 = l.mul(&l);
    gens.push(expr(r, "z^2").sub(&var(r, "y").mul(g)).sub(&l2.mul(k)));
    gens.push(expr(r, "z*u").sub(&var(r, "w").mul(g)).sub(&l.mul(&x).mul(k)));
    gens.push(expr(r, "u^2").sub(&var(r, "v").mul(g)).sub(&x.mul(&x).mul(k)));
    gens
}

/// Nine equations in P(1,1,2,3,4,5,6): a determinantal 2×4 block and three
/// relations, with `v^2` normalized to coefficient 1 in `g8`.
pub fn build_type_b(field: PrimeField, seed: u64) -> StratumInstance {
    let d = type_b_data(field, seed);
    let gens = type_b_generators(&d, 0);
    instance(StratumKind::TypeB, seed, gens, vec![("g8", d.g8), ("k10", d.k10)])
}

/// Complete intersection `(x1 x2, z^2 - f10)` in P(1,1,2,2,5), with `y2^5`
/// absent from `f10` so that `y1` divides `f10` modulo `(x1, x2)`.
pub fn build_type_dd(field: PrimeField, seed: u64) -> StratumInstance {
    let r = ring(field, &["x1", "x2", "y1", "y2", "z"], &[1, 1, 2, 2, 5]);
    let mut rng = seeded_rng(seed);
    let f10 = random_form(&r, &["x1", "x2", "y1", "y2"], 10, &mut rng);
    let f10 = set_coeff(&f10, &exps_of(&r, &[("y2", 5)]), 0);
    let gens = vec![expr(&r, "x1*x2"), expr(&r, "z^2").sub(&f10)];
    instance(StratumKind::TypeDD, seed, gens, vec![("f10", f10)])
}

/// `z^2 - f10(x, y)` in P(1,2,5).
pub fn build_curve_a(field: PrimeField, seed: u64) -> StratumInstance {
    let r = ring(field, &["x", "y", "z"], &[1, 2, 5]);
    let mut rng = seeded_rng(seed);
    let f10 = random_form(&r, &["x", "y"], 10, &mut rng);
    let g = expr(&r, "z^2").sub(&f10);
    instance(StratumKind::CurveA, seed, vec![g], vec![("f10", f10)])
}

/// The curve ring of type B in P(1,2,3,4,5,6).
pub fn build_curve_b(field: PrimeField, seed: u64) -> StratumInstance {
    let r = ring(field, &["x", "y", "w", "v", "z", "u"], &[1, 2, 3, 4, 5, 6]);
    let mut rng = seeded_rng(seed);
    let g8 = random_form(&r, &["y", "v"], 8, &mut rng);
    let h8 = random_form(&r, &["x", "v"], 8, &mut rng);
    let m = vec![
        vec![Polynomial::zero(&r), var(&r, "y"), var(&r, "w"), var(&r, "z")],
        vec![var(&r, "x"), var(&r, "w"), var(&r, "v"), var(&r, "u")],
    ];
    let mut gens: Vec<Poly> = maximal_minors(&m, 2).into_iter().filter(|p| !p.is_zero()).collect();
    gens.push(expr(&r, "z^2").sub(&var(&r, "y").mul(&g8)));
    gens.push(expr(&r, "z*u").sub(&var(&r, "w").mul(&g8)));
    gens.push(expr(&r, "u^2").sub(&var(&r, "v").mul(&g8)).sub(&expr(&r, "x^4").mul(&h8)));
    instance(StratumKind::CurveB, seed, gens, vec![("g8", g8), ("h8", h8)])
}

/// `z^2 - f10(x, y1, y2)` in P(1,2,2,5).
pub fn build_type_d_component(field: PrimeField, seed: u64) -> StratumInstance {
    let r = ring(field, &["x", "y1", "y2", "z"], &[1, 2, 2, 5]);
    let mut rng = seeded_rng(seed);
    let f10 = random_form(&r, &["x", "y1", "y2"], 10, &mut rng);
    let g = expr(&r, "z^2").sub(&f10);
    instance(StratumKind::TypeDComponent, seed, vec![g], vec![("f10", f10)])
}

/// `w^2 - g12(u0, u1, v)` in P(1,1,4,6).
pub fn build_type_e_component(field: PrimeField, seed: u64) -> StratumInstance {
    let r = ring(field, &["u0", "u1", "v", "w"], &[1, 1, 4, 6]);
    let mut rng = seeded_rng(seed);
    let g12 = random_form(&r, &["u0", "u1", "v"], 12, &mut rng);
    let g = expr(&r, "w^2").sub(&g12);
    instance(StratumKind::TypeEComponent, seed, vec![g], vec![("g12", g12)])
}

/// The two pinched K3 components and the parameters derived from them.
#[derive(Clone, Debug)]
pub(crate) struct DeData {
    /// `z^2 - y0 (y1 + y0)^2 (y1 - y0)^2 - x^2 f8` in P(1,2,2,5).
    pub x1_tilde: Poly,
    /// `w^2 - v (v - u1^4)^2 - u0 g11` in P(1,1,4,6).
    pub x2_tilde: Poly,
    pub f8: Poly,
    pub g11: Poly,
    /// Over the ring `(a0, b0, c, d)`.
    pub a8: Poly,
    pub b6: Poly,
    /// Over the ring `(a1, b0, b1, d)`.
    pub c11: Poly,
    pub d10: Poly,
}

pub(crate) fn de_data(field: PrimeField, seed: u64) -> DeData {
    let mut rng = seeded_rng(seed);
    let r1 = ring(field, &["x", "y0", "y1", "z"], &[1, 2, 2, 5]);
    let f8 = random_form(&r1, &["x", "y0", "y1"], 8, &mut rng);
    let x1_tilde = expr(&r1, "z^2 - y0*(y1 + y0)^2*(y1 - y0)^2").sub(&expr(&r1, "x^2").mul(&f8));
    let r2 = ring(field, &["u0", "u1", "v", "w"], &[1, 1, 4, 6]);
    let g11 = random_form(&r2, &["u0", "u1", "v"], 11, &mut rng);
    let x2_tilde = expr(&r2, "w^2 - v*(v - u1^4)^2").sub(&expr(&r2, "u0").mul(&g11));
    let (a8, b6) = split_f8(&f8);
    let (c11, d10) = split_g11(&g11);
    DeData { x1_tilde, x2_tilde, f8, g11, a8, b6, c11, d10 }
}

/// Rewrites `x^2 f8(x, y0, y1)` as `a0^2 A8 + a0 c B6` under `a0 = x`,
/// `b0 = y0`, `c = x y1`, `d = y1^2`: a term `x^(2+a) y0^b y1^k` goes to
/// `A8` as `a0^a b0^b d^(k/2)` when `k` is even and to `B6` as
/// `a0^a b0^b d^((k-1)/2)` when `k` is odd.
pub fn split_f8(f8: &Poly) -> (Poly, Poly) {
    let src = f8.ring();
    let r = ring(*src.field(), &["a0", "b0", "c", "d"], &[1, 2, 3, 4]);
    let (ix, iy0, iy1) = (src.var_index("x").unwrap(), src.var_index("y0").unwrap(), src.var_index("y1").unwrap());
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for (m, c) in f8.terms() {
        let e = m.exps();
        let (a, b, k) = (e[ix], e[iy0], e[iy1]);
        let bucket = if k % 2 == 0 { &mut even } else { &mut odd };
        bucket.push((r.monomial(&[a, b, 0, k / 2]), *c));
    }
    (Polynomial::from_terms(&r, even), Polynomial::from_terms(&r, odd))
}

/// Rewrites `u0 g11(u0, u1, v)` as `a1 C11 + b1 D10` under `a1 = u0`,
/// `b0 = u1^2`, `b1 = u0 u1`, `d = v`: a term `u0^(1+a) u1^b v^k` goes to
/// `C11` as `a1^a b0^(b/2) d^k` when `b` is even and to `D10` as
/// `a1^a b0^((b-1)/2) d^k` when `b` is odd.
pub fn split_g11(g11: &Poly) -> (Poly, Poly) {
    let src = g11.ring();
    let r = ring(*src.field(), &["a1", "b0", "b1", "d"], &[1, 2, 2, 4]);
    let (iu0, iu1, iv) = (src.var_index("u0").unwrap(), src.var_index("u1").unwrap(), src.var_index("v").unwrap());
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for (m, c) in g11.terms() {
        let e = m.exps();
        let (a, b, k) = (e[iu0], e[iu1], e[iv]);
        let bucket = if b % 2 == 0 { &mut even } else { &mut odd };
        bucket.push((r.monomial(&[a, b / 2, 0, k]), *c));
    }
    (Polynomial::from_terms(&r, even), Polynomial::from_terms(&r, odd))
}

pub(crate) fn x1_de_generators(r: &PRing, d: &DeData) -> Vec<Poly> {
    let e = |t: &str| expr(r, t);
    let m = vec![
        vec![e("a0"), e("d - b0^2"), e("e"), e("c"), e("f"), e("g")],
        vec![e("c"), e("f"), e("g"), e("a0*d"), e("(d - b0^2)*d"), e("e*d")],
    ];
    let mut gens = maximal_minors(&m, 2);
    let (a8, b6) = (embed(&d.a8, r), embed(&d.b6, r));
    let (aa, ac) = (e("a0^2"), e("a0*c"));
    gens.push(e("e^2 - b0*(d - b0^2)^2").sub(&aa.mul(&a8)).sub(&ac.mul(&b6)));
    gens.push(e("e*g - b0*f*(d - b0^2)").sub(&ac.mul(&a8)).sub(&e("a0^2*d").mul(&b6)));
    gens.push(e("g^2 - b0*d*(d - b0^2)^2").sub(&e("a0^2*d").mul(&a8)).sub(&e("a0*c*d").mul(&b6)));
    gens
}

pub(crate) fn x2_de_generators(r: &PRing, d: &DeData) -> Vec<Poly> {
    let e = |t: &str| expr(r, t);
    let m = vec![
        vec![e("a1"), e("d - b0^2"), e("f"), e("b1"), e("e"), e("g")],
        vec![e("b1"), e("e"), e("g"), e("a1*b0"), e("(d - b0^2)*b0"), e("f*b0")],
    ];
    let mut gens = maximal_minors(&m, 2);
    let (c11, d10) = (embed(&d.c11, r), embed(&d.d10, r));
    gens.push(e("f^2 - d*(d - b0^2)^2").sub(&e("a1").mul(&c11)).sub(&e("b1").mul(&d10)));
    gens.push(e("f*g - d*e*(d - b0^2)").sub(&e("b1").mul(&c11)).sub(&e("a1*b0").mul(&d10)));
    gens.push(e("g^2 - b0*d*(d - b0^2)^2").sub(&e("a1*b0").mul(&c11)).sub(&e("b0*b1").mul(&d10)));
    gens
}

pub(crate) fn x1_de_ring(field: PrimeField) -> PRing {
    ring(field, &["a0", "b0", "c", "d", "e", "f", "g"], &[1, 2, 3, 4, 5, 6, 7])
}

pub(crate) fn x2_de_ring(field: PrimeField) -> PRing {
    ring(field, &["a1", "b0", "b1", "d", "e", "f", "g"], &[1, 2, 2, 4, 5, 6, 7])
}

pub(crate) fn de_ring(field: PrimeField) -> PRing {
    ring(
        field,
        &["a0", "a1", "b0", "b1", "c", "d", "e", "f", "g"],
        &[1, 1, 2, 2, 3, 4, 5, 6, 7],
    )
}

/// The component of type D: 15 minors and three relations in P(1,2,3,4,5,6,7).
pub fn build_x1_de(field: PrimeField, seed: u64) -> StratumInstance {
    let d = de_data(field, seed);
    let r = x1_de_ring(field);
    let gens = x1_de_generators(&r, &d);
    let (a8, b6) = (embed(&d.a8, &r), embed(&d.b6, &r));
    instance(StratumKind::X1DE, seed, gens, vec![("f8", d.f8), ("A8", a8), ("B6", b6)])
}

/// The component of type E: 15 minors and three relations in P(1,2,2,4,5,6,7).
pub fn build_x2_de(field: PrimeField, seed: u64) -> StratumInstance {
    let d = de_data(field, seed);
    let r = x2_de_ring(field);
    let gens = x2_de_generators(&r, &d);
    let (c11, d10) = (embed(&d.c11, &r), embed(&d.d10, &r));
    instance(StratumKind::X2DE, seed, gens, vec![("g11", d.g11), ("C11", c11), ("D10", d10)])
}

/// The matrix whose 2×2 minors cut out the union of the two components.
pub(crate) fn de_matrix(r: &PRing) -> Vec<Vec<Poly>> {
    let e = |t: &str| expr(r, t);
    vec![
        vec![e("0"), e("0"), e("a0"), e("c")],
        vec![e("0"), e("0"), e("c"), e("a0*d")],
        vec![e("a1"), e("b1"), e("d - b0^2"), e("f")],
        vec![e("b1"), e("a1*b0"), e("e"), e("g")],
    ]
}

/// The relations for `e^2, eg, f^2, fg, g^2`; `g^2` carries `b0 b1 D10`.
pub(crate) fn de_relations(r: &PRing, d: &DeData) -> Vec<Poly> {
    let e = |t: &str| expr(r, t);
    let (a8, b6, c11, d10) = (embed(&d.a8, r), embed(&d.b6, r), embed(&d.c11, r), embed(&d.d10, r));
    vec![
        e("e^2 - b0*(d - b0^2)^2").sub(&e("a0^2").mul(&a8)).sub(&e("a0*c").mul(&b6)),
        e("e*g - b0*f*(d - b0^2)").sub(&e("a0*c").mul(&a8)).sub(&e("a0^2*d").mul(&b6)),
        e("f^2 - d*(d - b0^2)^2").sub(&e("a1").mul(&c11)).sub(&e("b1").mul(&d10)),
        e("f*g - d*e*(d - b0^2)").sub(&e("b1").mul(&c11)).sub(&e("a1*b0").mul(&d10)),
        e("g^2 - d*e^2").sub(&e("a1*b0").mul(&c11)).sub(&e("b0*b1").mul(&d10)),
    ]
}

/// The glued surface in P(1,1,2,2,3,4,5,6,7): nonzero 2×2 minors of the 4×4
/// matrix and five relations.
pub fn build_type_de(field: PrimeField, seed: u64) -> StratumInstance {
    let d = de_data(field, seed);
    let r = de_ring(field);
    let mut gens: Vec<Poly> = maximal_minors(&de_matrix(&r), 2).into_iter().filter(|p| !p.is_zero()).collect();
    gens.extend(de_relations(&r, &d));
    let params = vec![
        ("A8", embed(&d.a8, &r)),
        ("B6", embed(&d.b6, &r)),
        ("C11", embed(&d.c11, &r)),
        ("D10", embed(&d.d10, &r)),
    ];
    instance(StratumKind::TypeDE, seed, gens, params)
}

/// Builds any kind with default options.
pub fn build(kind: StratumKind, field: PrimeField, seed: u64) -> Result<StratumInstance> {
    Ok(match kind {
        StratumKind::TypeA => build_type_a(field, seed, false),
        StratumKind::TypeB => build_type_b(field, seed),
        StratumKind::TypeDD => build_type_dd(field, seed),
        StratumKind::TypeDE => build_type_de(field, seed),
        StratumKind::CurveA => build_curve_a(field, seed),
        StratumKind::CurveB => build_curve_b(field, seed),
        StratumKind::TypeDComponent => build_type_d_component(field, seed),
        StratumKind::TypeEComponent => build_type_e_component(field, seed),
        StratumKind::X1DE => build_x1_de(field, seed),
        StratumKind::X2DE => build_x2_de(field, seed),
    })
}
