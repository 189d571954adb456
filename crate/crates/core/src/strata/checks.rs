//! Decomposition of type B, the invariant-cover identity and the glueing maps.

use std::collections::HashMap;

use crate::coeff::{Field, PrimeField};
use crate::error::{Error, Result};
use crate::groebner::{maximal_minors, GbOptions, Ideal};
use crate::ring::Polynomial;

use super::build::{expr, ring, var};
use super::families::invariant_cover_form;
use super::report::{Check, Report, Status};
use super::{StratumInstance, StratumKind};

type Poly = Polynomial<PrimeField>;

/// The pieces of a type B surface along `x = 0`.
#[derive(Clone, Debug)]
pub struct BDecomposition {
    /// `I + (x)`.
    pub x1: Ideal<PrimeField>,
    /// `I : x^∞` in the ambient ring.
    pub x2_saturated: Ideal<PrimeField>,
    /// `I : x^∞` restricted to `(x0, x, v, u)`: one generator of degree 12.
    pub x2: Ideal<PrimeField>,
    /// `X1 + X2` restricted to `(x0, v, u)`: one Weierstrass equation.
    pub e: Ideal<PrimeField>,
}

fn subring_part(ideal: &Ideal<PrimeField>, names: &[&str], opts: &GbOptions) -> Result<Ideal<PrimeField>> {
    let ring = ideal.ring();
    let keep: Vec<usize> = names.iter().map(|n| ring.var_index(n).unwrap()).collect();
    let sub = ring.subring(&keep)?;
    let gb = ideal.groebner(opts)?;
    let gens: Vec<Poly> = gb.elements().iter().filter_map(|g| g.restrict(&sub, &keep)).collect();
    Ideal::new(&sub, gens)
}

/// Splits a type B surface into the part on `x = 0`, the closure of the part
/// off it, and their intersection, checking the expected shapes.
pub fn decompose_type_b(x: &StratumInstance, opts: &GbOptions) -> Result<BDecomposition> {
    if x.kind != StratumKind::TypeB {
        return Err(Error::Check(format!("decomposition needs type-b, got {}", x.kind)));
    }
    let opts = GbOptions { truncation: None, ..*opts };
    let r = &x.ring;
    let x1 = x.ideal.plus(&[var(r, "x")])?;
    let x2_saturated = x.ideal.saturate(&var(r, "x"), &opts)?;
    let x2 = subring_part(&x2_saturated, &["x0", "x", "v", "u"], &opts)?;
    match x2.generators() {
        [g] if g.homogeneous_degree() == Some(12) => {}
        gens => {
            let shown: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            return Err(Error::Check(format!("X2 is not a degree 12 hypersurface: [{}]", shown.join(", "))));
        }
    }
    let sum = x1.sum(&x2_saturated)?;
    let e = subring_part(&sum, &["x0", "v", "u"], &opts)?;
    match e.generators() {
        [g] if weierstrass_shape(g) => {}
        gens => {
            let shown: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            return Err(Error::Check(format!("E is not a Weierstrass curve: [{}]", shown.join(", "))));
        }
    }
    Ok(BDecomposition { x1, x2_saturated, x2, e })
}

/// `u^2 - v^3 + ...` up to scaling, in the ring `(x0, v, u)`.
fn weierstrass_shape(g: &Poly) -> bool {
    let field = g.field();
    let u2 = g.coeff_of(&[0, 0, 2]);
    let v3 = g.coeff_of(&[0, 3, 0]);
    match field.inv(&u2) {
        Some(inv) => field.mul(&v3, &inv) == field.neg(&field.one()),
        None => false,
    }
}

/// Normal forms of the nine `2×2` minors of the symmetric `3×3` matrix
/// `[[y, w, z], [w, v, u], [z, u, g8]]` after substituting the invariants
/// `x0 = a0, y = a1^2, w = a1 b, v = b^2, z = a1 c, u = b c`, reduced modulo
/// `c^2 - g8(a0, a1^2, a1 b, b^2)`.
pub fn invariant_cover_check(field: PrimeField, seed: u64) -> Result<Report> {
    let mut report = Report::new("invariant-cover", seed, field.modulus());
    let g8 = invariant_cover_form(field, seed);
    let cover = ring(field, &["a0", "a1", "b", "c"], &[1, 1, 2, 4]);
    let e = |t: &str| expr(&cover, t);
    let inv = [e("a0"), e("a1^2"), e("a1*b"), e("b^2")];
    let g8_pulled = g8.substitute(&inv)?;
    let s1 = Ideal::new(&cover, vec![e("c^2").sub(&g8_pulled)])?;
    let gb = s1.groebner(&GbOptions::full())?;
    let b = ring(field, &["x0", "y", "w", "v", "z", "u"], &[1, 2, 3, 4, 5, 6]);
    let g8b = g8.map_vars(&b, &[0, 1, 2, 3]);
    let m = vec![
        vec![var(&b, "y"), var(&b, "w"), var(&b, "z")],
        vec![var(&b, "w"), var(&b, "v"), var(&b, "u")],
        vec![var(&b, "z"), var(&b, "u"), g8b],
    ];
    let images = [e("a0"), e("a1^2"), e("a1*b"), e("b^2"), e("a1*c"), e("b*c")];
    for (i, minor) in maximal_minors(&m, 2).iter().enumerate() {
        let start = std::time::Instant::now();
        let nf = gb.normal_form(&minor.substitute(&images)?);
        let status = if nf.is_zero() { Status::Pass } else { Status::Fail };
        let detail = if nf.is_zero() { format!("{minor} -> 0") } else { format!("{minor} -> {nf}") };
        report.push(Check::new(format!("minor {}", i + 1), status, detail, start.elapsed()));
    }
    Ok(report)
}

/// One row of the generator table: a generator of the glued surface and its
/// restrictions to the two pinched components.
pub const GLUEING_TABLE: [(&str, &str, &str); 9] = [
    ("a0", "x", "0"),
    ("a1", "0", "u0"),
    ("b0", "y0", "u1^2"),
    ("b1", "0", "u0*u1"),
    ("c", "x*y1", "0"),
    ("d", "y1^2", "v"),
    ("e", "z", "u1*(v - u1^4)"),
    ("f", "y1*(y1^2 - y0^2)", "w"),
    ("g", "y1*z", "u1*w"),
];

/// Pulls each generator back along `α(t, s) = (0, t^2, s, t(s^2 - t^4))` and
/// `β(t, s) = (0, t, s^2, s(s^2 - t^4))`, checks that both maps land on the
/// pinched components and that the distinguished points match.
pub fn glueing_param_check(field: PrimeField, seed: u64) -> Result<Report> {
    let mut report = Report::new("glueing", seed, field.modulus());
    let data = super::build::de_data(field, seed);
    let r1 = data.x1_tilde.ring().clone();
    let r2 = data.x2_tilde.ring().clone();
    let ts = ring(field, &["t", "s"], &[1, 2]);
    let p = |t: &str| expr(&ts, t);
    let alpha = [p("0"), p("t^2"), p("s"), p("t*(s^2 - t^4)")];
    let beta = [p("0"), p("t"), p("s^2"), p("s*(s^2 - t^4)")];
    for (gen, on1, on2) in GLUEING_TABLE {
        let start = std::time::Instant::now();
        let a = expr(&r1, on1).substitute(&alpha)?;
        let b = expr(&r2, on2).substitute(&beta)?;
        let (status, detail) = if a == b {
            (Status::Pass, format!("{gen}: {a}"))
        } else {
            (Status::Fail, format!("{gen}: alpha* = {a}, beta* = {b}"))
        };
        report.push(Check::new(format!("row {gen}"), status, detail, start.elapsed()));
    }
    for (name, eq, images) in [("alpha lands on X1", &data.x1_tilde, &alpha), ("beta lands on X2", &data.x2_tilde, &beta)] {
        let start = std::time::Instant::now();
        let pulled = eq.substitute(images)?;
        let status = if pulled.is_zero() { Status::Pass } else { Status::Fail };
        report.push(Check::new(name, status, format!("pullback {pulled}"), start.elapsed()));
    }
    let points: [(&str, &[Poly; 4], (i64, i64), [i64; 4]); 5] = [
        ("s1 = alpha(1:1)", &alpha, (1, 1), [0, 1, 1, 0]),
        ("s2 = alpha(1:-1)", &alpha, (1, -1), [0, 1, -1, 0]),
        ("q = beta(1:1) = beta(1:-1)", &beta, (1, -1), [0, 1, 1, 0]),
        ("r = alpha(0:1)", &alpha, (0, 1), [0, 0, 1, 0]),
        ("p = beta(0:1)", &beta, (0, 1), [0, 0, 1, 1]),
    ];
    for (name, map, (t, s), expected) in points {
        let start = std::time::Instant::now();
        let at = [field.from_i64(t), field.from_i64(s)];
        let image = map.iter().map(|c| c.eval(&at)).collect::<Result<Vec<_>>>()?;
        let want: Vec<u32> = expected.iter().map(|&v| field.from_i64(v)).collect();
        let mut ok = image == want;
        if name.starts_with('q') {
            let at1 = [field.one(), field.one()];
            let image1 = map.iter().map(|c| c.eval(&at1)).collect::<Result<Vec<_>>>()?;
            ok &= image1 == want;
        }
        let status = if ok { Status::Pass } else { Status::Fail };
        report.push(Check::new(name, status, format!("{expected:?}"), start.elapsed()));
    }
    Ok(report)
}

/// Substitutes the table images into `gens` (a component ring whose
/// variables are among `a0, a1, b0, b1, c, d, e, f, g`) and reduces modulo
/// the pinched equation.
pub(crate) fn pulls_back_to_zero(gens: &[Poly], table_column: usize, pinched: &Poly) -> Result<Vec<(usize, Poly)>> {
    let target = pinched.ring();
    let by_name: HashMap<String, Poly> = GLUEING_TABLE
        .iter()
        .map(|row| {
            let img = if table_column == 1 { row.1 } else { row.2 };
            (row.0.to_string(), expr(target, img))
        })
        .collect();
    let gb = Ideal::new(target, vec![pinched.clone()])?.groebner(&GbOptions::full())?;
    let mut bad = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let nf = gb.normal_form(&g.substitute_named(&by_name, target)?);
        if !nf.is_zero() {
            bad.push((i, nf));
        }
    }
    Ok(bad)
}
