//! One-parameter degenerations and the Pfaffian format of the type B family.

use std::collections::BTreeMap;

use crate::coeff::{seeded_rng, Field, PrimeField};
use crate::error::{Error, Result};
use crate::groebner::{combinations, GbOptions, Ideal};
use crate::ring::Polynomial;

use super::build::{expr, random_form, ring, set_coeff, type_b_data, type_b_generators, var, TypeBData};
use super::StratumKind;

type Poly = Polynomial<PrimeField>;

#[derive(Clone, Debug)]
enum Source {
    TypeB(TypeBData),
    TypeDD { f10: Poly },
}

/// A family of ideals over the `λ`-line, sampled at the given nonzero values.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub base: StratumKind,
    pub seed: u64,
    pub lambda_values: Vec<u32>,
    pub fiber_ideals: BTreeMap<u32, Ideal<PrimeField>>,
    pub central_ideal: Ideal<PrimeField>,
    source: Source,
}

/// Result of eliminating the redundant variables from one fiber.
#[derive(Clone, Debug)]
pub struct EliminatedFiber {
    pub lambda: u32,
    pub ideal: Ideal<PrimeField>,
    /// `Some(d)` when the eliminated ideal is principal of degree `d`.
    pub principal_degree: Option<u32>,
}

fn nonzero(field: &PrimeField, lambdas: &[u32]) -> Result<Vec<u32>> {
    lambdas
        .iter()
        .map(|&l| {
            let r = l % field.modulus();
            if r == 0 {
                Err(Error::Check(format!("lambda {l} is zero in the field")))
            } else {
                Ok(r)
            }
        })
        .collect()
}

/// The smoothing of type B: the `2×4` matrix gets `λ` in its corner and the
/// relations gain `λ^2 k̃`, `λ x k̃`; at `λ = 0` this is the surface itself.
pub fn family_type_b(field: PrimeField, seed: u64, lambdas: &[u32]) -> Result<FamilyInstance> {
    let lambda_values = nonzero(&field, lambdas)?;
    let d = type_b_data(field, seed);
    let mk = |l: u32| Ideal::new(&d.ring, type_b_generators(&d, l)).expect("one ring");
    let fiber_ideals = lambda_values.iter().map(|&l| (l, mk(l))).collect();
    Ok(FamilyInstance {
        base: StratumKind::TypeB,
        seed,
        lambda_values,
        fiber_ideals,
        central_ideal: mk(0),
        source: Source::TypeB(d),
    })
}

/// `(x1 x2 - λ y1, z^2 - f10)` over the surface of type DD.
pub fn family_type_dd(field: PrimeField, seed: u64, lambdas: &[u32]) -> Result<FamilyInstance> {
    let lambda_values = nonzero(&field, lambdas)?;
    let inst = super::build::build_type_dd(field, seed);
    let f10 = inst.parameters["f10"].clone();
    let mut fam = FamilyInstance {
        base: StratumKind::TypeDD,
        seed,
        lambda_values: lambda_values.clone(),
        fiber_ideals: BTreeMap::new(),
        central_ideal: inst.ideal.clone(),
        source: Source::TypeDD { f10 },
    };
    fam.central_ideal = fam.fiber(0);
    fam.fiber_ideals = lambda_values.iter().map(|&l| (l, fam.fiber(l))).collect();
    Ok(fam)
}

impl FamilyInstance {
    /// The fiber ideal at any `λ`, including `0`.
    pub fn fiber(&self, lambda: u32) -> Ideal<PrimeField> {
        match &self.source {
            Source::TypeB(d) => Ideal::new(&d.ring, type_b_generators(d, lambda)).expect("one ring"),
            Source::TypeDD { f10 } => {
                let r = f10.ring();
                let l = Polynomial::constant(r, lambda);
                let gens = vec![expr(r, "x1*x2").sub(&l.mul(&var(r, "y1"))), expr(r, "z^2").sub(f10)];
                Ideal::new(r, gens).expect("one ring")
            }
        }
    }

    /// Variables that the nonzero fibers let one solve for.
    pub fn eliminated_variables(&self) -> &'static [&'static str] {
        match self.source {
            Source::TypeB(_) => &["w", "v", "u"],
            Source::TypeDD { .. } => &["y1"],
        }
    }

    /// Eliminates the solvable variables from the fiber at `lambda`.
    pub fn eliminate_fiber(&self, lambda: u32, opts: &GbOptions) -> Result<EliminatedFiber> {
        let ideal = self.fiber(lambda);
        let ring = ideal.ring().clone();
        let drop: Vec<usize> = self.eliminated_variables().iter().map(|n| ring.var_index(n).unwrap()).collect();
        let opts = GbOptions { truncation: None, ..*opts };
        let out = ideal.eliminate(&drop, &opts)?;
        let nonzero: Vec<&Poly> = out.generators().iter().filter(|g| !g.is_zero()).collect();
        let principal_degree = match nonzero.as_slice() {
            [g] => g.homogeneous_degree(),
            _ => None,
        };
        Ok(EliminatedFiber { lambda, ideal: out, principal_degree })
    }

    /// For type B at `λ ≠ 0`: with `w = xy/λ`, `v = x^2 y/λ^2`, `u = xz/λ` the
    /// minors vanish and the relations become `f`, `(x/λ) f`, `(x^2/λ^2) f`.
    /// Returns `f` (in the fiber ring) or a description of the first failure.
    pub fn type_b_substitution(&self, lambda: u32) -> Result<std::result::Result<Poly, String>> {
        let d = match &self.source {
            Source::TypeB(d) => d,
            Source::TypeDD { .. } => return Err(Error::Check("substitution identities apply to type B".into())),
        };
        let r = &d.ring;
        let field = r.field();
        let li = field.inv(&lambda).ok_or(Error::DivisionByZero)?;
        let c = |e: u32| Polynomial::constant(r, e);
        let (x, y, z) = (var(r, "x"), var(r, "y"), var(r, "z"));
        let x_over = c(li).mul(&x);
        let images = vec![
            var(r, "x0"),
            x.clone(),
            y.clone(),
            x_over.mul(&y),
            x_over.mul(&x_over).mul(&y),
            z.clone(),
            x_over.mul(&z),
        ];
        let gens = type_b_generators(d, lambda);
        let subbed = gens.iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>>>()?;
        let (minors, rel) = subbed.split_at(6);
        if let Some(i) = minors.iter().position(|m| !m.is_zero()) {
            return Ok(Err(format!("minor {i} does not vanish")));
        }
        let f = rel[0].clone();
        if rel[1] != x_over.mul(&f) {
            return Ok(Err("second relation is not (x/λ) f".into()));
        }
        if rel[2] != x_over.mul(&x_over).mul(&f) {
            return Ok(Err("third relation is not (x^2/λ^2) f".into()));
        }
        Ok(Ok(f))
    }

    /// The skew `6×6` matrix whose Pfaffians give the fiber (type B only).
    pub fn pfaffian_matrix(&self, lambda: u32) -> Result<Vec<Vec<Poly>>> {
        match &self.source {
            Source::TypeB(d) => Ok(type_b_pfaffian_matrix_of(d, lambda)),
            Source::TypeDD { .. } => Err(Error::Check("no Pfaffian format for type DD".into())),
        }
    }
}

/// All `4×4` principal Pfaffians `m_ij m_kl - m_ik m_jl + m_il m_jk`, indices
/// `i < j < k < l` in lexicographic order.
pub fn pfaffians_4x4<F: Field>(m: &[Vec<Polynomial<F>>]) -> Result<Vec<Polynomial<F>>> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Check(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        if !row[i].is_zero() {
            return Err(Error::NotSkew(i, i));
        }
        for j in 0..i {
            if row[j] != m[j][i].neg() {
                return Err(Error::NotSkew(i, j));
            }
        }
    }
    Ok(combinations(n, 4)
        .into_iter()
        .map(|s| {
            let (i, j, k, l) = (s[0], s[1], s[2], s[3]);
            m[i][j].mul(&m[k][l]).sub(&m[i][k].mul(&m[j][l])).add(&m[i][l].mul(&m[j][k]))
        })
        .collect())
}

fn type_b_pfaffian_matrix_of(d: &TypeBData, lambda: u32) -> Vec<Vec<Poly>> {
    let r = &d.ring;
    let zero = Polynomial::zero(r);
    let l = Polynomial::constant(r, lambda);
    let k = &d.k10;
    let upper: [[Option<Poly>; 6]; 6] = {
        let mut u: [[Option<Poly>; 6]; 6] = Default::default();
        let mut set = |i: usize, j: usize, p: Poly| u[i][j] = Some(p);
        set(0, 1, zero.clone());
        set(0, 2, l.clone());
        set(0, 3, var(r, "y"));
        set(0, 4, var(r, "w"));
        set(0, 5, var(r, "z"));
        set(1, 2, var(r, "x"));
        set(1, 3, var(r, "w"));
        set(1, 4, var(r, "v"));
        set(1, 5, var(r, "u"));
        set(2, 3, var(r, "z"));
        set(2, 4, var(r, "u"));
        set(2, 5, d.g8.clone());
        set(3, 4, zero.clone());
        set(3, 5, l.mul(k).neg());
        set(4, 5, var(r, "x").mul(k).neg());
        u
    };
    (0..6)
        .map(|i| {
            (0..6)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Less => upper[i][j].clone().unwrap(),
                    std::cmp::Ordering::Equal => zero.clone(),
                    std::cmp::Ordering::Greater => upper[j][i].clone().unwrap().neg(),
                })
                .collect()
        })
        .collect()
}

/// The extrasymmetric skew matrix of the type B family at `λ`, for the
/// forms drawn from `seed`.
pub fn type_b_pfaffian_matrix(field: PrimeField, seed: u64, lambda: u32) -> Vec<Vec<Poly>> {
    type_b_pfaffian_matrix_of(&type_b_data(field, seed), lambda)
}

/// Random symmetric form used by the invariant-cover identity: `g8` in
/// `(x0, y, w, v)` with the type B weights.
pub(crate) fn invariant_cover_form(field: PrimeField, seed: u64) -> Poly {
    let r = ring(field, &["x0", "y", "w", "v"], &[1, 2, 3, 4]);
    let mut rng = seeded_rng(seed);
    let g = random_form(&r, &["x0", "y", "w", "v"], 8, &mut rng);
    set_coeff(&g, &[0, 0, 0, 2], 1)
}
