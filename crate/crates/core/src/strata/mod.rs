//! Explicit surfaces, curves, components and families, with verifiers that
//! check their algebraic properties.

mod build;
mod checks;
mod families;
mod report;


use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::coeff::PrimeField;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ring::{print_ideal_file, Polynomial, RingRef};

pub use build::{
    build, build_curve_a, build_curve_b, build_type_a, build_type_b, build_type_d_component, build_type_dd,
    build_type_de, build_type_e_component, build_x1_de, build_x2_de, embed, random_form, split_f8, split_g11,
};
pub use checks::{decompose_type_b, glueing_param_check, invariant_cover_check, BDecomposition};
pub use families::{family_type_b, family_type_dd, pfaffians_4x4, type_b_pfaffian_matrix, FamilyInstance};
pub use report::{verify, verify_instance, verify_stratum, Check, Report, Status, Target, VerifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StratumKind {
    TypeA,
    TypeB,
    TypeDD,
    TypeDE,
    CurveA,
    CurveB,
    TypeDComponent,
    TypeEComponent,
    X1DE,
    X2DE,
}

impl StratumKind {
    pub const ALL: [StratumKind; 10] = [
        StratumKind::TypeA,
        StratumKind::TypeB,
        StratumKind::TypeDD,
        StratumKind::TypeDE,
        StratumKind::CurveA,
        StratumKind::CurveB,
        StratumKind::TypeDComponent,
        StratumKind::TypeEComponent,
        StratumKind::X1DE,
        StratumKind::X2DE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StratumKind::TypeA => "type-a",
            StratumKind::TypeB => "type-b",
            StratumKind::TypeDD => "type-dd",
            StratumKind::TypeDE => "type-de",
            StratumKind::CurveA => "curve-a",
            StratumKind::CurveB => "curve-b",
            StratumKind::TypeDComponent => "type-d",
            StratumKind::TypeEComponent => "type-e",
            StratumKind::X1DE => "x1-de",
            StratumKind::X2DE => "x2-de",
        }
    }

    /// Variable names and weights of the ambient space.
    pub fn ambient(self) -> (&'static [&'static str], &'static [u32]) {
        match self {
            StratumKind::TypeA => (&["x1", "x2", "y", "z"], &[1, 1, 2, 5]),
            StratumKind::TypeB => (&["x0", "x", "y", "w", "v", "z", "u"], &[1, 1, 2, 3, 4, 5, 6]),
            StratumKind::TypeDD => (&["x1", "x2", "y1", "y2", "z"], &[1, 1, 2, 2, 5]),
            StratumKind::TypeDE => {
                (&["a0", "a1", "b0", "b1", "c", "d", "e", "f", "g"], &[1, 1, 2, 2, 3, 4, 5, 6, 7])
            }
            StratumKind::CurveA => (&["x", "y", "z"], &[1, 2, 5]),
            StratumKind::CurveB => (&["x", "y", "w", "v", "z", "u"], &[1, 2, 3, 4, 5, 6]),
            StratumKind::TypeDComponent => (&["x", "y1", "y2", "z"], &[1, 2, 2, 5]),
            StratumKind::TypeEComponent => (&["u0", "u1", "v", "w"], &[1, 1, 4, 6]),
            StratumKind::X1DE => (&["a0", "b0", "c", "d", "e", "f", "g"], &[1, 2, 3, 4, 5, 6, 7]),
            StratumKind::X2DE => (&["a1", "b0", "b1", "d", "e", "f", "g"], &[1, 2, 2, 4, 5, 6, 7]),
        }
    }

    /// Surfaces whose canonical ring has the I-surface Hilbert series.
    pub fn is_surface(self) -> bool {
        matches!(self, StratumKind::TypeA | StratumKind::TypeB | StratumKind::TypeDD | StratumKind::TypeDE)
    }
}

impl fmt::Display for StratumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StratumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StratumKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Check(format!("unknown stratum kind '{s}'")))
    }
}

/// One randomly drawn member of a stratum.
#[derive(Clone, Debug)]
pub struct StratumInstance {
    pub kind: StratumKind,
    pub seed: u64,
    pub ring: RingRef<PrimeField>,
    pub ideal: Ideal<PrimeField>,
    /// The random forms used, keyed by name.
    pub parameters: BTreeMap<String, Polynomial<PrimeField>>,
    /// Named points in the ambient weighted projective space.
    pub points: BTreeMap<String, Vec<i64>>,
    /// Seeds skipped because the drawn instance was degenerate.
    pub rerolls: u32,
}

impl StratumInstance {
    /// Wraps an externally supplied ideal; its ring must be the ambient space
    /// of `kind`. No random forms are attached, so checks that need them fail.
    pub fn from_ideal(kind: StratumKind, ideal: Ideal<PrimeField>) -> Result<StratumInstance> {
        let ring = ideal.ring().clone();
        let (names, weights) = kind.ambient();
        if ring.names() != names || ring.weights() != weights {
            return Err(Error::Ring(format!("{kind} lives in P({weights:?}) with variables {}", names.join(","))));
        }
        let mut points = BTreeMap::new();
        if kind == StratumKind::TypeA {
            points.insert("0001".to_string(), vec![0, 0, 0, 1]);
            points.insert("0010".to_string(), vec![0, 0, 1, 0]);
        }
        Ok(StratumInstance { kind, seed: 0, ring, ideal, parameters: BTreeMap::new(), points, rerolls: 0 })
    }

    pub fn generators(&self) -> &[Polynomial<PrimeField>] {
        self.ideal.generators()
    }

    /// The instance in ideal-file format.
    pub fn to_ideal_file(&self) -> String {
        print_ideal_file(&self.ring, self.ideal.generators())
    }
}
