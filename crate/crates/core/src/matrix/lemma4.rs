//! The Sylow-normalizer construction in `SL(n, q)` and its projective image.
//!
//! `P` is the lower unitriangular group, its normalizer `B` is the group of
//! lower triangular matrices of determinant 1, and `N = {E + a E_{n,1}}` is
//! the root subgroup in the bottom-left corner.

use std::sync::Arc;

use rand::Rng;

use crate::error::{GroupError, Result};
use crate::group::{PermGroup, Subgroup};
use crate::matrix::field::FieldTable;
use crate::matrix::linear::Matrix;
use crate::matrix::projective::{sl_generators, PointEnumeration, PointSet};
use crate::table::ElementTable;

/// Largest `|SL(n, q)|` the construction will build as a permutation group.
pub const AMBIENT_ORDER_CAP: u64 = 100_000;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `|SL(n, q)|`.
pub fn sl_order(n: usize, q: u64) -> Option<u64> {
    let n = n as u32;
    let mut o = q.checked_pow(n * (n - 1) / 2)?;
    for i in 2..=n {
        o = o.checked_mul(q.checked_pow(i)? - 1)?;
    }
    Some(o)
}

/// Closed-form orders of the normalizer: `q^{n(n-1)/2} (q-1)^{n-1}` in
/// `SL(n, q)` and that divided by `gcd(n, q-1)` in `PSL(n, q)`.
pub fn expected_normalizer_orders(n: usize, q: u64) -> (u64, u64) {
    let n32 = n as u32;
    let linear = q.pow(n32 * (n32 - 1) / 2) * (q - 1).pow(n32 - 1);
    (linear, linear / gcd(n as u64, q - 1))
}

/// Lower unitriangular transvections; they generate the Sylow `p`-subgroup.
pub fn unitriangular_generators(n: usize, field: &Arc<FieldTable>) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 1..n {
        for j in 0..i {
            for b in field.additive_basis() {
                gens.push(Matrix::transvection(field, n, i, j, b));
            }
        }
    }
    gens
}

/// Generators of the lower triangular determinant-1 group.
pub fn borel_generators(n: usize, field: &Arc<FieldTable>) -> Vec<Matrix> {
    let mut gens = unitriangular_generators(n, field);
    let w = field.primitive();
    let w_inv = field.inv(w).unwrap();
    if w != 1 {
        for i in 0..n - 1 {
            let mut d = vec![1; n];
            d[i] = w;
            d[i + 1] = w_inv;
            gens.push(Matrix::diagonal(field, &d));
        }
    }
    gens
}

/// `E + b E_{n,1}` for `b` in an additive basis.
pub fn corner_generators(n: usize, field: &Arc<FieldTable>) -> Vec<Matrix> {
    field
        .additive_basis()
        .into_iter()
        .map(|b| Matrix::transvection(field, n, n - 1, 0, b))
        .collect()
}

/// One realization (on vectors or on projective points) of the construction.
#[derive(Clone, Debug)]
pub struct Lemma4Side {
    pub points: PointSet,
    /// Image of `SL(n, q)`.
    pub ambient: PermGroup,
    pub sylow: Subgroup,
    pub normalizer: Subgroup,
    pub corner: Subgroup,
}

#[derive(Clone, Debug)]
pub struct Lemma4Groups {
    pub n: usize,
    pub q: u64,
    /// `SL(n, q)` acting faithfully on nonzero vectors.
    pub linear: Lemma4Side,
    /// The quotient by scalars, acting on projective points.
    pub projective: Lemma4Side,
}

fn build_side(n: usize, field: &Arc<FieldTable>, kind: PointSet) -> Result<Lemma4Side> {
    let pts = PointEnumeration::new(n, field, kind)?;
    let ambient = pts.group(&sl_generators(n, field)?)?;
    let sub = |ms: Vec<Matrix>| -> Result<Subgroup> {
        let perms = ms
            .iter()
            .map(|m| pts.permutation(m))
            .collect::<Result<Vec<_>>>()?;
        ambient.subgroup(perms)
    };
    Ok(Lemma4Side {
        points: kind,
        sylow: sub(unitriangular_generators(n, field))?,
        normalizer: sub(borel_generators(n, field))?,
        corner: sub(corner_generators(n, field))?,
        ambient,
    })
}

/// Builds `P`, `N_G(P)` and `N` in `SL(n, q)` and in `PSL(n, q)`.
pub fn lemma4_normalizer(n: usize, field: &Arc<FieldTable>) -> Result<Lemma4Groups> {
    if n < 2 {
        return Err(GroupError::Unsupported(
            "dimension must be at least 2".into(),
        ));
    }
    let q = field.order() as u64;
    match sl_order(n, q) {
        Some(o) if o <= AMBIENT_ORDER_CAP => {}
        _ => {
            return Err(GroupError::OrderExceedsCap {
                order: sl_order(n, q).map_or("overflow".into(), |o| o.to_string()),
                cap: AMBIENT_ORDER_CAP,
            })
        }
    }
    Ok(Lemma4Groups {
        n,
        q,
        linear: build_side(n, field, PointSet::NonzeroVectors)?,
        projective: build_side(n, field, PointSet::Projective)?,
    })
}

/// Outcome of the randomized conjugation identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationCheck {
    pub trials: usize,
    pub failures: usize,
}

impl ConjugationCheck {
    pub fn passed(&self) -> bool {
        self.trials > 0 && self.failures == 0
    }
}

/// Random lower triangular matrix of determinant 1.
fn random_borel<R: Rng + ?Sized>(n: usize, field: &Arc<FieldTable>, rng: &mut R) -> Matrix {
    let q = field.order();
    let mut m = Matrix::identity(field, n);
    let mut prod = 1;
    for i in 0..n - 1 {
        let d = rng.gen_range(1..q);
        m.set(i, i, d);
        prod = field.mul(prod, d);
    }
    m.set(n - 1, n - 1, field.inv(prod).unwrap());
    for i in 1..n {
        for j in 0..i {
            m.set(i, j, rng.gen_range(0..q));
        }
    }
    m
}

/// Checks `D^-1 (E + a E_{n,1}) D = E + a a_{nn}^-1 a_{11} E_{n,1}` on random
/// lower triangular `D` of determinant 1. The first trial uses `a = 0`.
pub fn lemma4_conjugation_check<R: Rng + ?Sized>(
    n: usize,
    field: &Arc<FieldTable>,
    trials: usize,
    rng: &mut R,
) -> ConjugationCheck {
    let mut failures = 0;
    for t in 0..trials {
        let d = random_borel(n, field, rng);
        let a = if t == 0 {
            0
        } else {
            rng.gen_range(0..field.order())
        };
        let x = Matrix::transvection(field, n, n - 1, 0, a);
        let lhs = d.inverse().expect("det 1").mul(&x).mul(&d);
        let ann_inv = field.inv(d.get(n - 1, n - 1)).unwrap();
        let coeff = field.mul(field.mul(a, ann_inv), d.get(0, 0));
        let rhs = Matrix::transvection(field, n, n - 1, 0, coeff);
        if lhs != rhs {
            failures += 1;
        }
    }
    ConjugationCheck { trials, failures }
}

/// Certificate that the corner subgroup is minimal normal in the normalizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalNormalReport {
    pub corner_order: u64,
    pub normalizer_order: u64,
    pub is_normal: bool,
    /// Orders of every nontrivial subgroup of `N` that is normal in the normalizer.
    pub normal_subgroup_orders: Vec<u64>,
}

impl MinimalNormalReport {
    pub fn is_minimal_normal(&self) -> bool {
        self.is_normal && self.normal_subgroup_orders == vec![self.corner_order]
    }
}

/// Brute force over all subgroups of `N` (elementary abelian of order `q`).
pub fn minimal_normal_report(side: &Lemma4Side) -> Result<MinimalNormalReport> {
    let table = ElementTable::new(&side.normalizer)?;
    let corner = table.set_of(&side.corner).ok_or(GroupError::NotContained)?;
    let is_normal = table.is_normal_set(&corner);
    let mut subs = vec![table.trivial_set()];
    let mut k = 0;
    while k < subs.len() {
        for x in corner.ones() {
            if subs[k].contains(x) {
                continue;
            }
            let gens = table.small_generators(&subs[k]);
            let s = table
                .closure_from(subs[k].clone(), &gens, &[x], usize::MAX)
                .expect("unbounded");
            if !subs.contains(&s) {
                subs.push(s);
            }
        }
        k += 1;
    }
    let mut normal_subgroup_orders: Vec<u64> = subs
        .iter()
        .filter(|s| s.count_ones(..) > 1 && table.is_normal_set(s))
        .map(|s| s.count_ones(..) as u64)
        .collect();
    normal_subgroup_orders.sort_unstable();
    Ok(MinimalNormalReport {
        corner_order: corner.count_ones(..) as u64,
        normalizer_order: table.len() as u64,
        is_normal,
        normal_subgroup_orders,
    })
}

/// Minimal-normality certificates for the linear and projective sides.
pub fn lemma4_minimal_normal_check(
    n: usize,
    field: &Arc<FieldTable>,
) -> Result<(MinimalNormalReport, MinimalNormalReport)> {
    let groups = lemma4_normalizer(n, field)?;
    Ok((
        minimal_normal_report(&groups.linear)?,
        minimal_normal_report(&groups.projective)?,
    ))
}
