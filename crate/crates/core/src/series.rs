//! Chief series, composition factors and the solubility predicates.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::quotient_group;
use crate::error::Result;
use crate::group::{PermGroup, Subgroup};
use crate::iso::{identify, GroupId};
use crate::matrix::field::prime_power;
use crate::table::{cmp_sets, minimal_over, ElemSet, ElementTable};

/// Largest order handled by the chief-series machinery.
pub const SERIES_ORDER_CAP: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDescriptor {
    pub order: u64,
    pub is_abelian: bool,
    pub is_prime_order: bool,
    /// Simple direct factor of a nonabelian chief factor.
    pub simple_factor_id: Option<GroupId>,
    /// Number of simple direct factors (1 for abelian factors).
    pub multiplicity: u32,
}

#[derive(Clone, Debug)]
pub struct ChiefSeries {
    /// From `G` down to the trivial group.
    pub terms: Vec<Subgroup>,
    /// `factors[i]` describes `terms[i] / terms[i + 1]`.
    pub factors: Vec<FactorDescriptor>,
}

impl ChiefSeries {
    pub fn factor_orders(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.order).collect()
    }
}

/// How a minimal normal subgroup of each quotient is picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    /// Least order, then least canonical form.
    Canonical,
    /// Seeded random choice; used to check independence of the choice.
    Random(u64),
}

/// Chain of normal subgroups from the trivial group up to `G`, as element sets.
pub(crate) fn chief_chain(
    t: &ElementTable,
    normals: &[ElemSet],
    selection: Selection,
) -> Vec<ElemSet> {
    let mut rng = match selection {
        Selection::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Selection::Canonical => None,
    };
    let full = t.full_set();
    let mut cur = t.trivial_set();
    let mut chain = vec![cur.clone()];
    while cur != full {
        let mut next = minimal_over(normals, &cur);
        next.sort_by(cmp_sets);
        cur = match rng.as_mut() {
            Some(r) => next.choose(r).unwrap().clone(),
            None => next.swap_remove(0),
        };
        chain.push(cur.clone());
    }
    chain
}

fn factor_is_abelian(t: &ElementTable, upper: &ElemSet, lower: &ElemSet) -> bool {
    let gens = t.small_generators(upper);
    gens.iter().enumerate().all(|(i, &a)| {
        gens[i + 1..]
            .iter()
            .all(|&b| lower.contains(t.mul(t.mul(t.inv(a), t.inv(b)), t.mul(a, b))))
    })
}

fn describe_factor(t: &ElementTable, upper: &ElemSet, lower: &ElemSet) -> Result<FactorDescriptor> {
    let order = (upper.count_ones(..) / lower.count_ones(..)) as u64;
    if factor_is_abelian(t, upper, lower) {
        return Ok(FactorDescriptor {
            order,
            is_abelian: true,
            is_prime_order: prime_power(order).is_some_and(|(_, f)| f == 1),
            simple_factor_id: None,
            multiplicity: 1,
        });
    }
    let q = quotient_group(&t.to_group(upper), &t.to_group(lower))?;
    let qt = ElementTable::new(&q)?;
    let simple = qt.minimal_normal_subgroups().swap_remove(0);
    let s_order = simple.count_ones(..) as u64;
    let mut multiplicity = 0;
    let mut rest = order;
    while rest > 1 {
        rest /= s_order;
        multiplicity += 1;
    }
    Ok(FactorDescriptor {
        order,
        is_abelian: false,
        is_prime_order: false,
        simple_factor_id: Some(identify(&qt.to_group(&simple))?),
        multiplicity,
    })
}

pub(crate) fn chief_series_in(
    t: &ElementTable,
    normals: &[ElemSet],
    selection: Selection,
) -> Result<ChiefSeries> {
    let mut chain = chief_chain(t, normals, selection);
    chain.reverse();
    let factors = chain
        .windows(2)
        .map(|w| describe_factor(t, &w[0], &w[1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChiefSeries {
        terms: chain
            .iter()
            .map(|s| Subgroup::from_group(t.to_group(s)))
            .collect(),
        factors,
    })
}

pub fn chief_series(g: &PermGroup) -> Result<ChiefSeries> {
    chief_series_with(g, Selection::Canonical)
}

pub fn chief_series_with(g: &PermGroup, selection: Selection) -> Result<ChiefSeries> {
    g.order_within(SERIES_ORDER_CAP)?;
    let t = ElementTable::new(g)?;
    let normals = t.normal_subgroups();
    chief_series_in(&t, &normals, selection)
}

/// Every chief factor has prime order. The chain is built without
/// identifying factors, since only orders and commutativity matter.
pub fn is_supersolvable(g: &PermGroup) -> Result<bool> {
    g.order_within(SERIES_ORDER_CAP)?;
    let t = ElementTable::new(g)?;
    Ok(supersolvable_in(&t, &t.normal_subgroups()))
}

pub(crate) fn supersolvable_in(t: &ElementTable, normals: &[ElemSet]) -> bool {
    chief_chain(t, normals, Selection::Canonical)
        .windows(2)
        .all(|w| {
            let order = (w[1].count_ones(..) / w[0].count_ones(..)) as u64;
            prime_power(order).is_some_and(|(_, f)| f == 1)
        })
}

pub fn is_solvable(g: &PermGroup) -> bool {
    g.is_solvable()
}

pub fn is_nilpotent(g: &PermGroup) -> bool {
    g.is_nilpotent()
}

/// Derived series until it stabilizes.
pub fn derived_series(g: &PermGroup) -> Vec<Subgroup> {
    g.derived_series()
        .into_iter()
        .map(Subgroup::from_group)
        .collect()
}

pub fn is_simple(g: &PermGroup) -> Result<bool> {
    g.order_within(SERIES_ORDER_CAP)?;
    if g.is_trivial() {
        return Ok(false);
    }
    Ok(ElementTable::new(g)?.normal_subgroups().len() == 2)
}

/// Composition factors as a sorted multiset.
pub fn composition_factors(g: &PermGroup) -> Result<Vec<GroupId>> {
    composition_factors_with(g, Selection::Canonical)
}

pub fn composition_factors_with(g: &PermGroup, selection: Selection) -> Result<Vec<GroupId>> {
    Ok(factors_of_series(&chief_series_with(g, selection)?))
}

pub(crate) fn factors_of_series(series: &ChiefSeries) -> Vec<GroupId> {
    let mut out = Vec::new();
    for f in &series.factors {
        match &f.simple_factor_id {
            Some(id) => out.extend(std::iter::repeat_n(id.clone(), f.multiplicity as usize)),
            None => {
                let (p, k) = prime_power(f.order).expect("abelian chief factors are elementary");
                out.extend(std::iter::repeat_n(GroupId::Cyclic { n: p }, k as usize));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::projective::{pgl2, sl};
    use crate::named::*;

    /// Searches for a chain of normal subgroups with cyclic factors. Subgroups
    /// are found by naive closure of a subgroup with one more element, and
    /// normality is tested against every element.
    fn cyclic_normal_series_exists(g: &PermGroup) -> bool {
        let t = ElementTable::new(g).unwrap();
        let n = t.len();
        let mut subgroups: Vec<ElemSet> = vec![t.trivial_set()];
        let mut k = 0;
        while k < subgroups.len() {
            for x in 0..n {
                let mut gens: Vec<usize> = subgroups[k].ones().collect();
                gens.push(x);
                let s = t.closure(&gens);
                if !subgroups.contains(&s) {
                    subgroups.push(s);
                }
            }
            k += 1;
        }
        let normals: Vec<ElemSet> = subgroups
            .into_iter()
            .filter(|s| (0..n).all(|x| s.ones().all(|y| s.contains(t.conj(y, x)))))
            .collect();
        fn extend(t: &ElementTable, normals: &[ElemSet], cur: &ElemSet) -> bool {
            if cur.count_ones(..) == t.len() {
                return true;
            }
            let cur_gens = t.small_generators(cur);
            normals.iter().any(|m| {
                m.count_ones(..) > cur.count_ones(..)
                    && cur.is_subset(m)
                    && m.ones().any(|x| {
                        t.closure_from(cur.clone(), &cur_gens, &[x], usize::MAX)
                            .unwrap()
                            == *m
                    })
                    && extend(t, normals, m)
            })
        }
        extend(&t, &normals, &t.trivial_set())
    }

    fn battery() -> Vec<PermGroup> {
        vec![
            cyclic(12).unwrap(),
            symmetric(3).unwrap(),
            symmetric(4).unwrap(),
            alternating(4).unwrap(),
            dihedral(4).unwrap(),
            dihedral(6).unwrap(),
            quaternion8(),
            elementary_abelian(2, 3).unwrap(),
            frobenius(7, 3).unwrap(),
            frobenius(5, 4).unwrap(),
            sl(2, 3).unwrap(),
            direct_product(&[symmetric(3).unwrap(), cyclic(3).unwrap()]).unwrap(),
            direct_product(&[symmetric(3).unwrap(), symmetric(3).unwrap()]).unwrap(),
            alternating(5).unwrap(),
        ]
    }

    #[test]
    fn chief_factor_orders() {
        assert_eq!(
            chief_series(&symmetric(4).unwrap())
                .unwrap()
                .factor_orders(),
            vec![2, 3, 4]
        );
        assert_eq!(
            chief_series(&pgl2(7).unwrap()).unwrap().factor_orders(),
            vec![2, 168]
        );
        assert_eq!(
            chief_series(&cyclic(7).unwrap()).unwrap().factor_orders(),
            vec![7]
        );
    }

    #[test]
    fn chief_series_invariants() {
        for g in battery() {
            let s = chief_series(&g).unwrap();
            assert_eq!(
                s.factor_orders().iter().product::<u64>(),
                g.order_u64().unwrap()
            );
            for w in s.terms.windows(2) {
                assert!(g.is_normal(&w[1]).unwrap());
                assert!(w[1].is_subgroup_of(&w[0]));
            }
            for f in &s.factors {
                assert!(!f.is_prime_order || f.is_abelian);
            }
        }
    }

    #[test]
    fn supersolvability_examples() {
        assert!(is_supersolvable(&symmetric(3).unwrap()).unwrap());
        assert!(!is_supersolvable(&symmetric(4).unwrap()).unwrap());
        assert!(!is_supersolvable(&alternating(4).unwrap()).unwrap());
        assert!(is_solvable(&symmetric(4).unwrap()));
        assert!(!is_solvable(&alternating(5).unwrap()));
        assert!(is_simple(&alternating(5).unwrap()).unwrap());
        assert!(!is_simple(&symmetric(4).unwrap()).unwrap());
        assert!(is_simple(&cyclic(7).unwrap()).unwrap());
        assert_eq!(derived_series(&symmetric(4).unwrap()).len(), 4);
    }

    #[test]
    fn supersolvability_matches_cyclic_series_oracle() {
        for g in battery() {
            assert_eq!(
                is_supersolvable(&g).unwrap(),
                cyclic_normal_series_exists(&g),
                "order {}",
                g.order()
            );
        }
    }

    #[test]
    fn implications_between_predicates() {
        for g in battery() {
            let ss = is_supersolvable(&g).unwrap();
            assert!(!ss || is_solvable(&g));
            assert!(!is_nilpotent(&g) || ss);
        }
    }

    #[test]
    fn composition_factor_examples() {
        let ids = |g: &PermGroup| -> Vec<String> {
            composition_factors(g)
                .unwrap()
                .iter()
                .map(|x| x.to_string())
                .collect()
        };
        assert_eq!(ids(&pgl2(7).unwrap()), vec!["Z2", "L2(7)"]);
        assert_eq!(ids(&symmetric(5).unwrap()), vec!["Z2", "A5"]);
        assert_eq!(ids(&cyclic(12).unwrap()), vec!["Z2", "Z2", "Z3"]);
        let a5sq = direct_product(&[alternating(5).unwrap(), alternating(5).unwrap()]).unwrap();
        let s = chief_series(&a5sq).unwrap();
        assert_eq!(s.factor_orders(), vec![60, 60]);
    }

    #[test]
    fn randomized_series_agree() {
        for g in battery() {
            let base = composition_factors(&g).unwrap();
            let ss = is_supersolvable(&g).unwrap();
            for seed in 1..=5 {
                let s = chief_series_with(&g, Selection::Random(seed)).unwrap();
                assert_eq!(factors_of_series(&s), base);
                assert_eq!(s.factors.iter().all(|f| f.is_prime_order), ss);
            }
        }
    }
}
