//! c-sections of maximal subgroups.
//!
//! For a maximal subgroup `M` of `G` and a chief factor `K/L` of `G` with
//! `L <= M` and `K` not contained in `M`, the group `(M ∩ K)/L` is a
//! c-section of `M`. Its isomorphism type does not depend on the chief
//! factor, and is written `Sec(M)`.

use crate::action::{quotient_group_capped, DEFAULT_DEGREE_CAP};
use crate::error::{GroupError, Result};
use crate::group::{PermGroup, Subgroup};
use crate::iso::{identify, is_isomorphic, GroupId};
use crate::lattice::{self, certify_maximal, SubgroupClass, SubgroupLattice, DEFAULT_ORDER_CAP};
use crate::series::{self, ChiefSeries, Selection};
use crate::table::{cmp_sets, minimal_over, ElemSet, ElementTable};

/// Caps and the seed for the random fallback search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Above this order maximal subgroups come from a seeded random search.
    pub order_cap: u64,
    /// Largest degree of a quotient built by coset action.
    pub degree_cap: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            order_cap: DEFAULT_ORDER_CAP,
            degree_cap: DEFAULT_DEGREE_CAP,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChiefPair {
    pub k: Subgroup,
    pub l: Subgroup,
}

#[derive(Clone, Debug)]
pub struct CSection {
    /// Faithful permutation representation of `(M ∩ K)/L`.
    pub group: PermGroup,
    pub source_pair: ChiefPair,
    pub supersolvable: bool,
    pub identified: GroupId,
}

impl CSection {
    pub fn order(&self) -> u64 {
        self.group.order_u64().expect("desk-scale")
    }
}

#[derive(Clone, Debug)]
pub(crate) struct MaximalClass {
    pub(crate) set: ElemSet,
    pub(crate) class: SubgroupClass,
}

/// Everything the verifiers need about one group, computed once.
pub struct Analysis {
    group: PermGroup,
    table: ElementTable,
    normals: Vec<ElemSet>,
    maximals: Vec<MaximalClass>,
    complete: bool,
    options: Options,
}

impl Analysis {
    pub fn new(g: &PermGroup, options: Options) -> Result<Self> {
        let (table, classes, complete) = if g.order_within(options.order_cap).is_ok() {
            let lat = SubgroupLattice::build(g, options.order_cap)?;
            let classes = lattice::maximal_from_lattice(&lat);
            let complete = lat.is_complete() && classes.iter().all(|c| c.verified_complete);
            (lat.into_table(), classes, complete)
        } else {
            let classes = lattice::maximal_subgroups_with(g, options.order_cap, options.seed)?;
            (ElementTable::new(g)?, classes, false)
        };
        let maximals = classes
            .into_iter()
            .map(|class| MaximalClass {
                set: table.set_of(&class.representative).expect("subgroup of G"),
                class,
            })
            .collect();
        let normals = table.normal_subgroups();
        Ok(Analysis {
            group: g.clone(),
            table,
            normals,
            maximals,
            complete,
            options,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    /// Whether the maximal-subgroup enumeration was exhaustive.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn maximal_classes(&self) -> Vec<SubgroupClass> {
        self.maximals.iter().map(|m| m.class.clone()).collect()
    }

    pub fn num_maximal_classes(&self) -> usize {
        self.maximals.len()
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.normals
            .iter()
            .map(|s| Subgroup::from_group(self.table.to_group(s)))
            .collect()
    }

    pub fn chief_series(&self) -> Result<ChiefSeries> {
        series::chief_series_in(&self.table, &self.normals, Selection::Canonical)
    }

    pub fn is_supersolvable(&self) -> bool {
        series::supersolvable_in(&self.table, &self.normals)
    }

    /// All chief pairs `(K, L)` with `L <= M` and `K` not in `M`, ordered by
    /// `|L|`, then `|K|`, then canonical form.
    fn pair_sets(&self, m: &ElemSet) -> Vec<(ElemSet, ElemSet)> {
        let mut pairs = Vec::new();
        for l in self.normals.iter().filter(|l| l.is_subset(m)) {
            for k in minimal_over(&self.normals, l) {
                if !k.is_subset(m) {
                    pairs.push((k, l.clone()));
                }
            }
        }
        pairs.sort_by(|a, b| cmp_sets(&a.1, &b.1).then_with(|| cmp_sets(&a.0, &b.0)));
        pairs
    }

    fn pair(&self, k: &ElemSet, l: &ElemSet) -> ChiefPair {
        ChiefPair {
            k: Subgroup::from_group(self.table.to_group(k)),
            l: Subgroup::from_group(self.table.to_group(l)),
        }
    }

    fn section(&self, m: &ElemSet, k: &ElemSet, l: &ElemSet) -> Result<CSection> {
        let mut mk = m.clone();
        mk.intersect_with(k);
        let top = self.table.to_group(&mk);
        let group = if l.count_ones(..) == 1 {
            top
        } else {
            quotient_group_capped(&top, &self.table.to_group(l), self.options.degree_cap)?
        };
        Ok(CSection {
            supersolvable: series::is_supersolvable(&group)?,
            identified: identify(&group)?,
            group,
            source_pair: self.pair(k, l),
        })
    }

    fn maximal_set(&self, m: &PermGroup) -> Result<ElemSet> {
        let set = self.table.set_of(m).ok_or(GroupError::NotContained)?;
        if !certify_maximal(&self.table, &set) {
            return Err(GroupError::NotMaximal);
        }
        Ok(set)
    }

    pub fn chief_pairs(&self, m: &PermGroup) -> Result<Vec<ChiefPair>> {
        let set = self.maximal_set(m)?;
        let pairs = self.pair_sets(&set);
        if pairs.is_empty() {
            return Err(GroupError::NoChiefPair);
        }
        Ok(pairs.iter().map(|(k, l)| self.pair(k, l)).collect())
    }

    /// The c-section from the first chief pair.
    pub fn sec(&self, m: &PermGroup) -> Result<CSection> {
        let set = self.maximal_set(m)?;
        let (k, l) = self
            .pair_sets(&set)
            .into_iter()
            .next()
            .ok_or(GroupError::NoChiefPair)?;
        self.section(&set, &k, &l)
    }

    /// c-sections from every chief pair.
    pub fn all_sections(&self, m: &PermGroup) -> Result<Vec<CSection>> {
        let set = self.maximal_set(m)?;
        let pairs = self.pair_sets(&set);
        if pairs.is_empty() {
            return Err(GroupError::NoChiefPair);
        }
        pairs
            .iter()
            .map(|(k, l)| self.section(&set, k, l))
            .collect()
    }

    /// `Sec` of the `i`-th maximal class (descending order).
    pub fn sec_of_class(&self, i: usize) -> Result<CSection> {
        let m = self.maximals.get(i).ok_or_else(|| {
            GroupError::Unsupported(format!(
                "there are only {} maximal classes",
                self.maximals.len()
            ))
        })?;
        let (k, l) = self
            .pair_sets(&m.set)
            .into_iter()
            .next()
            .ok_or(GroupError::NoChiefPair)?;
        self.section(&m.set, &k, &l)
    }

    pub fn sections_of_class(&self, i: usize) -> Result<Vec<CSection>> {
        let m = &self.maximals[i];
        let pairs = self.pair_sets(&m.set);
        if pairs.is_empty() {
            return Err(GroupError::NoChiefPair);
        }
        pairs
            .iter()
            .map(|(k, l)| self.section(&m.set, k, l))
            .collect()
    }
}

pub fn chief_pairs_for_maximal(g: &PermGroup, m: &PermGroup) -> Result<Vec<ChiefPair>> {
    Analysis::new(g, Options::default())?.chief_pairs(m)
}

pub fn sec(g: &PermGroup, m: &PermGroup) -> Result<CSection> {
    Analysis::new(g, Options::default())?.sec(m)
}

/// `Sec(M)` together with a check that every chief pair gives an isomorphic section.
pub fn sec_verified(g: &PermGroup, m: &PermGroup) -> Result<(CSection, bool)> {
    let a = Analysis::new(g, Options::default())?;
    let all = a.all_sections(m)?;
    let agree = all[1..]
        .iter()
        .map(|s| is_isomorphic(&all[0].group, &s.group))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|x| x);
    Ok((all.into_iter().next().unwrap(), agree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::projective::pgl2;
    use crate::named::*;

    fn maximal_of_order(a: &Analysis, order: u64) -> PermGroup {
        a.maximal_classes()
            .into_iter()
            .find(|c| c.order() == order)
            .unwrap()
            .representative
            .into_group()
    }

    #[test]
    fn pgl2_7_sections() {
        let g = pgl2(7).unwrap();
        let a = Analysis::new(&g, Options::default()).unwrap();
        let orders: Vec<u64> = a.maximal_classes().iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![168, 42, 16, 12]);
        let k = maximal_of_order(&a, 168);
        let s = a.sec(&k).unwrap();
        assert_eq!(s.order(), 1);
        assert_eq!(s.source_pair.k.order_u64(), Some(336));
        assert_eq!(s.source_pair.l.order_u64(), Some(168));
        let s = a.sec(&maximal_of_order(&a, 42)).unwrap();
        assert_eq!(s.order(), 21);
        assert!(s.supersolvable);
        let d16 = maximal_of_order(&a, 16);
        let pairs = a.chief_pairs(&d16).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(
            (pairs[0].k.order_u64(), pairs[0].l.order_u64()),
            (Some(168), Some(1))
        );
    }

    #[test]
    fn s5_point_stabilizer_section_is_a4() {
        let g = symmetric(5).unwrap();
        let a = Analysis::new(&g, Options::default()).unwrap();
        let s = a.sec(&maximal_of_order(&a, 24)).unwrap();
        assert_eq!(s.identified, GroupId::Alternating { n: 4 });
        assert!(!s.supersolvable);
    }

    #[test]
    fn klein_four_has_two_pairs_per_maximal() {
        let g = elementary_abelian(2, 2).unwrap();
        let a = Analysis::new(&g, Options::default()).unwrap();
        for c in a.maximal_classes() {
            let pairs = a.chief_pairs(&c.representative).unwrap();
            // the two other order-2 subgroups over 1, and G over M itself
            assert_eq!(pairs.len(), 3);
            assert!(pairs[..2]
                .iter()
                .all(|p| p.l.is_trivial() && p.k.order_u64() == Some(2)));
            assert!(pairs[2].l.same_group(&c.representative) && pairs[2].k.order_u64() == Some(4));
            assert_eq!(a.sec(&c.representative).unwrap().order(), 1);
        }
    }

    #[test]
    fn non_maximal_is_rejected() {
        let g = symmetric(4).unwrap();
        let v4 = g
            .subgroup(vec![
                crate::Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
                crate::Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
            ])
            .unwrap();
        assert_eq!(sec(&g, &v4).unwrap_err(), GroupError::NotMaximal);
    }

    #[test]
    fn product_formula_and_uniqueness() {
        for g in [
            symmetric(4).unwrap(),
            pgl2(7).unwrap(),
            dihedral(6).unwrap(),
        ] {
            let a = Analysis::new(&g, Options::default()).unwrap();
            let order = g.order_u64().unwrap();
            for (i, c) in a.maximal_classes().iter().enumerate() {
                let m = c.order();
                for p in a.chief_pairs(&c.representative).unwrap() {
                    let k = p.k.order_u64().unwrap();
                    let t = a.table();
                    let mut mk = t.set_of(&c.representative).unwrap();
                    mk.intersect_with(&t.set_of(&p.k).unwrap());
                    assert_eq!(k * m, order * mk.count_ones(..) as u64);
                }
                let secs = a.sections_of_class(i).unwrap();
                for s in &secs[1..] {
                    assert!(is_isomorphic(&secs[0].group, &s.group).unwrap());
                }
            }
        }
    }
}
