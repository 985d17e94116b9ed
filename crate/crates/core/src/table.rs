//! Element-indexed view of a desk-scale group.
//!
//! Elements are sorted lexicographically by their image lists, so index 0 is
//! always the identity and every index-based choice is reproducible. Subsets
//! of the group are bitsets over these indices.

use std::cmp::Ordering;
use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A set of element indices.
pub type ElemSet = FixedBitSet;

/// Groups up to this order get a dense multiplication table.
pub const DENSE_TABLE_CAP: usize = 6000;

/// Largest group an element table will enumerate.
pub const TABLE_ORDER_CAP: u64 = 20_000;

pub struct ElementTable {
    group: PermGroup,
    perms: Vec<Permutation>,
    base: Vec<usize>,
    lookup: HashMap<Vec<u32>, u32>,
    dense: Option<Vec<u16>>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    gens: Vec<usize>,
}

impl ElementTable {
    pub fn new(group: &PermGroup) -> Result<Self> {
        let n = group.order_within(TABLE_ORDER_CAP)? as usize;
        let mut perms = group.elements();
        perms.sort_unstable();
        let base = group.base();
        let mut lookup = HashMap::with_capacity(n);
        for (i, p) in perms.iter().enumerate() {
            lookup.insert(base.iter().map(|&b| p.apply(b) as u32).collect(), i as u32);
        }
        let mut table = ElementTable {
            group: group.clone(),
            perms,
            base,
            lookup,
            dense: None,
            inv: Vec::new(),
            orders: Vec::new(),
            gens: Vec::new(),
        };
        table.inv = (0..n)
            .map(|i| table.index_of(&table.perms[i].inverse()).expect("closed") as u32)
            .collect();
        table.gens = group
            .generators()
            .iter()
            .filter_map(|g| table.index_of(g))
            .filter(|&i| i != 0)
            .collect();
        if n <= DENSE_TABLE_CAP {
            table.dense = Some(table.build_dense());
        }
        table.orders = (0..n).map(|i| table.compute_order(i)).collect();
        Ok(table)
    }

    fn slow_mul(&self, a: usize, b: usize) -> usize {
        let pa = &self.perms[a];
        let pb = &self.perms[b];
        let key: Vec<u32> = self
            .base
            .iter()
            .map(|&x| pb.apply(pa.apply(x)) as u32)
            .collect();
        self.lookup[&key] as usize
    }

    fn build_dense(&self) -> Vec<u16> {
        let n = self.perms.len();
        // right multiplication by each generator, then a spanning tree from the identity
        let right: Vec<Vec<u32>> = self
            .gens
            .iter()
            .map(|&g| (0..n).map(|i| self.slow_mul(i, g) as u32).collect())
            .collect();
        let mut parent = vec![u32::MAX; n];
        let mut label = vec![0u32; n];
        let mut order = vec![0usize];
        parent[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let x = order[k];
            for (gi, r) in right.iter().enumerate() {
                let y = r[x] as usize;
                if parent[y] == u32::MAX {
                    parent[y] = x as u32;
                    label[y] = gi as u32;
                    order.push(y);
                }
            }
            k += 1;
        }
        let mut dense = vec![0u16; n * n];
        for i in 0..n {
            let row = &mut dense[i * n..(i + 1) * n];
            row[0] = i as u16;
            for &j in &order[1..] {
                let p = parent[j] as usize;
                row[j] = right[label[j] as usize][row[p] as usize] as u16;
            }
        }
        dense
    }

    fn compute_order(&self, i: usize) -> u32 {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perm(&self, i: usize) -> &Permutation {
        &self.perms[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.group.degree() {
            return None;
        }
        let key: Vec<u32> = self.base.iter().map(|&b| p.apply(b) as u32).collect();
        let i = *self.lookup.get(&key)? as usize;
        (self.perms[i] == *p).then_some(i)
    }

    /// Indices of the group's generators (identity generators dropped).
    pub fn generator_indices(&self) -> &[usize] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.dense {
            Some(t) => t[a * self.perms.len() + b] as usize,
            None => self.slow_mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `by^-1 * a * by`.
    #[inline]
    pub fn conj(&self, a: usize, by: usize) -> usize {
        self.mul(self.mul(self.inv(by), a), by)
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn elem_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn empty_set(&self) -> ElemSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn trivial_set(&self) -> ElemSet {
        let mut s = self.empty_set();
        s.insert(0);
        s
    }

    pub fn full_set(&self) -> ElemSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> ElemSet {
        self.closure_from(self.trivial_set(), &[], gens, usize::MAX)
            .expect("unbounded")
    }

    /// `<start, extra>` where `start` is the subgroup generated by `start_gens`.
    /// Returns `None` once the result would exceed `limit` elements.
    pub fn closure_from(
        &self,
        start: ElemSet,
        start_gens: &[usize],
        extra: &[usize],
        limit: usize,
    ) -> Option<ElemSet> {
        let mut set = start;
        let mut queue: Vec<usize> = set.ones().collect();
        let mut gens: Vec<usize> = start_gens.to_vec();
        for &g in extra {
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for &g in &gens {
                let y = self.mul(x, g);
                if !set.contains(y) {
                    set.insert(y);
                    queue.push(y);
                    if queue.len() > limit {
                        return None;
                    }
                }
            }
            k += 1;
        }
        Some(set)
    }

    /// Greedy generating set: least-index elements not yet generated.
    pub fn small_generators(&self, set: &ElemSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_set();
        let target = set.count_ones(..);
        let mut cur_count = 1;
        for x in set.ones() {
            if cur_count == target {
                break;
            }
            if current.contains(x) {
                continue;
            }
            current = self
                .closure_from(current, &gens, &[x], usize::MAX)
                .expect("unbounded");
            gens.push(x);
            cur_count = current.count_ones(..);
        }
        gens
    }

    /// Image of a subset under conjugation by `by`.
    pub fn conj_set(&self, set: &ElemSet, by: usize) -> ElemSet {
        let mut out = self.empty_set();
        for x in set.ones() {
            out.insert(self.conj(x, by));
        }
        out
    }

    pub fn is_normal_set(&self, set: &ElemSet) -> bool {
        let gens = self.small_generators(set);
        self.gens
            .iter()
            .all(|&g| gens.iter().all(|&x| set.contains(self.conj(x, g))))
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[usize]) -> ElemSet {
        let mut set = self.closure(seeds);
        loop {
            let gens = self.small_generators(&set);
            let mut fresh = Vec::new();
            for &x in &gens {
                for &g in &self.gens {
                    let c = self.conj(x, g);
                    if !set.contains(c) && !fresh.contains(&c) {
                        fresh.push(c);
                    }
                }
            }
            if fresh.is_empty() {
                return set;
            }
            set = self
                .closure_from(set, &gens, &fresh, usize::MAX)
                .expect("unbounded");
        }
    }

    /// Conjugacy classes of elements, each sorted, listed by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < members.len() {
                let x = members[k];
                for &g in &self.gens {
                    let y = self.conj(x, g);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Every normal subgroup, ordered by size and then lexicographically.
    pub fn normal_subgroups(&self) -> Vec<ElemSet> {
        let mut found: Vec<ElemSet> = vec![self.trivial_set()];
        for class in self.conjugacy_classes() {
            if class[0] == 0 {
                continue;
            }
            let n = self.closure(&class);
            if !found.contains(&n) {
                found.push(n);
            }
        }
        let mut gens: Vec<Vec<usize>> = found.iter().map(|s| self.small_generators(s)).collect();
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                if found[i].is_subset(&found[j]) || found[j].is_subset(&found[i]) {
                    continue;
                }
                let mut g = gens[i].clone();
                g.extend(gens[j].iter().copied());
                let join = self.closure(&g);
                if !found.contains(&join) {
                    gens.push(self.small_generators(&join));
                    found.push(join);
                }
            }
            i += 1;
        }
        found.sort_by(cmp_sets);
        found
    }

    /// Minimal normal subgroups (atoms of the normal-subgroup lattice).
    pub fn minimal_normal_subgroups(&self) -> Vec<ElemSet> {
        let normals = self.normal_subgroups();
        minimal_over(&normals, &self.trivial_set())
    }

    /// Materializes a subset as a permutation group.
    pub fn to_group(&self, set: &ElemSet) -> PermGroup {
        let gens = self
            .small_generators(set)
            .into_iter()
            .map(|i| self.perms[i].clone())
            .collect();
        PermGroup::from_checked(self.group.degree(), gens)
    }

    /// Subset of elements belonging to a subgroup of the table's group.
    pub fn set_of(&self, h: &PermGroup) -> Option<ElemSet> {
        let gens: Option<Vec<usize>> = h.generators().iter().map(|g| self.index_of(g)).collect();
        Some(self.closure(&gens?))
    }

    /// Centralizer of a subset, as an element set.
    pub fn centralizer_set(&self, set: &ElemSet) -> ElemSet {
        let gens = self.small_generators(set);
        let mut out = self.empty_set();
        for x in 0..self.len() {
            if gens.iter().all(|&g| self.commutes(x, g)) {
                out.insert(x);
            }
        }
        out
    }

    pub fn center_set(&self) -> ElemSet {
        self.centralizer_set(&self.full_set())
    }

    /// Normalizer of a subgroup given as a set.
    pub fn normalizer_set(&self, set: &ElemSet) -> ElemSet {
        let gens = self.small_generators(set);
        let mut out = self.empty_set();
        for x in 0..self.len() {
            if gens.iter().all(|&g| set.contains(self.conj(g, x))) {
                out.insert(x);
            }
        }
        out
    }
}

/// Size first, then lexicographic comparison of sorted index lists.
pub fn cmp_sets(a: &ElemSet, b: &ElemSet) -> Ordering {
    a.count_ones(..)
        .cmp(&b.count_ones(..))
        .then_with(|| a.ones().cmp(b.ones()))
}

/// Members of `sets` strictly above `floor` with nothing from `sets` strictly between.
pub fn minimal_over(sets: &[ElemSet], floor: &ElemSet) -> Vec<ElemSet> {
    let above: Vec<&ElemSet> = sets
        .iter()
        .filter(|s| floor.is_subset(s) && *s != floor)
        .collect();
    above
        .iter()
        .filter(|s| !above.iter().any(|t| t != *s && t.is_subset(s)))
        .map(|s| (*s).clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cs).unwrap()
    }

    fn sym(n: usize) -> PermGroup {
        PermGroup::new(
            n,
            vec![cyc(n, &[&(0..n).collect::<Vec<_>>()]), cyc(n, &[&[0, 1]])],
        )
        .unwrap()
    }

    #[test]
    fn table_multiplication_matches_composition() {
        let g = sym(4);
        let t = ElementTable::new(&g).unwrap();
        assert_eq!(t.len(), 24);
        assert!(t.perm(0).is_identity());
        for a in 0..24 {
            for b in 0..24 {
                let c = t.perm(a).compose(t.perm(b));
                assert_eq!(t.index_of(&c), Some(t.mul(a, b)));
                assert_eq!(t.slow_mul(a, b), t.mul(a, b));
            }
            assert_eq!(t.mul(a, t.inv(a)), 0);
        }
    }

    #[test]
    fn classes_of_s4() {
        let t = ElementTable::new(&sym(4)).unwrap();
        let mut sizes: Vec<usize> = t.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let t = ElementTable::new(&sym(4)).unwrap();
        let orders: Vec<usize> = t
            .normal_subgroups()
            .iter()
            .map(|s| s.count_ones(..))
            .collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let mins = t.minimal_normal_subgroups();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].count_ones(..), 4);
    }

    #[test]
    fn normal_subgroups_agree_with_unions_of_classes() {
        // oracle: every union of classes containing the identity that is closed
        // under multiplication
        for g in [
            sym(3),
            sym(4),
            PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])]).unwrap(),
        ] {
            let t = ElementTable::new(&g).unwrap();
            let classes = t.conjugacy_classes();
            let nontrivial: Vec<&Vec<usize>> = classes.iter().filter(|c| c[0] != 0).collect();
            let mut oracle = Vec::new();
            for mask in 0u32..(1 << nontrivial.len()) {
                let mut s = t.trivial_set();
                for (k, c) in nontrivial.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        for &x in c.iter() {
                            s.insert(x);
                        }
                    }
                }
                let closed = s.ones().all(|a| s.ones().all(|b| s.contains(t.mul(a, b))));
                if closed {
                    oracle.push(s);
                }
            }
            oracle.sort_by(cmp_sets);
            assert_eq!(oracle, t.normal_subgroups());
        }
    }

    #[test]
    fn small_generators_generate() {
        let t = ElementTable::new(&sym(5)).unwrap();
        let full = t.full_set();
        let gens = t.small_generators(&full);
        assert!(gens.len() <= 7);
        assert_eq!(t.closure(&gens), full);
        assert_eq!(t.center_set().count_ones(..), 1);
    }

    #[test]
    fn sparse_mode_for_large_groups() {
        // S7 has 5040 elements: still dense. Build a sparse one by hand.
        let g = sym(5);
        let mut t = ElementTable::new(&g).unwrap();
        let dense: Vec<usize> = (0..120).map(|b| t.mul(17, b)).collect();
        t.dense = None;
        let sparse: Vec<usize> = (0..120).map(|b| t.mul(17, b)).collect();
        assert_eq!(dense, sparse);
    }
}
