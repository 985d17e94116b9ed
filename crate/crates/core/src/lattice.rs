//! Conjugacy classes of subgroups by cyclic extension.
//!
//! Every subgroup is generated by its elements of prime-power order, so
//! starting from the trivial group and repeatedly forming `<H, x>` over class
//! representatives `H` reaches every subgroup. Each new subgroup is stored with
//! all of its conjugates; the canonical representative of a class is the
//! conjugate whose sorted element-index list is lexicographically least.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GroupError, Result};
use crate::group::{PermGroup, Subgroup};
use crate::table::{cmp_sets, ElemSet, ElementTable};

/// Default order cap for exhaustive enumeration.
pub const DEFAULT_ORDER_CAP: u64 = 5000;

/// Random candidates tried by the fallback maximal-subgroup search.
const RANDOM_ATTEMPTS: usize = 400;

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    /// Number of distinct conjugates.
    pub class_size: usize,
    pub normalizer_order: u64,
    /// Whether the enumeration that produced this class was exhaustive.
    pub verified_complete: bool,
}

impl SubgroupClass {
    pub fn order(&self) -> u64 {
        self.representative.order_u64().expect("desk-scale")
    }
}

#[derive(Clone, Debug)]
struct ClassData {
    canonical: ElemSet,
    conjugates: Vec<ElemSet>,
}

/// Conjugacy classes of subgroups of one group, over its element table.
pub struct SubgroupLattice {
    table: ElementTable,
    classes: Vec<ClassData>,
    class_of: HashMap<ElemSet, usize>,
    complete: bool,
}

fn is_prime_power(mut n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while !n.is_multiple_of(p) {
        p += 1;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl SubgroupLattice {
    /// Every conjugacy class of subgroups. Fails when `|G| > order_cap`.
    pub fn build(g: &PermGroup, order_cap: u64) -> Result<Self> {
        let order = g.order_within(order_cap)?;
        let mut lat = Self::empty(ElementTable::new(g)?);
        lat.extend_all(order as usize);
        Ok(lat)
    }

    /// Classes of subgroups whose order divides `bound`.
    pub fn build_bounded(g: &PermGroup, order_cap: u64, bound: u64) -> Result<Self> {
        g.order_within(order_cap)?;
        let mut lat = Self::empty(ElementTable::new(g)?);
        lat.extend_all(bound as usize);
        Ok(lat)
    }

    fn empty(table: ElementTable) -> Self {
        let trivial = table.trivial_set();
        let mut class_of = HashMap::new();
        class_of.insert(trivial.clone(), 0);
        SubgroupLattice {
            classes: vec![ClassData {
                canonical: trivial.clone(),
                conjugates: vec![trivial],
            }],
            table,
            class_of,
            complete: true,
        }
    }

    fn add_class(&mut self, set: ElemSet) -> usize {
        if let Some(&c) = self.class_of.get(&set) {
            return c;
        }
        let id = self.classes.len();
        let mut conjugates = vec![set.clone()];
        self.class_of.insert(set, id);
        let mut k = 0;
        while k < conjugates.len() {
            for &g in self.table.generator_indices() {
                let c = self.table.conj_set(&conjugates[k], g);
                if !self.class_of.contains_key(&c) {
                    self.class_of.insert(c.clone(), id);
                    conjugates.push(c);
                }
            }
            k += 1;
        }
        let canonical = conjugates
            .iter()
            .min_by(|a, b| cmp_sets(a, b))
            .unwrap()
            .clone();
        self.classes.push(ClassData {
            canonical,
            conjugates,
        });
        id
    }

    /// Elements of prime-power order, one per orbit of `N` acting by
    /// conjugation on cyclic subgroups outside `h`.
    fn extension_candidates(&self, h: &ElemSet) -> Vec<usize> {
        let t = &self.table;
        let n_set = t.normalizer_set(h);
        let n_gens = t.small_generators(&n_set);
        let mut seen = h.clone();
        let mut out = Vec::new();
        for x in 0..t.len() {
            if seen.contains(x) || !is_prime_power(t.elem_order(x)) {
                continue;
            }
            out.push(x);
            let mut orbit = vec![x];
            seen.insert(x);
            let mut k = 0;
            while k < orbit.len() {
                let y = orbit[k];
                for &g in &n_gens {
                    let z = t.conj(y, g);
                    if !seen.contains(z) {
                        seen.insert(z);
                        orbit.push(z);
                    }
                }
                k += 1;
            }
            for &y in &orbit {
                let o = t.elem_order(y);
                for j in 2..o {
                    if gcd(j, o) == 1 {
                        seen.insert(t.pow(y, j as u64));
                    }
                }
            }
        }
        out
    }

    fn extend_all(&mut self, bound: usize) {
        let mut k = 0;
        while k < self.classes.len() {
            let h = self.classes[k].canonical.clone();
            let h_gens = self.table.small_generators(&h);
            for x in self.extension_candidates(&h) {
                let Some(s) = self.table.closure_from(h.clone(), &h_gens, &[x], bound) else {
                    continue;
                };
                if bound.is_multiple_of(s.count_ones(..)) {
                    self.add_class(s);
                }
            }
            k += 1;
        }
        let mut order: Vec<usize> = (0..self.classes.len()).collect();
        order.sort_by(|&a, &b| cmp_sets(&self.classes[a].canonical, &self.classes[b].canonical));
        let classes: Vec<ClassData> = order.iter().map(|&i| self.classes[i].clone()).collect();
        self.classes = classes;
        self.class_of.clear();
        for (i, c) in self.classes.iter().enumerate() {
            for s in &c.conjugates {
                self.class_of.insert(s.clone(), i);
            }
        }
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn into_table(self) -> ElementTable {
        self.table
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.conjugates.len()).sum()
    }

    /// Canonical representative of class `i`, as an element set.
    pub fn class_set(&self, i: usize) -> &ElemSet {
        &self.classes[i].canonical
    }

    pub fn class_members(&self, i: usize) -> &[ElemSet] {
        &self.classes[i].conjugates
    }

    /// Class index of a subgroup given as an element set.
    pub fn class_index(&self, set: &ElemSet) -> Option<usize> {
        self.class_of.get(set).copied()
    }

    fn describe(&self, i: usize) -> SubgroupClass {
        let c = &self.classes[i];
        SubgroupClass {
            representative: Subgroup::from_group(self.table.to_group(&c.canonical)),
            class_size: c.conjugates.len(),
            normalizer_order: (self.table.len() / c.conjugates.len()) as u64,
            verified_complete: self.complete,
        }
    }

    /// All classes, ordered by order and then canonical form.
    pub fn classes(&self) -> Vec<SubgroupClass> {
        (0..self.classes.len()).map(|i| self.describe(i)).collect()
    }

    /// Indices of classes whose subgroups are maximal, by descending order.
    pub fn maximal_class_indices(&self) -> Vec<usize> {
        let n = self.table.len();
        let mut out: Vec<usize> = (0..self.classes.len())
            .filter(|&i| {
                let m = &self.classes[i].canonical;
                let size = m.count_ones(..);
                size < n
                    && !self.classes.iter().any(|c| {
                        let s = c.canonical.count_ones(..);
                        s > size
                            && s < n
                            && (n / size).is_multiple_of(n / s)
                            && c.conjugates.iter().any(|k| m.is_subset(k))
                    })
            })
            .collect();
        out.sort_by(|&a, &b| {
            let (x, y) = (&self.classes[a].canonical, &self.classes[b].canonical);
            y.count_ones(..)
                .cmp(&x.count_ones(..))
                .then_with(|| x.ones().cmp(y.ones()))
        });
        out
    }

    /// Classes of subgroups of exact index `n`.
    pub fn classes_of_index(&self, n: u64) -> Vec<usize> {
        let order = self.table.len() as u64;
        (0..self.classes.len())
            .filter(|&i| self.classes[i].canonical.count_ones(..) as u64 * n == order)
            .collect()
    }
}

/// Exhaustive list of conjugacy classes of subgroups.
pub fn all_subgroups(g: &PermGroup, order_cap: u64) -> Result<Vec<SubgroupClass>> {
    Ok(SubgroupLattice::build(g, order_cap)?.classes())
}

/// Checks `M != G` and `<M, x> = G` for a representative `x` of every coset of `M`.
pub fn certify_maximal(table: &ElementTable, m: &ElemSet) -> bool {
    let n = table.len();
    if m.count_ones(..) == n {
        return false;
    }
    let m_gens = table.small_generators(m);
    let mut covered = m.clone();
    for x in 0..n {
        if covered.contains(x) {
            continue;
        }
        for y in m.ones() {
            covered.insert(table.mul(y, x));
        }
        let s = table
            .closure_from(m.clone(), &m_gens, &[x], n)
            .expect("bounded by |G|");
        if s.count_ones(..) != n {
            return false;
        }
    }
    true
}

/// Classes of maximal subgroups, by descending order then canonical form.
pub fn maximal_subgroups(g: &PermGroup) -> Result<Vec<SubgroupClass>> {
    maximal_subgroups_with(g, DEFAULT_ORDER_CAP, 0)
}

/// As [`maximal_subgroups`]; above `order_cap` a seeded random search is used
/// and the classes are marked incomplete.
pub fn maximal_subgroups_with(
    g: &PermGroup,
    order_cap: u64,
    seed: u64,
) -> Result<Vec<SubgroupClass>> {
    if g.order_within(order_cap).is_ok() {
        let lat = SubgroupLattice::build(g, order_cap)?;
        return Ok(maximal_from_lattice(&lat));
    }
    random_maximal_subgroups(g, seed)
}

/// Maximal classes of an already built lattice, each re-certified.
pub fn maximal_from_lattice(lat: &SubgroupLattice) -> Vec<SubgroupClass> {
    lat.maximal_class_indices()
        .into_iter()
        .map(|i| {
            let mut c = lat.describe(i);
            c.verified_complete &= certify_maximal(lat.table(), lat.class_set(i));
            c
        })
        .collect()
}

fn random_maximal_subgroups(g: &PermGroup, seed: u64) -> Result<Vec<SubgroupClass>> {
    let table = ElementTable::new(g)?;
    let n = table.len();
    let full = table.full_set();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<(ElemSet, usize)> = Vec::new();
    for _ in 0..RANDOM_ATTEMPTS {
        let mut h = table.closure(&[rng.gen_range(0..n)]);
        if h == full {
            continue;
        }
        // grow while some element keeps the closure proper
        loop {
            let h_gens = table.small_generators(&h);
            let mut grown = false;
            for _ in 0..64 {
                let x = rng.gen_range(0..n);
                if h.contains(x) {
                    continue;
                }
                let s = table.closure_from(h.clone(), &h_gens, &[x], n).unwrap();
                if s != full {
                    h = s;
                    grown = true;
                    break;
                }
            }
            if !grown {
                break;
            }
        }
        if !certify_maximal(&table, &h) {
            continue;
        }
        let canonical = (0..n)
            .map(|x| table.conj_set(&h, x))
            .min_by(cmp_sets)
            .unwrap();
        if !found.iter().any(|(c, _)| *c == canonical) {
            let normalizer = table.normalizer_set(&canonical).count_ones(..);
            found.push((canonical, n / normalizer));
        }
    }
    found.sort_by(|a, b| {
        b.0.count_ones(..)
            .cmp(&a.0.count_ones(..))
            .then_with(|| a.0.ones().cmp(b.0.ones()))
    });
    Ok(found
        .into_iter()
        .map(|(set, class_size)| SubgroupClass {
            representative: Subgroup::from_group(table.to_group(&set)),
            class_size,
            normalizer_order: (n / class_size) as u64,
            verified_complete: false,
        })
        .collect())
}

/// Classes of subgroups of exact index `n`.
pub fn subgroups_of_index(g: &PermGroup, n: u64) -> Result<Vec<SubgroupClass>> {
    subgroups_of_index_capped(g, n, DEFAULT_ORDER_CAP)
}

pub fn subgroups_of_index_capped(
    g: &PermGroup,
    n: u64,
    order_cap: u64,
) -> Result<Vec<SubgroupClass>> {
    let order = g.order_within(order_cap)?;
    if n == 0 || order % n != 0 {
        return Ok(Vec::new());
    }
    let lat = SubgroupLattice::build_bounded(g, order_cap, order / n)?;
    Ok(lat
        .classes_of_index(n)
        .into_iter()
        .map(|i| lat.describe(i))
        .collect())
}

fn sets_to_subgroups(table: &ElementTable, sets: Vec<ElemSet>) -> Vec<Subgroup> {
    sets.iter()
        .map(|s| Subgroup::from_group(table.to_group(s)))
        .collect()
}

/// Every normal subgroup, ordered by order and then canonical form.
pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<Subgroup>> {
    let table = ElementTable::new(g)?;
    let sets = table.normal_subgroups();
    Ok(sets_to_subgroups(&table, sets))
}

pub fn minimal_normal_subgroups(g: &PermGroup) -> Result<Vec<Subgroup>> {
    let table = ElementTable::new(g)?;
    let sets = table.minimal_normal_subgroups();
    Ok(sets_to_subgroups(&table, sets))
}

/// Element sets of all Klein four subgroups.
fn klein_four_sets(table: &ElementTable) -> Vec<ElemSet> {
    let involutions: Vec<usize> = (0..table.len())
        .filter(|&x| table.elem_order(x) == 2)
        .collect();
    let mut out: Vec<ElemSet> = Vec::new();
    for (i, &a) in involutions.iter().enumerate() {
        for &b in &involutions[i + 1..] {
            if !table.commutes(a, b) {
                continue;
            }
            let mut s = table.trivial_set();
            s.insert(a);
            s.insert(b);
            s.insert(table.mul(a, b));
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Conjugacy classes of Klein four subgroups with their normalizer orders.
pub fn klein_four_classes(g: &PermGroup) -> Result<Vec<SubgroupClass>> {
    let table = ElementTable::new(g)?;
    let n = table.len();
    let mut reps: Vec<(ElemSet, usize)> = Vec::new();
    let mut assigned: Vec<ElemSet> = Vec::new();
    for s in klein_four_sets(&table) {
        if assigned.contains(&s) {
            continue;
        }
        let conjugates = conjugates_of(&table, &s);
        let canonical = conjugates
            .iter()
            .min_by(|a, b| cmp_sets(a, b))
            .unwrap()
            .clone();
        reps.push((canonical, conjugates.len()));
        assigned.extend(conjugates);
    }
    reps.sort_by(|a, b| cmp_sets(&a.0, &b.0));
    Ok(reps
        .into_iter()
        .map(|(set, size)| SubgroupClass {
            representative: Subgroup::from_group(table.to_group(&set)),
            class_size: size,
            normalizer_order: (n / size) as u64,
            verified_complete: true,
        })
        .collect())
}

/// Orbit of a subgroup under conjugation.
pub fn conjugates_of(table: &ElementTable, set: &ElemSet) -> Vec<ElemSet> {
    let mut out = vec![set.clone()];
    let mut k = 0;
    while k < out.len() {
        for &g in table.generator_indices() {
            let c = table.conj_set(&out[k], g);
            if !out.contains(&c) {
                out.push(c);
            }
        }
        k += 1;
    }
    out
}

/// Whether two subgroups of `g` are conjugate in `g`.
pub fn are_conjugate(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> Result<bool> {
    let table = ElementTable::new(g)?;
    let sa = table.set_of(a).ok_or(GroupError::NotContained)?;
    let sb = table.set_of(b).ok_or(GroupError::NotContained)?;
    if sa.count_ones(..) != sb.count_ones(..) {
        return Ok(false);
    }
    Ok(conjugates_of(&table, &sa).contains(&sb))
}

/// Number of `g`-classes met by a list of subgroups of `g`.
pub fn fused_class_count(g: &PermGroup, subgroups: &[PermGroup]) -> Result<usize> {
    let table = ElementTable::new(g)?;
    let mut seen: Vec<ElemSet> = Vec::new();
    let mut count = 0;
    for h in subgroups {
        let s = table.set_of(h).ok_or(GroupError::NotContained)?;
        if seen.contains(&s) {
            continue;
        }
        count += 1;
        seen.extend(conjugates_of(&table, &s));
    }
    Ok(count)
}
