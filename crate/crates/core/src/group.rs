//! Permutation groups backed by a stabilizer chain.
//!
//! The chain is built eagerly by deterministic Schreier–Sims, so every
//! order reported by a [`PermGroup`] is certified rather than estimated.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::error::{GroupError, Result};
use crate::perm::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;

/// One level of the stabilizer chain: the orbit of a base point under the
/// pointwise stabilizer of the earlier base points, with explicit coset
/// representatives.
#[derive(Clone)]
pub(crate) struct Level {
    pub(crate) point: usize,
    pub(crate) gens: Vec<Permutation>,
    pub(crate) orbit: Vec<u32>,
    position: Vec<u32>,
    pub(crate) reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
}

impl Level {
    fn new(point: usize, gens: Vec<Permutation>, degree: usize) -> Self {
        let mut level = Level {
            point,
            gens,
            orbit: Vec::new(),
            position: vec![NOT_IN_ORBIT; degree],
            reps: Vec::new(),
            inv_reps: Vec::new(),
        };
        level.rebuild();
        level
    }

    fn rebuild(&mut self) {
        let degree = self.position.len();
        self.position.iter_mut().for_each(|p| *p = NOT_IN_ORBIT);
        self.orbit.clear();
        self.reps.clear();
        self.inv_reps.clear();
        let id = Permutation::identity(degree);
        self.orbit.push(self.point as u32);
        self.position[self.point] = 0;
        self.reps.push(id.clone());
        self.inv_reps.push(id);
        let mut k = 0;
        while k < self.orbit.len() {
            let x = self.orbit[k] as usize;
            for s in &self.gens {
                let y = s.apply(x);
                if self.position[y] == NOT_IN_ORBIT {
                    self.position[y] = self.orbit.len() as u32;
                    self.orbit.push(y as u32);
                    let rep = self.reps[k].compose(s);
                    self.inv_reps.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            k += 1;
        }
    }

    #[inline]
    pub(crate) fn position(&self, point: usize) -> Option<usize> {
        match self.position[point] {
            NOT_IN_ORBIT => None,
            p => Some(p as usize),
        }
    }
}

/// Sifts `g` through `levels[start..]`. Returns the residue and the level at
/// which sifting stopped (`levels.len()` if it passed every level).
fn strip(levels: &[Level], mut g: Permutation, start: usize) -> (Permutation, usize) {
    for (l, level) in levels.iter().enumerate().skip(start) {
        let beta = g.apply(level.point);
        match level.position(beta) {
            None => return (g, l),
            Some(k) => g = g.compose(&level.inv_reps[k]),
        }
    }
    (g, levels.len())
}

/// Point moved by `g` with the largest orbit under `gens` (ties: least point).
fn greedy_point(g: &Permutation, gens: &[Permutation], degree: usize) -> usize {
    let mut best = None;
    let mut best_len = 0;
    let mut seen = vec![false; degree];
    let mut lens = vec![0usize; degree];
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for s in gens {
                let y = s.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        for &x in &orbit {
            lens[x] = orbit.len();
        }
    }
    for p in g.support() {
        if lens[p] > best_len {
            best_len = lens[p];
            best = Some(p);
        }
    }
    best.expect("non-identity permutation moves a point")
}

fn schreier_sims(degree: usize, gens: &[Permutation]) -> Vec<Level> {
    let mut strong: Vec<Permutation> = Vec::new();
    for g in gens {
        if !g.is_identity() && !strong.contains(g) {
            strong.push(g.clone());
        }
    }
    if strong.is_empty() {
        return Vec::new();
    }
    let mut base: Vec<usize> = Vec::new();
    for s in &strong {
        if base.iter().all(|&b| s.apply(b) == b) {
            let fixing: Vec<Permutation> = strong
                .iter()
                .filter(|t| base.iter().all(|&b| t.apply(b) == b))
                .cloned()
                .collect();
            base.push(greedy_point(s, &fixing, degree));
        }
    }
    let mut levels: Vec<Level> = base
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let lg = strong
                .iter()
                .filter(|t| base[..i].iter().all(|&c| t.apply(c) == c))
                .cloned()
                .collect();
            Level::new(b, lg, degree)
        })
        .collect();

    let mut i = levels.len() as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        match first_failing_schreier_generator(&levels, iu) {
            None => i -= 1,
            Some((residue, j)) => {
                if j == levels.len() {
                    let p = greedy_point(&residue, std::slice::from_ref(&residue), degree);
                    levels.push(Level::new(p, Vec::new(), degree));
                }
                for level in levels.iter_mut().take(j + 1).skip(iu + 1) {
                    level.gens.push(residue.clone());
                    level.rebuild();
                }
                i = j as isize;
            }
        }
    }
    levels
}

fn first_failing_schreier_generator(levels: &[Level], i: usize) -> Option<(Permutation, usize)> {
    let level = &levels[i];
    for k in 0..level.orbit.len() {
        let beta = level.orbit[k] as usize;
        for s in &level.gens {
            let image = s.apply(beta);
            let t = level
                .position(image)
                .expect("orbit closed under level gens");
            let h = level.reps[k].compose(s).compose(&level.inv_reps[t]);
            if h.is_identity() {
                continue;
            }
            let (residue, j) = strip(levels, h, i + 1);
            if j < levels.len() || !residue.is_identity() {
                return Some((residue, j));
            }
        }
    }
    None
}

/// A finitely generated permutation group with a verified stabilizer chain.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Arc<[Level]>,
    order: BigUint,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(Self::from_checked(degree, generators))
    }

    pub(crate) fn from_checked(degree: usize, generators: Vec<Permutation>) -> Self {
        let levels = schreier_sims(degree, &generators);
        let order = levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        PermGroup {
            degree,
            generators,
            levels: levels.into(),
            order,
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_checked(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The order as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    /// Order as a machine integer, failing if it exceeds `cap`.
    pub fn order_within(&self, cap: u64) -> Result<u64> {
        match self.order_u64() {
            Some(n) if n <= cap => Ok(n),
            _ => Err(GroupError::OrderExceedsCap {
                order: self.order.to_string(),
                cap,
            }),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in self.levels.iter() {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub(crate) fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn check_degree(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(())
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        self.check_degree(p)?;
        Ok(self.has(p))
    }

    /// Membership for a permutation already known to have the right degree.
    pub fn has(&self, p: &Permutation) -> bool {
        let (residue, level) = strip(&self.levels, p.clone(), 0);
        level == self.levels.len() && residue.is_identity()
    }

    /// Base images determine an element uniquely.
    pub fn base_images(&self, p: &Permutation) -> Vec<u32> {
        self.levels
            .iter()
            .map(|l| p.apply(l.point) as u32)
            .collect()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit
    }

    /// Orbits of the group on points, each sorted, listed by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut o = self.orbit(p);
            for &x in &o {
                seen[x] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    /// Uniformly random element: one random coset representative per level.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = self.identity();
        for level in self.levels.iter().rev() {
            let k = rng.gen_range(0..level.reps.len());
            g = g.compose(&level.reps[k]);
        }
        g
    }

    /// Calls `f` on every element, each exactly once.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        let k = self.levels.len();
        if k == 0 {
            f(&self.identity());
            return;
        }
        // prefix[l] = r_{k-1} ... r_l
        let mut idx = vec![0usize; k];
        let mut prefix: Vec<Permutation> = vec![self.identity(); k + 1];
        for l in (0..k).rev() {
            prefix[l] = prefix[l + 1].compose(&self.levels[l].reps[0]);
        }
        loop {
            f(&prefix[0]);
            let mut l = 0;
            loop {
                if l == k {
                    return;
                }
                idx[l] += 1;
                if idx[l] < self.levels[l].reps.len() {
                    break;
                }
                idx[l] = 0;
                l += 1;
            }
            for m in (0..=l).rev() {
                prefix[m] = prefix[m + 1].compose(&self.levels[m].reps[idx[m]]);
            }
        }
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        self.for_each_element(|g| out.push(g.clone()));
        out
    }

    /// `<self, extra>`.
    pub fn closure(&self, extra: &[Permutation]) -> Result<PermGroup> {
        for g in extra {
            self.check_degree(g)?;
        }
        let mut gens = self.generators.clone();
        for g in extra {
            if !self.has(g) {
                gens.push(g.clone());
            }
        }
        if gens.len() == self.generators.len() {
            return Ok(self.clone());
        }
        Ok(PermGroup::from_checked(self.degree, gens))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Wraps `gens` as a subgroup after checking each one is a member.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<Subgroup> {
        for g in &gens {
            if !self.contains(g)? {
                return Err(GroupError::NotContained);
            }
        }
        Ok(Subgroup(PermGroup::from_checked(self.degree, gens)))
    }

    /// The whole group viewed as a subgroup of itself.
    pub fn as_subgroup(&self) -> Subgroup {
        Subgroup(self.clone())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup(PermGroup::trivial(self.degree))
    }

    fn require_subgroup(&self, h: &PermGroup) -> Result<()> {
        if h.degree != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: h.degree,
            });
        }
        if !h.is_subgroup_of(self) {
            return Err(GroupError::NotContained);
        }
        Ok(())
    }

    /// Index `|self : h|` for a subgroup `h`.
    pub fn index_of(&self, h: &PermGroup) -> BigUint {
        &self.order / &h.order
    }

    /// True if every generator conjugate of `h` stays in `h`.
    pub fn is_normal(&self, h: &PermGroup) -> Result<bool> {
        self.require_subgroup(h)?;
        Ok(self.normalizes(h))
    }

    pub(crate) fn normalizes(&self, h: &PermGroup) -> bool {
        self.generators
            .iter()
            .all(|g| h.generators.iter().all(|x| h.has(&x.conjugate_by(g))))
    }

    /// Smallest normal subgroup of `self` containing `s`.
    pub fn normal_closure(&self, s: &PermGroup) -> Result<Subgroup> {
        self.require_subgroup(s)?;
        Ok(Subgroup(self.normal_closure_of(s.generators())))
    }

    pub(crate) fn normal_closure_of(&self, seeds: &[Permutation]) -> PermGroup {
        let mut gens: Vec<Permutation> =
            seeds.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut n = PermGroup::from_checked(self.degree, gens.clone());
        loop {
            let mut fresh = Vec::new();
            for x in n.generators.iter() {
                for g in &self.generators {
                    let c = x.conjugate_by(g);
                    if !n.has(&c) && !fresh.contains(&c) {
                        fresh.push(c);
                    }
                }
            }
            if fresh.is_empty() {
                return n;
            }
            gens.extend(fresh);
            n = PermGroup::from_checked(self.degree, gens.clone());
        }
    }

    /// `h^g = g^-1 h g`.
    pub fn conjugate_subgroup(&self, h: &PermGroup, g: &Permutation) -> Result<Subgroup> {
        self.require_subgroup(h)?;
        if !self.contains(g)? {
            return Err(GroupError::NotContained);
        }
        let gens = h.generators.iter().map(|x| x.conjugate_by(g)).collect();
        Ok(Subgroup(PermGroup::from_checked(self.degree, gens)))
    }

    /// Commutator subgroup `[G, G]`.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.inverse().compose(&b.inverse()).compose(a).compose(b);
                if !c.is_identity() && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure_of(&comms)
    }

    /// Derived series down to its stable term.
    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order == last.order {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    /// Lower central series `G = γ1 ≥ γ2 = [G, G] ≥ γ3 = [γ2, G] ≥ ...`.
    pub fn lower_central_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let mut comms = Vec::new();
            for a in last.generators() {
                for b in &self.generators {
                    let c = a.inverse().compose(&b.inverse()).compose(a).compose(b);
                    if !c.is_identity() && !comms.contains(&c) {
                        comms.push(c);
                    }
                }
            }
            let next = self.normal_closure_of(&comms);
            if next.order == last.order {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_trivial()
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order.to_string())
            .field("generators", &self.generators)
            .finish()
    }
}

/// A subgroup of some ambient [`PermGroup`]. Membership of every generator
/// in the ambient group is checked where the value is created.
#[derive(Clone, Debug)]
pub struct Subgroup(PermGroup);

impl Subgroup {
    pub fn group(&self) -> &PermGroup {
        &self.0
    }

    pub fn into_group(self) -> PermGroup {
        self.0
    }

    pub(crate) fn from_group(g: PermGroup) -> Self {
        Subgroup(g)
    }
}

impl Deref for Subgroup {
    type Target = PermGroup;

    fn deref(&self) -> &PermGroup {
        &self.0
    }
}

impl From<Subgroup> for PermGroup {
    fn from(s: Subgroup) -> PermGroup {
        s.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cs).unwrap()
    }

    /// Closure by repeated multiplication: the independent order oracle.
    fn brute_closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut set = HashSet::new();
        let id = Permutation::identity(degree);
        set.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.compose(g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn symmetric_five_from_cycle_and_transposition() {
        let g = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1]])]).unwrap();
        assert_eq!(g.order_u64(), Some(120));
    }

    #[test]
    fn empty_generating_set_is_trivial() {
        let g = PermGroup::new(4, vec![]).unwrap();
        assert_eq!(g.order_u64(), Some(1));
        assert!(g.has(&Permutation::identity(4)));
    }

    #[test]
    fn three_cycles_generate_a5() {
        let gens = vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[2, 3, 4]])];
        let oracle = brute_closure(5, &gens).len() as u64;
        assert_eq!(oracle, 60);
        let g = PermGroup::new(5, gens).unwrap();
        assert_eq!(g.order_u64(), Some(oracle));
        assert!(!g.contains(&cyc(5, &[&[0, 1]])).unwrap());
        assert!(g.contains(&Permutation::identity(5)).unwrap());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        assert!(matches!(
            PermGroup::new(5, vec![cyc(4, &[&[0, 1]])]),
            Err(GroupError::DegreeMismatch { .. })
        ));
        let g = PermGroup::trivial(3);
        assert!(g.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn s4_contains_four_cycle() {
        let gens = vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 1]])];
        let g = PermGroup::new(4, gens.clone()).unwrap();
        let oracle = brute_closure(4, &gens);
        assert!(oracle.contains(&cyc(4, &[&[0, 1, 2, 3]])));
        assert!(g.contains(&cyc(4, &[&[0, 1, 2, 3]])).unwrap());
    }

    #[test]
    fn membership_agrees_with_enumeration_for_small_groups() {
        let cases: Vec<(usize, Vec<Permutation>)> = vec![
            (
                5,
                vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[1, 4], &[2, 3]])],
            ),
            (
                6,
                vec![
                    cyc(6, &[&[0, 1, 2]]),
                    cyc(6, &[&[3, 4, 5]]),
                    cyc(6, &[&[0, 3], &[1, 4], &[2, 5]]),
                ],
            ),
            (
                4,
                vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])],
            ),
        ];
        for (n, gens) in cases {
            let g = PermGroup::new(n, gens.clone()).unwrap();
            let oracle = brute_closure(n, &gens);
            assert_eq!(g.order_u64().unwrap() as usize, oracle.len());
            let all = brute_closure(
                n,
                &[cyc(n, &[&(0..n).collect::<Vec<_>>()]), cyc(n, &[&[0, 1]])],
            );
            for p in all {
                assert_eq!(g.has(&p), oracle.contains(&p));
            }
            let elems: HashSet<Permutation> = g.elements().into_iter().collect();
            assert_eq!(elems, oracle);
        }
    }

    #[test]
    fn chain_invariants_hold() {
        let g = PermGroup::new(
            7,
            vec![cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]]), cyc(7, &[&[0, 1]])],
        )
        .unwrap();
        let prod: usize = g.transversal_sizes().iter().product();
        assert_eq!(BigUint::from(prod), *g.order());
        assert_eq!(g.order_u64(), Some(5040));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let len = rng.gen_range(1..=20);
            let mut w = g.identity();
            for _ in 0..len {
                w = w.compose(&g.generators()[rng.gen_range(0..2)]);
            }
            assert!(g.has(&w));
            assert!(g.has(&g.random_element(&mut rng)));
        }
    }

    #[test]
    fn normal_closure_examples() {
        let s4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 1]])]).unwrap();
        let s = s4.subgroup(vec![cyc(4, &[&[0, 1], &[2, 3]])]).unwrap();
        let v4 = s4.normal_closure(&s).unwrap();
        assert_eq!(v4.order_u64(), Some(4));
        assert!(s4.is_normal(&v4).unwrap());
        let t = s4.subgroup(vec![cyc(4, &[&[0, 1]])]).unwrap();
        assert_eq!(s4.normal_closure(&t).unwrap().order_u64(), Some(24));
        let triv = s4.trivial_subgroup();
        assert_eq!(s4.normal_closure(&triv).unwrap().order_u64(), Some(1));
    }

    #[test]
    fn normal_closure_matches_brute_force_conjugates() {
        // oracle: close {x^g : g in G} under multiplication
        let s4_gens = vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 1]])];
        let s4 = PermGroup::new(4, s4_gens.clone()).unwrap();
        let x = cyc(4, &[&[0, 1], &[2, 3]]);
        let conjugates: Vec<Permutation> =
            s4.elements().iter().map(|g| x.conjugate_by(g)).collect();
        let oracle = brute_closure(4, &conjugates);
        let n = s4.normal_closure(&s4.subgroup(vec![x]).unwrap()).unwrap();
        assert_eq!(oracle.len() as u64, n.order_u64().unwrap());
    }

    #[test]
    fn derived_series_of_s4() {
        let s4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 1]])]).unwrap();
        let orders: Vec<u64> = s4
            .derived_series()
            .iter()
            .map(|g| g.order_u64().unwrap())
            .collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(s4.is_solvable());
        assert!(!s4.is_nilpotent());
        let a5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[2, 3, 4]])]).unwrap();
        assert!(!a5.is_solvable());
        assert_eq!(a5.derived_subgroup().order_u64(), Some(60));
    }

    #[test]
    fn conjugate_subgroup_and_errors() {
        let s4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 1]])]).unwrap();
        let h = s4.subgroup(vec![cyc(4, &[&[0, 1]])]).unwrap();
        let c = s4.conjugate_subgroup(&h, &cyc(4, &[&[1, 2]])).unwrap();
        assert!(c.has(&cyc(4, &[&[0, 2]])));
        let outside = PermGroup::new(4, vec![cyc(4, &[&[0, 1]])]).unwrap();
        let small = PermGroup::new(4, vec![cyc(4, &[&[2, 3]])]).unwrap();
        assert_eq!(outside.is_normal(&small), Err(GroupError::NotContained));
        assert_eq!(
            s4.subgroup(vec![cyc(4, &[&[0, 1]])]).unwrap().order_u64(),
            Some(2)
        );
    }
}
