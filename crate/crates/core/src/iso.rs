//! Isomorphism testing and identification against a closed catalog.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::matrix::field::is_prime;
use crate::matrix::projective::{psl2, sl};
use crate::named;
use crate::perm::Permutation;
use crate::table::{ElemSet, ElementTable};

/// Largest order accepted by isomorphism tests and identification.
pub const ISO_ORDER_CAP: u64 = 20_000;

/// Field orders of the `L2(q)` catalog entries.
pub const L2_CATALOG: [u64; 8] = [4, 5, 7, 8, 9, 11, 13, 17];

/// Largest `p` for the Frobenius groups `p:d` in the catalog.
pub const FROBENIUS_MAX_PRIME: u64 = 31;

/// Isomorphism type of a group, as far as the catalog can name it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupId {
    Cyclic {
        n: u64,
    },
    ElementaryAbelian {
        p: u64,
        k: u32,
    },
    Dihedral {
        order: u64,
    },
    Alternating {
        n: u32,
    },
    Symmetric {
        n: u32,
    },
    L2 {
        q: u64,
    },
    DirectProduct {
        factors: Vec<GroupId>,
    },
    /// `Q8`, `SL(2,3)`, or a Frobenius group `p:d`.
    Named {
        tag: String,
    },
    UnknownSimple {
        order: u64,
    },
    Composite {
        order: u64,
    },
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Cyclic { n } => write!(f, "Z{n}"),
            GroupId::ElementaryAbelian { p, k } => write!(f, "{p}^{k}"),
            GroupId::Dihedral { order } => write!(f, "D{order}"),
            GroupId::Alternating { n } => write!(f, "A{n}"),
            GroupId::Symmetric { n } => write!(f, "S{n}"),
            GroupId::L2 { q } => write!(f, "L2({q})"),
            GroupId::DirectProduct { factors } => {
                let parts: Vec<String> = factors.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
            GroupId::Named { tag } => write!(f, "{tag}"),
            GroupId::UnknownSimple { order } => write!(f, "unknown simple group of order {order}"),
            GroupId::Composite { order } => write!(f, "unidentified group of order {order}"),
        }
    }
}

impl GroupId {
    pub fn order(&self) -> Option<u64> {
        Some(match self {
            GroupId::Cyclic { n } => *n,
            GroupId::ElementaryAbelian { p, k } => p.pow(*k),
            GroupId::Dihedral { order } => *order,
            GroupId::Alternating { n } => (1..=*n as u64).product::<u64>() / 2,
            GroupId::Symmetric { n } => (1..=*n as u64).product(),
            GroupId::L2 { q } => q * (q * q - 1) / if q % 2 == 0 { 1 } else { 2 },
            GroupId::DirectProduct { factors } => {
                factors.iter().map(|x| x.order()).product::<Option<u64>>()?
            }
            GroupId::Named { tag } => match tag.as_str() {
                "Q8" => 8,
                "SL(2,3)" => 24,
                t => {
                    let (p, d) = parse_frobenius(t)?;
                    p * d
                }
            },
            GroupId::UnknownSimple { order } | GroupId::Composite { order } => *order,
        })
    }

    /// Whether the catalog could name this group.
    pub fn is_identified(&self) -> bool {
        match self {
            GroupId::UnknownSimple { .. } | GroupId::Composite { .. } => false,
            GroupId::DirectProduct { factors } => factors.iter().all(|x| x.is_identified()),
            _ => true,
        }
    }

    /// `q` when this is `Z_q` with `q` prime.
    pub fn cyclic_prime(&self) -> Option<u64> {
        match self {
            GroupId::Cyclic { n } if is_prime(*n) => Some(*n),
            _ => None,
        }
    }

    /// `p` when the group is isomorphic to `L2(p)` for a prime `p >= 5`.
    /// Uses `A5 = L2(4) = L2(5)`; `A6 = L2(9)` has no prime form.
    pub fn l2_prime(&self) -> Option<u64> {
        match self {
            GroupId::L2 { q } if *q == 4 => Some(5),
            GroupId::L2 { q } if is_prime(*q) && *q >= 5 => Some(*q),
            GroupId::Alternating { n: 5 } => Some(5),
            _ => None,
        }
    }
}

fn parse_frobenius(tag: &str) -> Option<(u64, u64)> {
    let (p, d) = tag.split_once(':')?;
    Some((p.parse().ok()?, d.parse().ok()?))
}

/// Builds a representative group for an identified id.
pub fn reference_group(id: &GroupId) -> Result<PermGroup> {
    match id {
        GroupId::Cyclic { n } => named::cyclic(*n as usize),
        GroupId::ElementaryAbelian { p, k } => named::elementary_abelian(*p, *k as usize),
        GroupId::Dihedral { order } => named::dihedral(*order as usize / 2),
        GroupId::Alternating { n } => named::alternating(*n as usize),
        GroupId::Symmetric { n } => named::symmetric(*n as usize),
        GroupId::L2 { q } => psl2(*q),
        GroupId::DirectProduct { factors } => {
            let groups = factors
                .iter()
                .map(reference_group)
                .collect::<Result<Vec<_>>>()?;
            named::direct_product(&groups)
        }
        GroupId::Named { tag } => match tag.as_str() {
            "Q8" => Ok(named::quaternion8()),
            "SL(2,3)" => sl(2, 3),
            t => match parse_frobenius(t) {
                Some((p, d)) => named::frobenius(p, d),
                None => Err(GroupError::Unsupported(format!("unknown tag {t}"))),
            },
        },
        GroupId::UnknownSimple { .. } | GroupId::Composite { .. } => Err(GroupError::Unsupported(
            format!("no reference group for {id}"),
        )),
    }
}

/// Cheap isomorphism invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u64,
    /// Element order -> number of elements.
    pub element_orders: BTreeMap<u32, usize>,
    pub class_sizes: Vec<usize>,
    pub center_order: u64,
    pub derived_order: u64,
    /// Invariant factors `d1 | d2 | ...` of the abelianization.
    pub abelian_invariants: Vec<u64>,
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn ilog(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

/// Commutator subgroup as an element set.
pub(crate) fn derived_set(t: &ElementTable) -> ElemSet {
    let gens = t.generator_indices();
    let mut comms = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = t.mul(t.mul(t.inv(a), t.inv(b)), t.mul(a, b));
            if c != 0 {
                comms.push(c);
            }
        }
    }
    t.normal_closure(&comms)
}

fn abelian_invariants(t: &ElementTable, derived: &ElemSet) -> Vec<u64> {
    let d = derived.count_ones(..) as u64;
    let a = t.len() as u64 / d;
    let mut exps_per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for (p, e) in prime_factors(a) {
        // c[k] = log_p #{x in A : x^(p^k) = 1}
        let mut c = vec![0u32];
        for k in 1..=e {
            let pk = p.pow(k);
            let count = (0..t.len())
                .filter(|&x| derived.contains(t.pow(x, pk)))
                .count() as u64;
            c.push(ilog(count / d, p));
        }
        let at_least: Vec<u32> = (1..=e as usize).map(|k| c[k] - c[k - 1]).collect();
        let mut exps = Vec::new();
        for k in 1..=e as usize {
            let next = at_least.get(k).copied().unwrap_or(0);
            for _ in 0..at_least[k - 1] - next {
                exps.push(k as u32);
            }
        }
        exps.sort_unstable_by(|x, y| y.cmp(x));
        exps_per_prime.push((p, exps));
    }
    let len = exps_per_prime
        .iter()
        .map(|(_, e)| e.len())
        .max()
        .unwrap_or(0);
    let mut inv: Vec<u64> = (0..len)
        .map(|i| {
            exps_per_prime
                .iter()
                .map(|(p, e)| e.get(i).map_or(1, |&x| p.pow(x)))
                .product()
        })
        .collect();
    inv.sort_unstable();
    inv
}

impl Fingerprint {
    pub fn of(t: &ElementTable) -> Self {
        let mut element_orders = BTreeMap::new();
        for x in 0..t.len() {
            *element_orders.entry(t.elem_order(x)).or_insert(0) += 1;
        }
        let mut class_sizes: Vec<usize> = t.conjugacy_classes().iter().map(|c| c.len()).collect();
        class_sizes.sort_unstable();
        let derived = derived_set(t);
        Fingerprint {
            order: t.len() as u64,
            element_orders,
            class_sizes,
            center_order: t.center_set().count_ones(..) as u64,
            derived_order: derived.count_ones(..) as u64,
            abelian_invariants: abelian_invariants(t, &derived),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.center_order == self.order
    }
}

pub fn fingerprint(g: &PermGroup) -> Result<Fingerprint> {
    g.order_within(ISO_ORDER_CAP)?;
    Ok(Fingerprint::of(&ElementTable::new(g)?))
}

/// Short generating sequence: each step adds the candidate that enlarges the
/// generated subgroup most. Candidates are class representatives plus a few
/// seeded random elements.
fn generating_sequence(t: &ElementTable) -> Vec<usize> {
    let n = t.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    let mut pool: Vec<usize> = t.conjugacy_classes().iter().map(|c| c[0]).collect();
    pool.extend((0..48).map(|_| rng.gen_range(0..n)));
    let mut gens: Vec<usize> = Vec::new();
    let mut cur = t.trivial_set();
    while cur.count_ones(..) < n {
        let mut best: Option<(usize, ElemSet)> = None;
        for &x in &pool {
            if cur.contains(x) {
                continue;
            }
            let s = t.closure_from(cur.clone(), &gens, &[x], n).unwrap();
            let better = match &best {
                None => true,
                Some((b, bs)) => {
                    s.count_ones(..) > bs.count_ones(..)
                        || (s.count_ones(..) == bs.count_ones(..) && x < *b)
                }
            };
            if better {
                best = Some((x, s));
            }
        }
        let (x, s) = best.unwrap_or_else(|| {
            let x = (0..n).find(|&x| !cur.contains(x)).unwrap();
            (x, t.closure_from(cur.clone(), &gens, &[x], n).unwrap())
        });
        gens.push(x);
        cur = s;
    }
    gens
}

struct IsoSearch<'a> {
    a: &'a ElementTable,
    b: &'a ElementTable,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    images: Vec<usize>,
    phi: Vec<u32>,
    used: ElemSet,
}

impl IsoSearch<'_> {
    /// Whether the first `depth` generator images extend to an injective
    /// homomorphism on the subgroup they generate.
    fn consistent(&mut self, depth: usize) -> bool {
        self.phi.iter_mut().for_each(|x| *x = u32::MAX);
        self.used.clear();
        self.phi[0] = 0;
        self.used.insert(0);
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for j in 0..depth {
                let y = self.a.mul(x, self.gens[j]);
                let img = self.b.mul(self.phi[x] as usize, self.images[j]);
                if self.phi[y] == u32::MAX {
                    if self.used.contains(img) {
                        return false;
                    }
                    self.used.insert(img);
                    self.phi[y] = img as u32;
                    queue.push(y);
                } else if self.phi[y] as usize != img {
                    return false;
                }
            }
            k += 1;
        }
        true
    }

    fn search(&mut self, depth: usize) -> bool {
        if depth == self.gens.len() {
            return true;
        }
        for c in 0..self.candidates[depth].len() {
            self.images[depth] = self.candidates[depth][c];
            if self.consistent(depth + 1) && self.search(depth + 1) {
                return true;
            }
        }
        false
    }
}

/// Images of a generating sequence of `a` under some isomorphism onto `b`.
fn table_isomorphism(a: &ElementTable, b: &ElementTable) -> Option<(Vec<usize>, Vec<usize>)> {
    if a.len() != b.len() {
        return None;
    }
    let gens = generating_sequence(a);
    let class_size = |t: &ElementTable| {
        let mut size = vec![0usize; t.len()];
        let mut reps = Vec::new();
        for c in t.conjugacy_classes() {
            reps.push(c[0]);
            for &x in &c {
                size[x] = c.len();
            }
        }
        (size, reps)
    };
    let (size_a, _) = class_size(a);
    let (size_b, reps_b) = class_size(b);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .enumerate()
        .map(|(i, &g)| {
            let pool: Vec<usize> = if i == 0 {
                reps_b.clone()
            } else {
                (0..b.len()).collect()
            };
            pool.into_iter()
                .filter(|&y| b.elem_order(y) == a.elem_order(g) && size_b[y] == size_a[g])
                .collect()
        })
        .collect();
    let mut s = IsoSearch {
        a,
        b,
        images: vec![0; gens.len()],
        gens,
        candidates,
        phi: vec![u32::MAX; a.len()],
        used: b.empty_set(),
    };
    if s.search(0) && s.consistent(s.gens.len()) && s.used.count_ones(..) == b.len() {
        Some((s.gens, s.images))
    } else {
        None
    }
}

fn tables_isomorphic(a: &ElementTable, b: &ElementTable) -> bool {
    a.len() == b.len()
        && Fingerprint::of(a) == Fingerprint::of(b)
        && table_isomorphism(a, b).is_some()
}

/// Whether `g` and `h` are isomorphic as abstract groups.
pub fn is_isomorphic(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    g.order_within(ISO_ORDER_CAP)?;
    h.order_within(ISO_ORDER_CAP)?;
    if g.order() != h.order() {
        return Ok(false);
    }
    Ok(tables_isomorphic(
        &ElementTable::new(g)?,
        &ElementTable::new(h)?,
    ))
}

/// An isomorphism given by generator images, when one exists.
pub fn find_isomorphism(
    g: &PermGroup,
    h: &PermGroup,
) -> Result<Option<Vec<(Permutation, Permutation)>>> {
    g.order_within(ISO_ORDER_CAP)?;
    h.order_within(ISO_ORDER_CAP)?;
    let (a, b) = (ElementTable::new(g)?, ElementTable::new(h)?);
    if Fingerprint::of(&a) != Fingerprint::of(&b) {
        return Ok(None);
    }
    Ok(table_isomorphism(&a, &b).map(|(gens, images)| {
        gens.iter()
            .zip(&images)
            .map(|(&x, &y)| (a.perm(x).clone(), b.perm(y).clone()))
            .collect()
    }))
}

struct Reference {
    table: ElementTable,
    fingerprint: Fingerprint,
}

fn cache() -> &'static RwLock<HashMap<GroupId, Arc<Reference>>> {
    static CACHE: OnceLock<RwLock<HashMap<GroupId, Arc<Reference>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn reference(id: &GroupId) -> Result<Arc<Reference>> {
    if let Some(r) = cache().read().unwrap().get(id) {
        return Ok(r.clone());
    }
    let table = ElementTable::new(&reference_group(id)?)?;
    let fingerprint = Fingerprint::of(&table);
    let r = Arc::new(Reference { table, fingerprint });
    let mut w = cache().write().unwrap();
    Ok(w.entry(id.clone()).or_insert(r).clone())
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Nonabelian catalog members of the given order, in preference order.
fn nonabelian_candidates(order: u64) -> Vec<GroupId> {
    let mut out = Vec::new();
    for n in 4..=7u32 {
        if factorial(n as u64) / 2 == order {
            out.push(GroupId::Alternating { n });
        }
    }
    for n in 3..=7u32 {
        if factorial(n as u64) == order {
            out.push(GroupId::Symmetric { n });
        }
    }
    for q in L2_CATALOG {
        let id = GroupId::L2 { q };
        if id.order() == Some(order) {
            out.push(id);
        }
    }
    if order.is_multiple_of(2) && order >= 6 {
        out.push(GroupId::Dihedral { order });
    }
    if order == 8 {
        out.push(GroupId::Named { tag: "Q8".into() });
    }
    if order == 24 {
        out.push(GroupId::Named {
            tag: "SL(2,3)".into(),
        });
    }
    for (p, _) in prime_factors(order) {
        let d = order / p;
        if p <= FROBENIUS_MAX_PRIME && d > 2 && d < p && (p - 1) % d == 0 {
            out.push(GroupId::Named {
                tag: format!("{p}:{d}"),
            });
        }
    }
    out
}

fn abelian_id(invariants: &[u64]) -> GroupId {
    match invariants {
        [] => GroupId::Cyclic { n: 1 },
        [n] => GroupId::Cyclic { n: *n },
        [p, ..] if is_prime(*p) && invariants.iter().all(|x| x == p) => {
            GroupId::ElementaryAbelian {
                p: *p,
                k: invariants.len() as u32,
            }
        }
        _ => GroupId::DirectProduct {
            factors: invariants.iter().map(|&n| GroupId::Cyclic { n }).collect(),
        },
    }
}

fn flatten_product(ids: Vec<GroupId>) -> GroupId {
    let mut factors = Vec::new();
    for id in ids {
        match id {
            GroupId::DirectProduct { factors: f } => factors.extend(f),
            other => factors.push(other),
        }
    }
    factors.sort();
    GroupId::DirectProduct { factors }
}

/// An element `r` of order `|G|/2` and an involution `s` outside `<r>`
/// inverting it.
fn is_dihedral(t: &ElementTable) -> bool {
    let n = t.len();
    let m = n / 2;
    if !n.is_multiple_of(2) || m < 3 {
        return false;
    }
    (0..n).filter(|&r| t.elem_order(r) as usize == m).any(|r| {
        let cyclic = t.closure(&[r]);
        let r_inv = t.inv(r);
        (0..n).any(|s| !cyclic.contains(s) && t.elem_order(s) == 2 && t.conj(r, s) == r_inv)
    })
}

/// Least decomposition `A x B` with `|A|` minimal, compared by the ids.
fn direct_decomposition(t: &ElementTable) -> Option<GroupId> {
    let normals = t.normal_subgroups();
    let n = t.len();
    let mut best: Option<(usize, GroupId)> = None;
    for a in &normals {
        let sa = a.count_ones(..);
        if sa == 1 || sa == n {
            continue;
        }
        if best.as_ref().is_some_and(|(s, _)| sa > *s) {
            break;
        }
        for b in &normals {
            if b.count_ones(..) * sa != n || a.intersection(b).count() != 1 {
                continue;
            }
            let ia = identify_table(&ElementTable::new(&t.to_group(a)).ok()?);
            let ib = identify_table(&ElementTable::new(&t.to_group(b)).ok()?);
            if !ia.is_identified() || !ib.is_identified() {
                continue;
            }
            let id = flatten_product(vec![ia, ib]);
            if best.as_ref().is_none_or(|(_, cur)| id < *cur) {
                best = Some((sa, id));
            }
        }
    }
    best.map(|(_, id)| id)
}

fn identify_table(t: &ElementTable) -> GroupId {
    let fp = Fingerprint::of(t);
    if fp.is_abelian() {
        return abelian_id(&fp.abelian_invariants);
    }
    for cand in nonabelian_candidates(fp.order) {
        if let GroupId::Dihedral { .. } = cand {
            if is_dihedral(t) {
                return cand;
            }
            continue;
        }
        let Ok(r) = reference(&cand) else { continue };
        if r.fingerprint == fp && table_isomorphism(t, &r.table).is_some() {
            return cand;
        }
    }
    if let Some(id) = direct_decomposition(t) {
        return id;
    }
    if t.normal_subgroups().len() == 2 {
        GroupId::UnknownSimple { order: fp.order }
    } else {
        GroupId::Composite { order: fp.order }
    }
}

/// Names `g` from the catalog.
pub fn identify(g: &PermGroup) -> Result<GroupId> {
    g.order_within(ISO_ORDER_CAP)?;
    Ok(identify_table(&ElementTable::new(g)?))
}

/// Catalog ids that `identify` returns for their own reference groups.
pub fn catalog_ids(max_order: u64) -> Vec<GroupId> {
    let mut out = Vec::new();
    for order in 1..=max_order {
        for cand in nonabelian_candidates(order) {
            let canonical = match &cand {
                GroupId::L2 { q } => !matches!(q, 4 | 5 | 9),
                GroupId::Dihedral { order } => *order != 6,
                _ => true,
            };
            if canonical {
                out.push(cand);
            }
        }
    }
    out
}
