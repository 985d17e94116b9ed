//! Normalizers and centralizers.
//!
//! Groups of order at most [`SCAN_LIMIT`] are handled by scanning every
//! element. Larger groups walk the stabilizer-chain tree of base images and
//! prune partial images that cannot extend to a solution.

use num_bigint::BigUint;

use crate::error::{GroupError, Result};
use crate::group::{PermGroup, Subgroup};
use crate::perm::Permutation;

/// Orders up to this bound use a full element scan.
pub const SCAN_LIMIT: u64 = 10_000;

/// Visits every element of `g` whose base images survive `keep`.
///
/// `keep(level, images)` sees the images of base points `0..=level`.
fn backtrack<K, F>(g: &PermGroup, keep: &K, visit: &mut F)
where
    K: Fn(usize, &[usize]) -> bool,
    F: FnMut(&Permutation),
{
    let levels = g.levels();
    if levels.is_empty() {
        visit(&g.identity());
        return;
    }
    let mut images = Vec::with_capacity(levels.len());
    descend(g, 0, &g.identity(), &mut images, keep, visit);
}

fn descend<K, F>(
    g: &PermGroup,
    l: usize,
    suffix: &Permutation,
    images: &mut Vec<usize>,
    keep: &K,
    visit: &mut F,
) where
    K: Fn(usize, &[usize]) -> bool,
    F: FnMut(&Permutation),
{
    let levels = g.levels();
    if l == levels.len() {
        visit(suffix);
        return;
    }
    let level = &levels[l];
    for (k, &beta) in level.orbit.iter().enumerate() {
        images.push(suffix.apply(beta as usize));
        if keep(l, images) {
            let next = level.reps[k].compose(suffix);
            descend(g, l + 1, &next, images, keep, visit);
        }
        images.pop();
    }
}

fn orbit_lengths(h: &PermGroup) -> Vec<usize> {
    let mut lens = vec![0; h.degree()];
    for o in h.orbits() {
        for &p in &o {
            lens[p] = o.len();
        }
    }
    lens
}

fn check_inside(g: &PermGroup, h: &PermGroup) -> Result<()> {
    if h.degree() != g.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: g.degree(),
            found: h.degree(),
        });
    }
    if !h.is_subgroup_of(g) {
        return Err(GroupError::NotContained);
    }
    Ok(())
}

fn use_scan(g: &PermGroup) -> bool {
    *g.order() <= BigUint::from(SCAN_LIMIT)
}

/// `N_G(H)`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<Subgroup> {
    check_inside(g, h)?;
    let base = g.base();
    let lens = orbit_lengths(h);
    let scan = use_scan(g);
    let keep = |l: usize, imgs: &[usize]| scan || lens[base[l]] == lens[imgs[l]];
    let mut result = h.clone();
    let mut visit = |x: &Permutation| {
        if !result.has(x) && h.generators().iter().all(|y| h.has(&y.conjugate_by(x))) {
            result = result
                .closure(std::slice::from_ref(x))
                .expect("same degree");
        }
    };
    backtrack(g, &keep, &mut visit);
    Ok(Subgroup::from_group(result))
}

/// `C_G(H)`.
pub fn centralizer(g: &PermGroup, h: &PermGroup) -> Result<Subgroup> {
    check_inside(g, h)?;
    let base = g.base();
    let lens = orbit_lengths(h);
    let scan = use_scan(g);
    // (b_l^y)^x = (b_l^x)^y: when b_l^y is an earlier base point its image is forced.
    let forced: Vec<Vec<(usize, Permutation)>> = base
        .iter()
        .enumerate()
        .map(|(l, &b)| {
            h.generators()
                .iter()
                .filter_map(|y| {
                    let by = y.apply(b);
                    base[..=l]
                        .iter()
                        .position(|&c| c == by)
                        .map(|m| (m, y.clone()))
                })
                .collect()
        })
        .collect();
    let keep = |l: usize, imgs: &[usize]| {
        scan || (lens[base[l]] == lens[imgs[l]]
            && forced[l].iter().all(|(m, y)| imgs[*m] == y.apply(imgs[l])))
    };
    let commutes = |x: &Permutation| h.generators().iter().all(|y| x.compose(y) == y.compose(x));
    let mut result = PermGroup::trivial(g.degree());
    let mut visit = |x: &Permutation| {
        if !result.has(x) && commutes(x) {
            result = result
                .closure(std::slice::from_ref(x))
                .expect("same degree");
        }
    };
    backtrack(g, &keep, &mut visit);
    Ok(Subgroup::from_group(result))
}

/// `Z(G)`.
pub fn center(g: &PermGroup) -> Subgroup {
    centralizer(g, g).expect("a group is contained in itself")
}

/// Elements of `g` passing `pred`, in enumeration order.
pub fn filter_elements<P: Fn(&Permutation) -> bool>(g: &PermGroup, pred: P) -> Vec<Permutation> {
    let mut out = Vec::new();
    backtrack(g, &|_, _| true, &mut |x: &Permutation| {
        if pred(x) {
            out.push(x.clone());
        }
    });
    out
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

    fn brute_normalizer_order(g: &PermGroup, h: &PermGroup) -> usize {
        let hs: std::collections::HashSet<_> = h.elements().into_iter().collect();
        g.elements()
            .iter()
            .filter(|x| hs.iter().all(|y| hs.contains(&y.conjugate_by(x))))
            .count()
    }

    #[test]
    fn normalizer_of_four_cycle_in_s4() {
        let s4 = sym(4);
        let h = s4.subgroup(vec![cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(brute_normalizer_order(&s4, &h), 8);
        assert_eq!(normalizer(&s4, &h).unwrap().order_u64(), Some(8));
    }

    #[test]
    fn normalizer_of_whole_group() {
        let s4 = sym(4);
        assert_eq!(normalizer(&s4, &s4).unwrap().order_u64(), Some(24));
    }

    #[test]
    fn centralizer_and_center() {
        let s4 = sym(4);
        let h = s4.subgroup(vec![cyc(4, &[&[0, 1], &[2, 3]])]).unwrap();
        assert_eq!(centralizer(&s4, &h).unwrap().order_u64(), Some(8));
        assert_eq!(center(&s4).order_u64(), Some(1));
        let d8 = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])]).unwrap();
        assert_eq!(center(&d8).order_u64(), Some(2));
    }

    #[test]
    fn pruned_search_agrees_with_scan() {
        // S8 has order 40320 > SCAN_LIMIT, so this exercises the pruned walk.
        let s8 = sym(8);
        let h = s8
            .subgroup(vec![cyc(8, &[&[0, 1, 2]]), cyc(8, &[&[3, 4]])])
            .unwrap();
        // N = (S3 x S2 x S3 on the rest)... |N| = 6 * 2 * 6 = 72
        assert_eq!(normalizer(&s8, &h).unwrap().order_u64(), Some(72));
        // C = <(0 1 2)> x <(3 4)> x S3 = 3 * 2 * 6 = 36
        assert_eq!(centralizer(&s8, &h).unwrap().order_u64(), Some(36));
    }

    #[test]
    fn orbit_stabilizer_identity_for_normalizers() {
        let s5 = sym(5);
        let subs = vec![
            vec![cyc(5, &[&[0, 1, 2]])],
            vec![cyc(5, &[&[0, 1], &[2, 3]])],
            vec![cyc(5, &[&[0, 1, 2, 3, 4]])],
            vec![cyc(5, &[&[0, 1]]), cyc(5, &[&[2, 3]])],
        ];
        for gens in subs {
            let h = s5.subgroup(gens).unwrap();
            let n = normalizer(&s5, &h).unwrap();
            // count distinct conjugates directly
            let mut conj: Vec<Vec<Permutation>> = Vec::new();
            for g in s5.elements() {
                let mut els: Vec<Permutation> =
                    h.elements().iter().map(|x| x.conjugate_by(&g)).collect();
                els.sort();
                if !conj.contains(&els) {
                    conj.push(els);
                }
            }
            assert_eq!(n.order_u64().unwrap() * conj.len() as u64, 120);
        }
    }

    #[test]
    fn rejects_non_subgroups() {
        let s4 = sym(4);
        let other = PermGroup::new(5, vec![cyc(5, &[&[0, 1]])]).unwrap();
        assert!(normalizer(&s4, &other).is_err());
    }
}
