//! Property tests over the built-in catalog of small groups.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use csection_core::action::quotient_group;
use csection_core::csection::{Analysis, Options};
use csection_core::iso::{identify, is_isomorphic};
use csection_core::lattice::{minimal_normal_subgroups, normal_subgroups, SubgroupLattice};
use csection_core::report::{Status, VerdictReport};
use csection_core::series::{
    chief_series_with, is_nilpotent, is_solvable, is_supersolvable, Selection,
};
use csection_core::verify::{check_conclusion, verify_theorem_instance};
use csection_core::{scan, PermGroup, Permutation};
use proptest::prelude::*;

fn catalog() -> &'static [(String, PermGroup, u64)] {
    static CATALOG: OnceLock<Vec<(String, PermGroup, u64)>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        scan::catalog()
            .into_iter()
            .map(|(s, o)| (s.label(), s.build(5000).unwrap(), o))
            .collect()
    })
}

fn group_index(max_order: u64) -> impl Strategy<Value = usize> {
    let idx: Vec<usize> = catalog()
        .iter()
        .enumerate()
        .filter(|(_, (_, _, o))| *o <= max_order)
        .map(|(i, _)| i)
        .collect();
    prop::sample::select(idx)
}

fn word(g: &PermGroup, letters: &[usize]) -> Permutation {
    let gens = g.generators();
    let mut p = g.identity();
    if gens.is_empty() {
        return p;
    }
    for &l in letters {
        p = p.compose(&gens[l % gens.len()]);
    }
    p
}

fn brute_elements(g: &PermGroup) -> HashSet<Vec<u32>> {
    let id: Vec<u32> = (0..g.degree() as u32).collect();
    let gens: Vec<&[u32]> = g.generators().iter().map(|p| p.images()).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for s in &gens {
            let x: Vec<u32> = e.iter().map(|&i| s[i as usize]).collect();
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    seen
}

fn relabel(g: &PermGroup, sigma: &Permutation) -> PermGroup {
    let gens = g.generators().iter().map(|p| p.conjugate_by(sigma)).collect();
    PermGroup::new(g.degree(), gens).unwrap()
}

fn no_pass_without_completeness(r: &VerdictReport) -> bool {
    (r.completeness || r.status != Status::Pass) && r.sub_checks.iter().all(no_pass_without_completeness)
}

fn group_and_relabeling(max_order: u64) -> impl Strategy<Value = (usize, Permutation)> {
    group_index(max_order).prop_flat_map(|i| {
        let d = catalog()[i].1.degree() as u32;
        (Just(i), Just((0..d).collect::<Vec<u32>>()).prop_shuffle())
            .prop_map(|(i, v)| (i, Permutation::from_images(v).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transversals_multiply_to_order_and_words_sift(
        i in group_index(500),
        letters in prop::collection::vec(0usize..64, 0..=20),
    ) {
        let (label, g, order) = &catalog()[i];
        let product: u64 = g.transversal_sizes().iter().map(|&s| s as u64).product();
        prop_assert_eq!(product, *order, "{}", label);
        prop_assert!(g.contains(&word(g, &letters)).unwrap(), "{}", label);
    }

    #[test]
    fn membership_agrees_with_enumeration(
        i in group_index(500),
        letters in prop::collection::vec(0usize..64, 0..=12),
        swap in any::<(prop::sample::Index, prop::sample::Index)>(),
    ) {
        let (label, g, _) = &catalog()[i];
        let elems = brute_elements(g);
        let d = g.degree();
        let (a, b) = (swap.0.index(d), swap.1.index(d));
        let mut p = word(g, &letters);
        if a != b {
            p = p.compose(&Permutation::from_cycles(d, &[vec![a, b]]).unwrap());
        }
        prop_assert_eq!(g.contains(&p).unwrap(), elems.contains(p.images()), "{}", label);
    }

    #[test]
    fn class_size_times_normalizer_is_order(i in group_index(500)) {
        let (label, g, order) = &catalog()[i];
        let lat = SubgroupLattice::build(g, 5000).unwrap();
        for c in lat.classes() {
            prop_assert_eq!(c.class_size as u64 * c.normalizer_order, *order, "{}", label);
        }
    }

    #[test]
    fn quotient_order_times_kernel_is_order(i in group_index(500), pick in any::<prop::sample::Index>()) {
        let (label, g, order) = &catalog()[i];
        let normals = normal_subgroups(g).unwrap();
        let n = normals[pick.index(normals.len())].group();
        let q = quotient_group(g, n).unwrap();
        prop_assert_eq!(q.order_u64().unwrap() * n.order_u64().unwrap(), *order, "{}", label);
    }

    #[test]
    fn normal_closure_is_normal(
        i in group_index(500),
        words in prop::collection::vec(prop::collection::vec(0usize..64, 1..6), 1..3),
    ) {
        let (label, g, _) = &catalog()[i];
        let s = PermGroup::new(g.degree(), words.iter().map(|w| word(g, w)).collect()).unwrap();
        let closure = g.normal_closure(&s).unwrap();
        let c = closure.group();
        prop_assert!(s.is_subgroup_of(c), "{}", label);
        for h in c.generators() {
            for x in g.generators() {
                prop_assert!(c.contains(&h.conjugate_by(x)).unwrap(), "{}", label);
            }
        }
    }

    #[test]
    fn solvability_hierarchy(i in group_index(500)) {
        let (label, g, _) = &catalog()[i];
        let ss = is_supersolvable(g).unwrap();
        if ss {
            prop_assert!(is_solvable(g), "{}", label);
        }
        if is_nilpotent(g) {
            prop_assert!(ss, "{}", label);
        }
    }

    #[test]
    fn supersolvability_is_series_independent(i in group_index(500), seed in any::<u64>()) {
        let (label, g, _) = &catalog()[i];
        let series = chief_series_with(g, Selection::Random(seed)).unwrap();
        let primes = series.factors.iter().all(|f| f.is_prime_order);
        prop_assert_eq!(primes, is_supersolvable(g).unwrap(), "{}", label);
        let mut a = series.factor_orders();
        let mut b = chief_series_with(g, Selection::Canonical).unwrap().factor_orders();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b, "{}", label);
    }

    #[test]
    fn isomorphism_survives_relabeling((i, sigma) in group_and_relabeling(200)) {
        let (label, g, _) = &catalog()[i];
        let h = relabel(g, &sigma);
        prop_assert!(is_isomorphic(g, g).unwrap(), "{}", label);
        prop_assert!(is_isomorphic(g, &h).unwrap(), "{}", label);
        prop_assert!(is_isomorphic(&h, g).unwrap(), "{}", label);
        prop_assert_eq!(identify(g).unwrap(), identify(&h).unwrap(), "{}", label);
        prop_assert_eq!(check_conclusion(g).unwrap().status, check_conclusion(&h).unwrap().status, "{}", label);
    }

    #[test]
    fn maximal_times_chief_factor_covers_group(i in group_index(500)) {
        let (label, g, order) = &catalog()[i];
        let a = Analysis::new(g, Options::default()).unwrap();
        for (ci, class) in a.maximal_classes().iter().enumerate() {
            let m = class.representative.group();
            for s in a.sections_of_class(ci).unwrap() {
                let k = s.source_pair.k.group();
                let meet = k.elements().iter().filter(|x| m.has(x)).count() as u64;
                prop_assert_eq!(
                    k.order_u64().unwrap() * m.order_u64().unwrap(),
                    order * meet,
                    "{} M{}", label, ci
                );
            }
        }
    }

    #[test]
    fn maximal_minimal_normal_has_trivial_section(i in group_index(500)) {
        let (label, g, _) = &catalog()[i];
        let a = Analysis::new(g, Options::default()).unwrap();
        let minimal = minimal_normal_subgroups(g).unwrap();
        for (ci, class) in a.maximal_classes().iter().enumerate() {
            let m = class.representative.group();
            if minimal.iter().any(|n| n.group().same_group(m)) {
                prop_assert_eq!(a.sec_of_class(ci).unwrap().order(), 1, "{} M{}", label, ci);
            }
        }
    }

    #[test]
    fn incomplete_runs_never_pass(i in group_index(500), cap in 1u64..400, seed in any::<u64>()) {
        let (label, g, _) = &catalog()[i];
        let options = Options { order_cap: cap, seed, ..Options::default() };
        let r = verify_theorem_instance(g, options).unwrap();
        prop_assert!(no_pass_without_completeness(&r), "{}", label);
        let text = serde_json::to_string(&r).unwrap();
        let back: VerdictReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, r);
    }
}
