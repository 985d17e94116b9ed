//! Actions on right cosets and quotient groups.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Default degree cap for coset actions.
pub const DEFAULT_DEGREE_CAP: usize = 5000;

/// The action of `G` on the right cosets `Hx` of a subgroup `H`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    /// Permutation image of `G`; point `i` is the coset `H * coset_reps[i]`.
    pub image: PermGroup,
    /// Images of the generators of `G`, in generator order.
    pub generator_images: Vec<Permutation>,
    pub coset_reps: Vec<Permutation>,
    subgroup_elements: Vec<Permutation>,
    index: HashMap<Vec<u32>, usize>,
}

impl CosetAction {
    /// Lexicographically least element of `H x`, identifying the coset.
    fn key(subgroup_elements: &[Permutation], x: &Permutation) -> Vec<u32> {
        subgroup_elements
            .iter()
            .map(|h| h.compose(x))
            .min()
            .expect("a subgroup has an identity")
            .images()
            .to_vec()
    }

    pub fn degree(&self) -> usize {
        self.coset_reps.len()
    }

    /// Index of the coset containing `x`.
    pub fn coset_of(&self, x: &Permutation) -> Option<usize> {
        self.index
            .get(&Self::key(&self.subgroup_elements, x))
            .copied()
    }

    /// Image of an arbitrary element of `G` under the action homomorphism.
    pub fn map(&self, g: &Permutation) -> Permutation {
        let images = self
            .coset_reps
            .iter()
            .map(|r| self.coset_of(&r.compose(g)).expect("element of G") as u32)
            .collect();
        Permutation::from_images_unchecked(images)
    }
}

/// Permutation action of `g` on the right cosets of `h`.
pub fn coset_action(g: &PermGroup, h: &PermGroup, degree_cap: usize) -> Result<CosetAction> {
    if h.degree() != g.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: g.degree(),
            found: h.degree(),
        });
    }
    if !h.is_subgroup_of(g) {
        return Err(GroupError::NotContained);
    }
    let index = g.index_of(h);
    match index.to_usize() {
        Some(i) if i <= degree_cap => {}
        _ => {
            return Err(GroupError::IndexExceedsCap {
                index: index.to_string(),
                cap: degree_cap,
            })
        }
    }
    let subgroup_elements = h.elements();
    let mut reps = vec![g.identity()];
    let mut lookup = HashMap::new();
    lookup.insert(CosetAction::key(&subgroup_elements, &g.identity()), 0usize);
    let mut gen_images: Vec<Vec<u32>> = vec![Vec::new(); g.generators().len()];
    let mut k = 0;
    while k < reps.len() {
        for (j, s) in g.generators().iter().enumerate() {
            let y = reps[k].compose(s);
            let key = CosetAction::key(&subgroup_elements, &y);
            let next = lookup.len();
            let target = *lookup.entry(key).or_insert_with(|| {
                reps.push(y);
                next
            });
            gen_images[j].push(target as u32);
        }
        k += 1;
    }
    let generator_images: Vec<Permutation> = gen_images
        .into_iter()
        .map(Permutation::from_images_unchecked)
        .collect();
    let image = PermGroup::from_checked(reps.len(), generator_images.clone());
    Ok(CosetAction {
        image,
        generator_images,
        coset_reps: reps,
        subgroup_elements,
        index: lookup,
    })
}

/// Faithful permutation representation of `G/N` via the coset action.
pub fn quotient_group(g: &PermGroup, n: &PermGroup) -> Result<PermGroup> {
    quotient_group_capped(g, n, DEFAULT_DEGREE_CAP)
}

pub fn quotient_group_capped(g: &PermGroup, n: &PermGroup, degree_cap: usize) -> Result<PermGroup> {
    if !g.is_normal(n)? {
        return Err(GroupError::NotNormal);
    }
    if n.same_group(g) {
        return Ok(PermGroup::trivial(1));
    }
    Ok(coset_action(g, n, degree_cap)?.image)
}
