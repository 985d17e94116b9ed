use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;

/// A bijection on `{0, .., degree - 1}`.
///
/// Products act on the right: `a.compose(&b)` maps `i` to `b(a(i))`, so
/// `i^(ab) = (i^a)^b` as in the usual permutation-group conventions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(GroupError::PointOutOfRange {
                    point: x,
                    degree: n,
                });
            }
            if seen[x] {
                return Err(GroupError::NotABijection);
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Self { images }
    }

    /// Builds a permutation from 0-indexed disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt >= degree {
                    return Err(GroupError::PointOutOfRange { point: pt, degree });
                }
                if touched[pt] {
                    return Err(GroupError::MalformedCycle(format!(
                        "point {} appears twice",
                        pt + 1
                    )));
                }
                touched[pt] = true;
            }
            for (k, &pt) in cycle.iter().enumerate() {
                images[pt] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Self { images })
    }

    /// Parses cycles written with 1-indexed points, e.g. `[[1,2,3],[4,5]]`.
    pub fn from_one_indexed_cycles(
        degree: usize,
        cycles: &[Vec<usize>],
    ) -> Result<Self, GroupError> {
        let mut zero_based = Vec::with_capacity(cycles.len());
        for cycle in cycles {
            let mut c = Vec::with_capacity(cycle.len());
            for &pt in cycle {
                if pt == 0 || pt > degree {
                    return Err(GroupError::PointOutOfRange { point: pt, degree });
                }
                c.push(pt - 1);
            }
            zero_based.push(c);
        }
        Self::from_cycles(degree, &zero_based)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // i -> g(self(g^-1(i)))
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length > 1, 0-indexed, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Element order: lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer_lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Cycles with 1-indexed points, the external notation.
    pub fn to_one_indexed_cycles(&self) -> Vec<Vec<usize>> {
        self.cycles()
            .into_iter()
            .map(|c| c.into_iter().map(|p| p + 1).collect())
            .collect()
    }

    /// Support: points moved by the permutation.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i)
    }
}

fn num_integer_lcm(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    /// 1-indexed cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.to_one_indexed_cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(Permutation::from_images_unchecked)
    }

    #[test]
    fn cycles_round_trip_one_indexed() {
        let p = Permutation::from_one_indexed_cycles(5, &[vec![1, 2, 3], vec![4, 5]]).unwrap();
        assert_eq!(p.to_one_indexed_cycles(), vec![vec![1, 2, 3], vec![4, 5]]);
        assert_eq!(p.order(), 6);
        assert!(!p.is_even());
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(matches!(
            Permutation::from_one_indexed_cycles(3, &[vec![1, 4]]),
            Err(GroupError::PointOutOfRange { .. })
        ));
        assert!(matches!(
            Permutation::from_one_indexed_cycles(3, &[vec![1, 2], vec![2, 3]]),
            Err(GroupError::MalformedCycle(_))
        ));
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn composition_acts_on_the_right() {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.compose(&b).apply(0), 2);
    }

    proptest! {
        #[test]
        fn inverse_cancels(p in arb_perm(9)) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }

        #[test]
        fn conjugation_matches_products(p in arb_perm(7), g in arb_perm(7)) {
            let direct = g.inverse().compose(&p).compose(&g);
            prop_assert_eq!(p.conjugate_by(&g), direct);
        }

        #[test]
        fn power_by_order_is_identity(p in arb_perm(10)) {
            prop_assert!(p.pow(p.order()).is_identity());
        }
    }
}
