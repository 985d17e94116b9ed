//! Turning matrix groups into permutation groups.

use std::sync::Arc;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::matrix::field::FieldTable;
use crate::matrix::linear::Matrix;
use crate::perm::Permutation;

/// Largest point set a matrix action may produce.
pub const MAX_ACTION_DEGREE: usize = 10_000;

/// Which set of points a matrix group acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointSet {
    /// Normalized representatives of 1-spaces (first nonzero coordinate 1).
    Projective,
    /// All nonzero row vectors; faithful for every matrix group.
    NonzeroVectors,
}

/// Canonical enumeration of the points of one [`PointSet`].
#[derive(Debug, Clone)]
pub struct PointEnumeration {
    n: usize,
    field: Arc<FieldTable>,
    kind: PointSet,
    points: Vec<Vec<u32>>,
    /// Vector code -> point index (u32::MAX when not a listed point).
    index: Vec<u32>,
}

impl PointEnumeration {
    pub fn new(n: usize, field: &Arc<FieldTable>, kind: PointSet) -> Result<Self> {
        let q = field.order() as u64;
        let total = q
            .checked_pow(n as u32)
            .filter(|&t| t <= 1 << 24)
            .ok_or_else(|| GroupError::Unsupported(format!("GF({q})^{n} is too large")))?
            as usize;
        let count = match kind {
            PointSet::Projective => (total - 1) / (q as usize - 1),
            PointSet::NonzeroVectors => total - 1,
        };
        if count > MAX_ACTION_DEGREE {
            return Err(GroupError::Unsupported(format!(
                "{count} points exceed the action degree cap {MAX_ACTION_DEGREE}"
            )));
        }
        let mut points = Vec::with_capacity(count);
        let mut index = vec![u32::MAX; total];
        for code in 1..total {
            let v = Self::decode(code, n, q as usize);
            let keep = match kind {
                PointSet::NonzeroVectors => true,
                PointSet::Projective => v.iter().find(|&&x| x != 0) == Some(&1),
            };
            if keep {
                index[code] = points.len() as u32;
                points.push(v);
            }
        }
        Ok(PointEnumeration {
            n,
            field: field.clone(),
            kind,
            points,
            index,
        })
    }

    /// First coordinate most significant, so codes sort lexicographically.
    fn decode(mut code: usize, n: usize, q: usize) -> Vec<u32> {
        let mut v = vec![0u32; n];
        for k in (0..n).rev() {
            v[k] = (code % q) as u32;
            code /= q;
        }
        v
    }

    fn encode(&self, v: &[u32]) -> usize {
        let q = self.field.order() as usize;
        v.iter().fold(0, |acc, &x| acc * q + x as usize)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[u32] {
        &self.points[i]
    }

    fn normalize(&self, v: Vec<u32>) -> Vec<u32> {
        match self.kind {
            PointSet::NonzeroVectors => v,
            PointSet::Projective => {
                let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
                let s = self.field.inv(lead).unwrap();
                v.into_iter().map(|x| self.field.mul(x, s)).collect()
            }
        }
    }

    pub fn index_of(&self, v: &[u32]) -> Option<usize> {
        if v.iter().all(|&x| x == 0) {
            return None;
        }
        let v = self.normalize(v.to_vec());
        match self.index[self.encode(&v)] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// Permutation induced by an invertible matrix.
    pub fn permutation(&self, m: &Matrix) -> Result<Permutation> {
        if m.dim() != self.n {
            return Err(GroupError::DimensionMismatch {
                expected: self.n,
                found: m.dim(),
            });
        }
        if m.det() == 0 {
            return Err(GroupError::SingularMatrix);
        }
        let images = self
            .points
            .iter()
            .map(|v| {
                self.index_of(&m.apply_row(v))
                    .expect("invertible maps points to points") as u32
            })
            .collect();
        Ok(Permutation::from_images_unchecked(images))
    }

    pub fn group(&self, gens: &[Matrix]) -> Result<PermGroup> {
        let perms = gens
            .iter()
            .map(|m| self.permutation(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(PermGroup::from_checked(self.len(), perms))
    }
}

/// Permutation group induced on projective points.
pub fn projective_perm_group(
    n: usize,
    field: &Arc<FieldTable>,
    gens: &[Matrix],
) -> Result<PermGroup> {
    PointEnumeration::new(n, field, PointSet::Projective)?.group(gens)
}

/// Elementary transvections `E + b E_{ij}` with `b` running over an additive
/// basis of the field; they generate `SL(n, q)`.
pub fn sl_generators(n: usize, field: &Arc<FieldTable>) -> Result<Vec<Matrix>> {
    if n < 2 {
        return Err(GroupError::Unsupported("SL(n, q) needs n >= 2".into()));
    }
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for b in field.additive_basis() {
                gens.push(Matrix::transvection(field, n, i, j, b));
            }
        }
    }
    Ok(gens)
}

/// `SL(n, q)` generators plus `diag(w, 1, .., 1)` for a primitive `w`.
pub fn gl_generators(n: usize, field: &Arc<FieldTable>) -> Result<Vec<Matrix>> {
    let mut gens = sl_generators(n, field)?;
    if field.order() > 2 {
        let mut d = vec![1; n];
        d[0] = field.primitive();
        gens.push(Matrix::diagonal(field, &d));
    }
    Ok(gens)
}

fn field_of_order(q: u64) -> Result<Arc<FieldTable>> {
    let (p, f) = crate::matrix::field::prime_power(q)
        .ok_or_else(|| GroupError::Unsupported(format!("{q} is not a prime power")))?;
    Ok(Arc::new(FieldTable::new(p, f)?))
}

/// `PSL(2, q)` on the `q + 1` points of the projective line.
pub fn psl2(q: u64) -> Result<PermGroup> {
    let k = field_of_order(q)?;
    projective_perm_group(2, &k, &sl_generators(2, &k)?)
}

/// `PGL(2, q)` on the projective line.
pub fn pgl2(q: u64) -> Result<PermGroup> {
    let k = field_of_order(q)?;
    projective_perm_group(2, &k, &gl_generators(2, &k)?)
}

/// `PSL(n, q)` on projective points.
pub fn psl(n: usize, q: u64) -> Result<PermGroup> {
    let k = field_of_order(q)?;
    projective_perm_group(n, &k, &sl_generators(n, &k)?)
}

/// `SL(n, q)` acting faithfully on nonzero vectors.
pub fn sl(n: usize, q: u64) -> Result<PermGroup> {
    let k = field_of_order(q)?;
    PointEnumeration::new(n, &k, PointSet::NonzeroVectors)?.group(&sl_generators(n, &k)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn sl_order(n: u32, q: u64) -> u64 {
        let mut o = q.pow(n * (n - 1) / 2);
        for i in 2..=n {
            o *= q.pow(i) - 1;
        }
        o
    }

    #[test]
    fn projective_line_point_count() {
        let k = Arc::new(FieldTable::new(7, 1).unwrap());
        let pts = PointEnumeration::new(2, &k, PointSet::Projective).unwrap();
        assert_eq!(pts.len(), 8);
        let k4 = Arc::new(FieldTable::new(2, 2).unwrap());
        assert_eq!(
            PointEnumeration::new(3, &k4, PointSet::Projective)
                .unwrap()
                .len(),
            21
        );
    }

    #[test]
    fn pgl2_and_psl2_of_seven() {
        assert_eq!(pgl2(7).unwrap().order_u64(), Some(336));
        assert_eq!(psl2(7).unwrap().order_u64(), Some(168));
        assert_eq!(psl2(5).unwrap().order_u64(), Some(60));
        assert_eq!(psl2(5).unwrap().degree(), 6);
    }

    #[test]
    fn psl2_orders_match_closed_form() {
        for q in [3u64, 4, 5, 7, 8, 9, 11] {
            let expected = q * (q * q - 1) / gcd(2, q - 1);
            assert_eq!(psl2(q).unwrap().order_u64(), Some(expected), "q = {q}");
        }
    }

    #[test]
    fn sl_projective_images() {
        // |SL(2,4)| = |PSL(2,4)| = 60, |PSL(2,9)| = 360, SL(2,2) = S3
        assert_eq!(psl2(4).unwrap().order_u64(), Some(60));
        assert_eq!(psl2(9).unwrap().order_u64(), Some(360));
        assert_eq!(psl2(2).unwrap().order_u64(), Some(6));
    }

    #[test]
    fn sl_on_vectors_is_faithful() {
        for (n, q) in [(2u32, 3u64), (2, 5), (2, 9), (3, 2)] {
            assert_eq!(sl(n as usize, q).unwrap().order_u64(), Some(sl_order(n, q)));
        }
        assert_eq!(psl(3, 4).unwrap().order_u64(), Some(sl_order(3, 4) / 3));
    }

    #[test]
    fn singular_generator_is_rejected() {
        let k = Arc::new(FieldTable::new(3, 1).unwrap());
        let m = Matrix::from_rows(&k, vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            projective_perm_group(2, &k, &[m]).unwrap_err(),
            GroupError::SingularMatrix
        );
    }
}
