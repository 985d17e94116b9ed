//! Standard permutation representations of small named groups.

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::matrix::field::is_prime;
use crate::perm::Permutation;

/// Degree cap for the constructors in this module.
pub const MAX_NAMED_DEGREE: usize = 5000;

fn check_degree(d: usize) -> Result<()> {
    if d > MAX_NAMED_DEGREE {
        return Err(GroupError::Unsupported(format!(
            "degree {d} exceeds the cap {MAX_NAMED_DEGREE}"
        )));
    }
    Ok(())
}

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let pts: Vec<usize> = points.into_iter().collect();
    for (i, &a) in pts.iter().enumerate() {
        images[a] = pts[(i + 1) % pts.len()] as u32;
    }
    Permutation::from_images_unchecked(images)
}

/// `S_n` on `n` points.
pub fn symmetric(n: usize) -> Result<PermGroup> {
    check_degree(n)?;
    if n < 2 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    Ok(PermGroup::from_checked(
        n,
        vec![cycle(n, [0, 1]), cycle(n, 0..n)],
    ))
}

/// `A_n` on `n` points.
pub fn alternating(n: usize) -> Result<PermGroup> {
    check_degree(n)?;
    if n < 3 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    let gens = (2..n).map(|k| cycle(n, [0, 1, k])).collect();
    Ok(PermGroup::from_checked(n, gens))
}

/// `Z_n` acting regularly.
pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(GroupError::Unsupported("cyclic group of order 0".into()));
    }
    check_degree(n)?;
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    Ok(PermGroup::from_checked(n, vec![cycle(n, 0..n)]))
}

/// Dihedral group of order `2m` on the vertices of an `m`-gon (`m >= 3`).
pub fn dihedral(m: usize) -> Result<PermGroup> {
    if m < 3 {
        return Err(GroupError::Unsupported(format!(
            "dihedral group needs at least 3 vertices, got {m}"
        )));
    }
    check_degree(m)?;
    let flip: Vec<u32> = (0..m).map(|i| ((m - i) % m) as u32).collect();
    Ok(PermGroup::from_checked(
        m,
        vec![cycle(m, 0..m), Permutation::from_images_unchecked(flip)],
    ))
}

/// Elementary abelian group `(Z_p)^k` as a product of disjoint `p`-cycles.
pub fn elementary_abelian(p: u64, k: usize) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let p = p as usize;
    let degree = p.saturating_mul(k).max(1);
    check_degree(degree)?;
    if k == 0 {
        return Ok(PermGroup::trivial(1));
    }
    let gens = (0..k).map(|i| cycle(degree, i * p..(i + 1) * p)).collect();
    Ok(PermGroup::from_checked(degree, gens))
}

/// Direct product acting on the disjoint union of the factors' points.
pub fn direct_product(factors: &[PermGroup]) -> Result<PermGroup> {
    if factors.is_empty() {
        return Ok(PermGroup::trivial(1));
    }
    let degree: usize = factors.iter().map(|f| f.degree()).sum();
    check_degree(degree)?;
    let mut gens = Vec::new();
    let mut offset = 0;
    for f in factors {
        for g in f.generators() {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for i in 0..f.degree() {
                images[offset + i] = (offset + g.apply(i)) as u32;
            }
            gens.push(Permutation::from_images_unchecked(images));
        }
        offset += f.degree();
    }
    Ok(PermGroup::from_checked(degree, gens))
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion8() -> PermGroup {
    let i = Permutation::from_cycles(8, &[vec![0, 2, 1, 3], vec![4, 7, 5, 6]]).unwrap();
    let j = Permutation::from_cycles(8, &[vec![0, 4, 1, 5], vec![2, 6, 3, 7]]).unwrap();
    PermGroup::from_checked(8, vec![i, j])
}

/// Frobenius group `p:d` of affine maps `x -> ax + b` over `Z_p` with `a`
/// in the subgroup of order `d` of the multiplicative group.
pub fn frobenius(p: u64, d: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if !(p - 1).is_multiple_of(d) {
        return Err(GroupError::Unsupported(format!(
            "{d} does not divide {p} - 1"
        )));
    }
    let n = p as usize;
    check_degree(n)?;
    let order_mod = |a: u64| {
        let mut x = a % p;
        let mut k = 1;
        while x != 1 {
            x = x * a % p;
            k += 1;
        }
        k
    };
    let a = (1..p).find(|&a| order_mod(a) == d).unwrap();
    let mul: Vec<u32> = (0..p).map(|x| (x * a % p) as u32).collect();
    Ok(PermGroup::from_checked(
        n,
        vec![cycle(n, 0..n), Permutation::from_images_unchecked(mul)],
    ))
}
