//! Constructors for the transitive groups used as Galois-group models of
//! étale covers: cyclic, symmetric and alternating groups, and the
//! projective and affine groups of small finite fields.

mod field;

pub use field::{prime_power, FiniteField, DEFAULT_FIELD_CAP};

use crate::error::{Error, Result};
use crate::permcore::{PermGroup, Permutation};

fn check_degree(r: u64, min: u64) -> Result<usize> {
    if r < min {
        return Err(Error::InvalidDegree { degree: r, min });
    }
    Ok(r as usize)
}

fn cycle_on(points: impl IntoIterator<Item = u32>, degree: usize) -> Permutation {
    let points: Vec<u32> = points.into_iter().collect();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &x) in points.iter().enumerate() {
        images[x as usize] = points[(i + 1) % points.len()];
    }
    Permutation::from_images(images).expect("a cycle is a bijection")
}

/// `F_q` with the lexicographically smallest monic irreducible modulus.
pub fn finite_field(q: u64) -> Result<FiniteField> {
    FiniteField::new(q)
}

/// `⟨(1 2 … r)⟩`.
pub fn cyclic_group(r: u64) -> Result<PermGroup> {
    let n = check_degree(r, 2)?;
    PermGroup::new(vec![cycle_on(0..n as u32, n)])
}

/// `⟨(1 2), (1 2 … r)⟩`.
pub fn symmetric_group(r: u64) -> Result<PermGroup> {
    let n = check_degree(r, 2)?;
    PermGroup::new(vec![cycle_on([0, 1], n), cycle_on(0..n as u32, n)])
}

/// `⟨(1 2 3), (1 2 … r)⟩` for odd `r`, `⟨(1 2 3), (2 3 … r)⟩` for even `r`.
pub fn alternating_group(r: u64) -> Result<PermGroup> {
    let n = check_degree(r, 3)?;
    let long = if n % 2 == 1 {
        cycle_on(0..n as u32, n)
    } else {
        cycle_on(1..n as u32, n)
    };
    PermGroup::new(vec![cycle_on([0, 1, 2], n), long])
}

/// A 2×2 matrix `[[a, b], [c, d]]` over a finite field.
type Matrix = [[u32; 2]; 2];

/// Points of `P¹(F_q)`: index 0 is `[0:1]`, index `1 + a` is `[1:a]`.
fn projective_action(field: &FiniteField, m: Matrix) -> Permutation {
    let q = field.size();
    let point = |idx: u32| -> (u32, u32) {
        if idx == 0 {
            (0, 1)
        } else {
            (1, idx - 1)
        }
    };
    let index = |(x, y): (u32, u32)| -> u32 {
        if x == 0 {
            0
        } else {
            1 + field.mul(y, field.inv(x).unwrap())
        }
    };
    let images = (0..=q)
        .map(|idx| {
            let (x, y) = point(idx);
            let nx = field.add(field.mul(m[0][0], x), field.mul(m[0][1], y));
            let ny = field.add(field.mul(m[1][0], x), field.mul(m[1][1], y));
            index((nx, ny))
        })
        .collect();
    Permutation::from_images(images).expect("an invertible matrix permutes P¹")
}

/// `PGL₂(F_q)` acting on the `q + 1` points of the projective line.
pub fn pgl2(q: u64) -> Result<PermGroup> {
    let f = FiniteField::new(q)?;
    let g = f.generator();
    let gens = [[[1, 1], [0, 1]], [[g, 0], [0, 1]], [[0, 1], [1, 0]]];
    PermGroup::new(gens.iter().map(|&m| projective_action(&f, m)).collect())
}

/// `PSL₂(F_q)` acting on the projective line: the unipotent, square-diagonal
/// and determinant-one Weyl generators.
pub fn psl2(q: u64) -> Result<PermGroup> {
    let f = FiniteField::new(q)?;
    let g2 = f.mul(f.generator(), f.generator());
    let minus_one = f.neg(1);
    let gens = [[[1, 1], [0, 1]], [[g2, 0], [0, 1]], [[0, 1], [minus_one, 0]]];
    PermGroup::new(gens.iter().map(|&m| projective_action(&f, m)).collect())
}

/// `AGL₁(F_q)`: the maps `x ↦ ax + b`, `a ≠ 0`, on the `q` field elements.
pub fn agl1(q: u64) -> Result<PermGroup> {
    let f = FiniteField::new(q)?;
    let translate = f.elements().map(|x| f.add(x, 1)).collect();
    let scale = f.elements().map(|x| f.mul(f.generator(), x)).collect();
    PermGroup::new(vec![
        Permutation::from_images(translate)?,
        Permutation::from_images(scale)?,
    ])
}
