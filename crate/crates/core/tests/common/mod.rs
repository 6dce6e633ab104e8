#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use tsch_core::{PermGroup, Permutation};

/// A random permutation of `0..n` preserving the partition into consecutive
/// blocks of size `block`.
fn block_preserving<R: Rng>(rng: &mut R, n: usize, block: usize) -> Vec<u32> {
    let m = n / block;
    let mut outer: Vec<usize> = (0..m).collect();
    outer.shuffle(rng);
    let mut images = vec![0u32; n];
    for (i, &target) in outer.iter().enumerate() {
        let mut inner: Vec<usize> = (0..block).collect();
        inner.shuffle(rng);
        for (j, &t) in inner.iter().enumerate() {
            images[i * block + j] = (target * block + t) as u32;
        }
    }
    images
}

/// A random permutation moving only a random subset of at most `s` points.
fn on_subset<R: Rng>(rng: &mut R, n: usize, s: usize) -> Vec<u32> {
    let mut points: Vec<u32> = (0..n as u32).collect();
    points.shuffle(rng);
    let support = &points[..s.min(n)];
    let mut shuffled = support.to_vec();
    shuffled.shuffle(rng);
    let mut images: Vec<u32> = (0..n as u32).collect();
    for (a, b) in support.iter().zip(&shuffled) {
        images[*a as usize] = *b;
    }
    images
}

/// A group generated by 2–3 random permutations of degree 2–12 whose order
/// does not exceed `max_order`. Several generator shapes are mixed so that
/// small degrees, imprimitive and intransitive groups all show up.
pub fn random_group<R: Rng>(rng: &mut R, max_order: u64) -> PermGroup {
    loop {
        let n = rng.random_range(2..=12usize);
        let k = rng.random_range(2..=3usize);
        let divisors: Vec<usize> = (2..n).filter(|b| n % b == 0).collect();
        let shape = rng.random_range(0..3u8);
        let gens = (0..k)
            .map(|_| {
                let images = match shape {
                    0 => {
                        let mut v: Vec<u32> = (0..n as u32).collect();
                        v.shuffle(rng);
                        v
                    }
                    1 if !divisors.is_empty() => {
                        let b = *divisors.choose(rng).unwrap();
                        block_preserving(rng, n, b)
                    }
                    _ => {
                        let s = rng.random_range(2..=n.min(7));
                        on_subset(rng, n, s)
                    }
                };
                Permutation::from_images(images).unwrap()
            })
            .collect();
        let group = PermGroup::new(gens).unwrap();
        if group.order_within(max_order).is_ok() {
            return group;
        }
    }
}

/// Every element, by naive closure under right multiplication with the
/// generators. Independent of the stabilizer chain.
pub fn closure(group: &PermGroup) -> BTreeSet<Permutation> {
    let id = Permutation::identity(group.degree());
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in group.generators() {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Orbits on ordered pairs by breadth-first search over pair images.
pub fn naive_pair_orbits(group: &PermGroup) -> usize {
    let n = group.degree();
    let mut seen = vec![false; n * n];
    let mut orbits = 0;
    for start in 0..n * n {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(p) = stack.pop() {
            let (a, b) = ((p / n) as u32, (p % n) as u32);
            for s in group.generators() {
                let q = s.apply(a) as usize * n + s.apply(b) as usize;
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    orbits
}
