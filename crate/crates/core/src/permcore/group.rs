use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::perm::Permutation;
use crate::error::{Error, Result};

/// Size limits applied to group computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupLimits {
    pub max_degree: usize,
    pub enumeration_cap: u64,
}

impl Default for GroupLimits {
    fn default() -> Self {
        GroupLimits {
            max_degree: 10_000,
            enumeration_cap: 1_000_000,
        }
    }
}

/// A finitely generated permutation group.
///
/// The stabilizer chain is built lazily on the first order query and shared
/// between threads; concurrent callers all observe the same chain.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    limits: GroupLimits,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            limits: self.limits,
            chain,
        }
    }
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if degree == 0 {
            return Err(Error::InvalidDegree { degree: 0, min: 1 });
        }
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: bad.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            limits: GroupLimits::default(),
            chain: OnceLock::new(),
        })
    }

    /// Parses generators given in cycle notation.
    pub fn from_cycle_strings<S: AsRef<str>>(gens: &[S], degree: usize) -> Result<Self> {
        let perms = gens
            .iter()
            .map(|s| Permutation::from_cycles(s.as_ref(), degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(perms)
    }

    pub fn with_limits(mut self, limits: GroupLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn limits(&self) -> GroupLimits {
        self.limits
    }

    fn chain(&self) -> Result<&StabChain> {
        if self.degree > self.limits.max_degree {
            return Err(Error::DegreeTooLarge {
                degree: self.degree,
                cap: self.limits.max_degree,
            });
        }
        Ok(self
            .chain
            .get_or_init(|| StabChain::schreier_sims(self.degree, &self.generators)))
    }

    /// Exact group order from the base and strong generating set.
    pub fn order(&self) -> Result<BigUint> {
        Ok(self.chain()?.order())
    }

    /// Base points of the stabilizer chain.
    pub fn base(&self) -> Result<Vec<u32>> {
        Ok(self.chain()?.levels.iter().map(|l| l.base_point).collect())
    }

    /// Membership test by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Ok(false);
        }
        let chain = self.chain()?;
        let (residue, _) = chain.strip(0, p.clone());
        Ok(residue.is_identity())
    }

    /// Order as a `u64`, or `OrderExceedsCap` when it is larger than `cap`.
    pub fn order_within(&self, cap: u64) -> Result<u64> {
        let order = self.order()?;
        match order.to_u64() {
            Some(o) if o <= cap => Ok(o),
            _ => Err(Error::OrderExceedsCap { order, cap }),
        }
    }

    /// Calls `f` once for every group element, in no particular order.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, cap: u64, mut f: F) -> Result<()> {
        self.order_within(cap)?;
        let chain = self.chain()?;
        let id = Permutation::identity(self.degree);
        chain.visit(0, &id, &mut f);
        Ok(())
    }

    /// Every element exactly once, sorted lexicographically by image sequence.
    pub fn enumerate_elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        let mut out = Vec::with_capacity(self.order_within(cap)? as usize);
        self.for_each_element(cap, |g| out.push(g.clone()))?;
        out.sort_unstable();
        Ok(out)
    }

    /// Number of orbits on `{0, …, n−1}`.
    pub fn orbit_count_points(&self) -> usize {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for x in 0..self.degree as u32 {
                uf.union(x as usize, g.apply(x) as usize);
            }
        }
        uf.components()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit_count_points() == 1
    }

    /// Number of orbits of the diagonal action on all `n²` ordered pairs,
    /// found by union-find over the generators' induced action.
    pub fn orbit_count_ordered_pairs(&self) -> usize {
        let n = self.degree;
        let mut uf = UnionFind::new(n * n);
        for g in &self.generators {
            let img = g.images();
            for (i, &gi) in img.iter().enumerate() {
                for (j, &gj) in img.iter().enumerate() {
                    uf.union(i * n + j, gi as usize * n + gj as usize);
                }
            }
        }
        uf.components()
    }
}

/// One level of a stabilizer chain: the orbit of `base_point` under the
/// level's strong generators with a transversal `u_β` mapping the base point
/// to each orbit point `β`.
#[derive(Clone, Debug)]
struct Level {
    base_point: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Self {
        let mut level = Level {
            base_point,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base_point as usize] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base_point];
        let mut head = 0;
        while head < self.orbit.len() {
            let gamma = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let delta = s.apply(gamma);
                if self.transversal[delta as usize].is_none() {
                    let u = self.transversal[gamma as usize].as_ref().unwrap().then(s);
                    self.transversal[delta as usize] = Some(u);
                    self.orbit.push(delta);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct StabChain {
    levels: Vec<Level>,
}

impl StabChain {
    /// Deterministic Schreier–Sims: every Schreier generator of every level is
    /// sifted through the levels below it until all of them strip to the
    /// identity.
    fn schreier_sims(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabChain { levels: Vec::new() };
        let gens: Vec<Permutation> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            return chain;
        }
        // Initial base: extend until no generator fixes every base point.
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.base_point) == l.base_point) {
                let b = g.first_moved().unwrap();
                chain.levels.push(Level::new(b, degree));
            }
        }
        for g in &gens {
            for level in chain.levels.iter_mut() {
                level.gens.push(g.clone());
                if g.apply(level.base_point) != level.base_point {
                    break;
                }
            }
        }
        for level in chain.levels.iter_mut() {
            level.rebuild_orbit(degree);
        }

        let mut i = chain.levels.len();
        while i > 0 {
            let level_idx = i - 1;
            match chain.find_unsifted(level_idx) {
                None => i -= 1,
                Some((residue, j)) => {
                    if j == chain.levels.len() {
                        let b = residue.first_moved().unwrap();
                        chain.levels.push(Level::new(b, degree));
                    }
                    for l in level_idx + 1..=j {
                        chain.levels[l].gens.push(residue.clone());
                        chain.levels[l].rebuild_orbit(degree);
                    }
                    i = j + 1;
                }
            }
        }
        chain
    }

    /// Returns the first Schreier generator of `level_idx` that does not sift
    /// through the deeper levels, with the level where sifting stopped.
    fn find_unsifted(&self, level_idx: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[level_idx];
        for &beta in &level.orbit {
            let u_beta = level.transversal[beta as usize].as_ref().unwrap();
            for s in &level.gens {
                let image = s.apply(beta);
                let u_image = level.transversal[image as usize].as_ref().unwrap();
                let h = u_beta.then(s).then(&u_image.inverse());
                if h.is_identity() {
                    continue;
                }
                let (residue, j) = self.strip(level_idx + 1, h);
                if !residue.is_identity() {
                    return Some((residue, j));
                }
            }
        }
        None
    }

    /// Sifts `g` from level `start` downwards. Returns the residue and the
    /// index of the level where it left the chain (`levels.len()` if it
    /// passed every level).
    fn strip(&self, start: usize, mut g: Permutation) -> (Permutation, usize) {
        for (idx, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.apply(level.base_point);
            match &level.transversal[beta as usize] {
                None => return (g, idx),
                Some(u) => g = g.then(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    // Every element factors uniquely as x · u_β with x in the next stabilizer,
    // so elements are built as u_k · … · u_1 · u_0 from the deepest level up.
    fn visit<F: FnMut(&Permutation)>(&self, idx: usize, suffix: &Permutation, f: &mut F) {
        if idx == self.levels.len() {
            f(suffix);
            return;
        }
        let level = &self.levels[idx];
        for &beta in &level.orbit {
            let u = level.transversal[beta as usize].as_ref().unwrap();
            self.visit(idx + 1, &u.then(suffix), f);
        }
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u32;
        }
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeSet, HashSet};

    use super::*;

    fn group(gens: &[&str], n: usize) -> PermGroup {
        PermGroup::from_cycle_strings(gens, n).unwrap()
    }

    // Brute-force closure, independent of the stabilizer chain.
    fn closure(g: &PermGroup) -> HashSet<Permutation> {
        let id = Permutation::identity(g.degree());
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for s in g.generators() {
                let y = x.then(s);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn orders_match_closure() {
        let s3 = group(&["(1 2)", "(1 2 3)"], 3);
        assert_eq!(closure(&s3).len(), 6);
        assert_eq!(s3.order().unwrap(), BigUint::from(6u32));
        let c4 = group(&["(1 2 3 4)"], 4);
        assert_eq!(c4.order().unwrap(), BigUint::from(4u32));
        let trivial = group(&[""], 3);
        assert_eq!(trivial.order().unwrap(), BigUint::from(1u32));
        let m = group(&["(1 2 3 4 5 6 7 8)", "(1 3)(2 6)"], 8);
        assert_eq!(m.order().unwrap(), BigUint::from(closure(&m).len()));
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let s3 = group(&["(1 2)", "(1 2 3)"], 3);
        let elems = s3.enumerate_elements(10).unwrap();
        assert_eq!(elems.len(), 6);
        assert!(elems[0].is_identity());
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
        let brute: BTreeSet<_> = closure(&s3).into_iter().collect();
        assert_eq!(elems, brute.into_iter().collect::<Vec<_>>());

        let c3 = group(&["(1 2 3)"], 3);
        assert_eq!(c3.enumerate_elements(10).unwrap().len(), 3);

        let s5 = group(&["(1 2)", "(1 2 3 4 5)"], 5);
        match s5.enumerate_elements(100) {
            Err(Error::OrderExceedsCap { order, cap }) => {
                assert_eq!(order, BigUint::from(120u32));
                assert_eq!(cap, 100);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn point_orbits() {
        assert_eq!(group(&["(1 2 3 4)"], 4).orbit_count_points(), 1);
        assert_eq!(group(&[""], 3).orbit_count_points(), 3);
        assert_eq!(group(&["(1 2)"], 4).orbit_count_points(), 3);
    }

    #[test]
    fn pair_orbits() {
        assert_eq!(group(&["(1 2)", "(1 2 3)"], 3).orbit_count_ordered_pairs(), 2);
        assert_eq!(group(&["(1 2 3 4)"], 4).orbit_count_ordered_pairs(), 4);
        assert_eq!(group(&[""], 2).orbit_count_ordered_pairs(), 4);
    }

    #[test]
    fn membership() {
        let a4 = group(&["(1 2 3)", "(2 3 4)"], 4);
        assert!(a4
            .contains(&Permutation::from_cycles("(1 2)(3 4)", 4).unwrap())
            .unwrap());
        assert!(!a4
            .contains(&Permutation::from_cycles("(1 2)", 4).unwrap())
            .unwrap());
    }

    #[test]
    fn degree_cap() {
        let g = group(&["(1 2)"], 5).with_limits(GroupLimits {
            max_degree: 4,
            enumeration_cap: 10,
        });
        assert_eq!(g.order(), Err(Error::DegreeTooLarge { degree: 5, cap: 4 }));
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(PermGroup::new(vec![]).unwrap_err(), Error::NoGenerators);
        let err = PermGroup::new(vec![Permutation::identity(3), Permutation::identity(4)]).unwrap_err();
        assert_eq!(
            err,
            Error::DegreeMismatch {
                expected: 3,
                found: 4
            }
        );
    }

    #[test]
    fn order_is_cached_across_threads() {
        let g = group(&["(1 2)", "(1 2 3 4 5 6 7)"], 7);
        let orders: Vec<BigUint> = std::thread::scope(|s| {
            let hs: Vec<_> = (0..4).map(|_| s.spawn(|| g.order().unwrap())).collect();
            hs.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(orders.iter().all(|o| *o == BigUint::from(5040u32)));
    }
}
