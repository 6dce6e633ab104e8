use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..n`, stored by its image list.
///
/// Points are 0-based internally. The textual forms (cycle notation and
/// image lists) use 1-based labels.
///
/// The derived ordering compares image sequences lexicographically, which is
/// the canonical element order used by group enumeration.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::NotABijection(format!(
                    "image {} out of range for degree {n}",
                    x + 1
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotABijection(format!("image {} repeated", x + 1)));
            }
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle notation such as `(1 2 3)(4 5)` with 1-based
    /// labels. Unlisted labels are fixed; the empty string is the identity.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in &cycles {
            for &label in cycle {
                if label == 0 || label > degree as u64 {
                    return Err(Error::LabelOutOfRange { label, degree });
                }
                let idx = (label - 1) as usize;
                if std::mem::replace(&mut used[idx], true) {
                    return Err(Error::DuplicateLabel(label));
                }
            }
            for (i, &from) in cycle.iter().enumerate() {
                let to = cycle[(i + 1) % cycle.len()];
                images[(from - 1) as usize] = (to - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses a comma-separated list of 1-based images, e.g. `2,3,1`.
    pub fn from_image_list(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::NotABijection("empty image list".into()));
        }
        let mut images = Vec::new();
        for (i, part) in trimmed.split(',').enumerate() {
            let label: u64 = part
                .trim()
                .parse()
                .map_err(|_| Error::NotABijection(format!("entry {} is not an integer: {part:?}", i + 1)))?;
            if label == 0 {
                return Err(Error::NotABijection("labels are 1-based".into()));
            }
            let image = u32::try_from(label - 1)
                .map_err(|_| Error::NotABijection(format!("label {label} too large")))?;
            images.push(image);
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    /// `self` followed by `other`: the point `x` goes to `other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .count()
    }

    /// First point moved by the permutation, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

// cycles := cycle* ; cycle := '(' int (' ' int)+ ')'
fn parse_cycles(text: &str) -> Result<Vec<Vec<u64>>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut cycles = Vec::new();
    let malformed = |position: usize, message: &str| Error::MalformedCycle {
        position,
        message: message.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'(' {
            return Err(malformed(pos, "expected '('"));
        }
        let open = pos;
        pos += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut pos);
            match bytes.get(pos) {
                None => return Err(malformed(pos, "unterminated cycle")),
                Some(b')') => {
                    pos += 1;
                    break;
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let label = text[start..pos]
                        .parse::<u64>()
                        .map_err(|_| malformed(start, "label too large"))?;
                    if let Some(&next) = bytes.get(pos) {
                        if next != b')' && !next.is_ascii_whitespace() {
                            return Err(malformed(pos, "labels must be separated by spaces"));
                        }
                    }
                    cycle.push(label);
                }
                Some(_) => return Err(malformed(pos, "unexpected character")),
            }
        }
        if cycle.len() < 2 {
            return Err(malformed(open, "a cycle needs at least two labels"));
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation() {
        assert_eq!(
            Permutation::from_cycles("(1 2 3)", 3).unwrap().images(),
            &[1, 2, 0]
        );
        assert_eq!(Permutation::from_cycles("", 4).unwrap(), Permutation::identity(4));
        assert_eq!(
            Permutation::from_cycles("(1 2)(3 4)", 4).unwrap().images(),
            &[1, 0, 3, 2]
        );
        assert_eq!(
            Permutation::from_cycles("  (1 2)   ( 3  4 ) ", 4)
                .unwrap()
                .images(),
            &[1, 0, 3, 2]
        );
    }

    #[test]
    fn cycle_errors() {
        assert!(matches!(
            Permutation::from_cycles("(1 2", 3),
            Err(Error::MalformedCycle { .. })
        ));
        assert!(matches!(
            Permutation::from_cycles("1 2", 3),
            Err(Error::MalformedCycle { .. })
        ));
        assert!(matches!(
            Permutation::from_cycles("(1)", 3),
            Err(Error::MalformedCycle { .. })
        ));
        assert!(matches!(
            Permutation::from_cycles("(1,2)", 3),
            Err(Error::MalformedCycle { .. })
        ));
        assert!(matches!(
            Permutation::from_cycles("(1 5)", 4),
            Err(Error::LabelOutOfRange { label: 5, degree: 4 })
        ));
        assert!(matches!(
            Permutation::from_cycles("(0 1)", 4),
            Err(Error::LabelOutOfRange { .. })
        ));
        assert_eq!(
            Permutation::from_cycles("(1 2)(2 3)", 3),
            Err(Error::DuplicateLabel(2))
        );
        assert_eq!(
            Permutation::from_cycles("(1 2 1)", 3),
            Err(Error::DuplicateLabel(1))
        );
    }

    #[test]
    fn image_list() {
        let p = Permutation::from_image_list("2,3,1").unwrap();
        assert_eq!(p, Permutation::from_cycles("(1 2 3)", 3).unwrap());
        assert!(Permutation::from_image_list("2,2,1").is_err());
        assert!(Permutation::from_image_list("0,1").is_err());
        assert!(Permutation::from_image_list("").is_err());
    }

    #[test]
    fn fixed_points() {
        assert_eq!(Permutation::identity(5).fixed_point_count(), 5);
        assert_eq!(
            Permutation::from_cycles("(1 2 3)", 4)
                .unwrap()
                .fixed_point_count(),
            1
        );
        assert_eq!(
            Permutation::from_cycles("(1 2 3 4)", 4)
                .unwrap()
                .fixed_point_count(),
            0
        );
    }

    #[test]
    fn display_round_trips() {
        let p = Permutation::from_cycles("(2 5)(1 3 4)", 6).unwrap();
        assert_eq!(p.to_string(), "(1 3 4)(2 5)");
        assert_eq!(Permutation::from_cycles(&p.to_string(), 6).unwrap(), p);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn composition_order() {
        let a = Permutation::from_cycles("(1 2)", 3).unwrap();
        let b = Permutation::from_cycles("(2 3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
    }
}
