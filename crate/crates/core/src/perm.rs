//! Permutations on 0-based points with cycle-notation I/O (1-based in files).

use crate::error::GroupError;
use std::fmt;

/// A permutation of {0, .., n-1} stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds from an image array, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(GroupError::InvalidPermutation(format!(
                    "image array {:?} is not a bijection on 0..{}",
                    images, n
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// (self o other): apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// Conjugate of `self` by `g`, i.e. g self g^{-1}.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // (g s g^-1)(x) = g(s(g^-1(x))); build directly without allocating g^-1.
        let mut images = vec![0u32; self.images.len()];
        for (i, &gi) in g.images.iter().enumerate() {
            images[gi as usize] = g.images[self.images[i] as usize];
        }
        Permutation { images }
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut ord: u64 = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// Cycle type as a descending partition of the degree (fixed points included).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut lens = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn pad(&self, degree: usize) -> Permutation {
        debug_assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Parses one line of cycle notation with 1-based points, e.g. "(1 2)(3 4 5)".
    /// "()" or an empty line denotes the identity.
    pub fn parse_cycles(line: &str, degree: usize) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let s = line.trim();
        if s.is_empty() || s == "()" {
            return Ok(Permutation { images });
        }
        let bad = |msg: &str| GroupError::InvalidPermutation(format!("`{}`: {}", line.trim(), msg));
        let mut moved = vec![false; degree];
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| bad("expected `(`"))?;
            if !rest[..open].trim().is_empty() {
                return Err(bad("unexpected text between cycles"));
            }
            let close = rest.find(')').ok_or_else(|| bad("unbalanced parentheses"))?;
            let body = &rest[open + 1..close];
            rest = &rest[close + 1..];
            let pts: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| bad(&format!("bad point `{}`", t)))
                })
                .collect::<Result<_, _>>()?;
            if pts.is_empty() {
                continue;
            }
            for &p in &pts {
                if p == 0 || p > degree {
                    return Err(bad(&format!("point {} out of range 1..{}", p, degree)));
                }
                if moved[p - 1] {
                    return Err(bad(&format!("point {} repeated", p)));
                }
                moved[p - 1] = true;
            }
            for w in 0..pts.len() {
                let from = pts[w] - 1;
                let to = pts[(w + 1) % pts.len()] - 1;
                images[from] = to as u32;
            }
        }
        Permutation::from_images(images)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points; fixed points suppressed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        for start in 0..self.images.len() {
            if seen[start] || self.image(start) == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.image(p);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2 3)", 3).unwrap();
        // (a o b)(2) = a(b(2)) = a(3) = 3  (1-based reasoning, 0-based storage)
        let ab = a.compose(&b);
        assert_eq!(ab.image(1), 2);
        assert_eq!(ab.to_string(), "(1 2 3)");
    }

    #[test]
    fn inverse_and_order() {
        let c = Permutation::parse_cycles("(1 2 3 4 5)", 5).unwrap();
        assert_eq!(c.order(), 5);
        assert!(c.compose(&c.inverse()).is_identity());
        let mixed = Permutation::parse_cycles("(1 2)(3 4 5)", 5).unwrap();
        assert_eq!(mixed.order(), 6);
        assert_eq!(mixed.cycle_type(), vec![3, 2]);
    }

    #[test]
    fn parse_rejects_junk() {
        assert!(Permutation::parse_cycles("(1 2", 3).is_err());
        assert!(Permutation::parse_cycles("(0 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["()", "(1 3)(2 4)", "(1 2 3 4 5 6 7)", "(2 5)(3 6 4)"] {
            let p = Permutation::parse_cycles(s, 7).unwrap();
            let q = Permutation::parse_cycles(&p.to_string(), 7).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn conjugate_matches_definition() {
        let s = Permutation::parse_cycles("(1 2 3)", 4).unwrap();
        let g = Permutation::parse_cycles("(3 4)", 4).unwrap();
        let direct = g.compose(&s).compose(&g.inverse());
        assert_eq!(s.conjugate_by(&g), direct);
    }
}
