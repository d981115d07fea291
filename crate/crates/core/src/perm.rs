//! Permutations of `{1..d}`, the carrier for faithful representations.
//!
//! Points are 0-based internally; all parsing and printing is 1-based cycle
//! notation, with `(1..7)` as range sugar for the full cycle `(1,2,...,7)`.

use std::fmt;

use crate::{Error, Result};

/// A bijection of `{0..degree-1}`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its image vector, rejecting non-bijections.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            if x >= d || seen[x] {
                return Err(Error::InvalidPermutation(images.clone(), d));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Function composition: `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// Builds a permutation of the given degree from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::PointOutOfRange {
                        point: p + 1,
                        degree,
                    });
                }
                if touched[p] {
                    return Err(Error::BadCycleNotation(
                        format!("{cycles:?}"),
                        format!("point {} repeats", p + 1),
                    ));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::new(images)
    }

    /// Parses 1-based cycle notation like `(1,2,4)(3,6,5)` or `(1..7)`.
    /// Whitespace is ignored; `()` denotes the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let bad = |why: &str| Error::BadCycleNotation(text.to_string(), why.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| bad("unbalanced '('"))?;
            let body = &rest[1..close];
            rest = &rest[close + 1..];
            if body.is_empty() {
                continue;
            }
            let mut cycle = Vec::new();
            if let Some((lo, hi)) = body.split_once("..") {
                let lo: usize = lo.parse().map_err(|_| bad("bad range start"))?;
                let hi: usize = hi.parse().map_err(|_| bad("bad range end"))?;
                if lo == 0 || hi < lo {
                    return Err(bad("empty or zero-based range"));
                }
                cycle.extend((lo..=hi).map(|p| p - 1));
            } else {
                for part in body.split(',') {
                    let p: usize = part.parse().map_err(|_| bad("bad point"))?;
                    if p == 0 {
                        return Err(bad("points are 1-based"));
                    }
                    cycle.push(p - 1);
                }
            }
            cycles.push(cycle);
        }
        Self::from_cycles(degree, &cycles)
    }

    /// Disjoint-cycle decomposition, 0-based, fixed points omitted,
    /// each cycle led by its smallest point, cycles sorted by leader.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
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
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
