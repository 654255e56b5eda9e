use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, …, n−1}`, displayed 1-based.
///
/// Composition follows functions: `a.compose(&b)` is `a ∘ b`, i.e. `b` acts
/// first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (0..n).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(format!("{:?}", images)));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a == 0 || a > n || touched[a - 1] {
                    return Err(Error::NotAPermutation(format!("bad cycle {:?}", cyc)));
                }
                touched[a - 1] = true;
                images[a - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        Permutation::from_images(images)
    }

    /// Parses cycle notation such as `(1 2)(3 4)` (commas also accepted) or
    /// `()` for the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Permutation> {
        let bad = || Error::NotAPermutation(text.to_string());
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_start = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body_start.find(')').ok_or_else(bad)?;
            let body = &body_start[..close];
            let cyc: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            cycles.push(cyc);
            rest = body_start[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(n, &refs)
    }

    /// Parses one-line image form `[2 1 4 3]` (1-based).
    pub fn parse_one_line(text: &str) -> Result<Permutation> {
        let bad = || Error::NotAPermutation(text.to_string());
        let inner = text.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        let images: Vec<usize> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().ok().and_then(|v| v.checked_sub(1)).ok_or_else(bad))
            .collect::<Result<_>>()?;
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        other.compose(self)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    /// `c ∘ self ∘ c⁻¹`.
    pub fn conjugate_by(&self, c: &Permutation) -> Permutation {
        c.compose(self).compose(&c.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Disjoint cycles (0-based), each starting at its smallest point,
    /// fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.images[j];
            }
            out.push(cyc);
        }
        out
    }

    /// Sorted cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat(1).take(self.degree() - moved));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(|c| c.len()).fold(1, num_integer::lcm)
    }

    /// `+1` for even, `−1` for odd permutations.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")))
            .collect()
    }

    pub fn to_one_line(&self) -> String {
        format!("[{}]", self.images.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" "))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

/// Serialized in one-line image form, which carries the degree.
impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_one_line())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Permutation::parse_one_line(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_right_to_left() {
        // (1 2 3)∘(2 3) = (1 2) on three points
        let s1 = Permutation::parse_cycles(3, "(1 2 3)").unwrap();
        let s2 = Permutation::parse_cycles(3, "(2 3)").unwrap();
        assert_eq!(s1.compose(&s2).to_cycle_string(), "(1 2)");
        assert_eq!(s2.then(&s1), s1.compose(&s2));
    }

    #[test]
    fn parse_print_round_trip() {
        let p = Permutation::parse_cycles(5, "(1, 3)(2 5 4)").unwrap();
        assert_eq!(p.to_cycle_string(), "(1 3)(2 5 4)");
        assert_eq!(p.to_one_line(), "[3 5 1 2 4]");
        assert_eq!(Permutation::parse_one_line(&p.to_one_line()).unwrap(), p);
        assert_eq!(Permutation::identity(3).to_cycle_string(), "()");
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn order_sign_inverse() {
        let p = Permutation::parse_cycles(5, "(1 2)(3 4 5)").unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.sign(), -1);
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.cycle_type(), vec![3, 2]);
    }
}
