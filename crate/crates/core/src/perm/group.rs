use std::collections::{BTreeMap, HashMap, VecDeque};

use super::Permutation;
use crate::error::{Error, Result};

pub const DEFAULT_GROUP_CAP: usize = 100_000;

/// A permutation group with all elements enumerated.
///
/// Elements are stored sorted by image vector, so the identity is always
/// element 0 and two groups with the same elements compare equal regardless
/// of the generators they were built from.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

/// `generate`: breadth-first closure of `gens` on `degree` points.
pub fn generate(degree: usize, gens: &[Permutation], cap: usize) -> Result<PermGroup> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
    }
    let id = Permutation::identity(degree);
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    seen.insert(id.clone(), ());
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose(&p);
            if !seen.contains_key(&q) {
                if seen.len() >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                seen.insert(q.clone(), ());
                queue.push_back(q);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_keys().collect();
    elements.sort();
    let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    Ok(PermGroup { degree, generators: gens.to_vec(), elements, index })
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        generate(degree, &[], 1).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Orbit partition of `{0..n−1}`, each orbit sorted, orbits ordered by
    /// their smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Number of elements of each order.
    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for e in &self.elements {
            *h.entry(e.order()).or_insert(0) += 1;
        }
        h
    }

    pub fn exponent(&self) -> usize {
        self.elements.iter().map(|e| e.order()).fold(1, num_integer::lcm)
    }

    /// `table[a][b]` is the index of `elements[a] ∘ elements[b]`.
    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        self.elements
            .iter()
            .map(|a| self.elements.iter().map(|b| self.index[&a.compose(b)]).collect())
            .collect()
    }

    /// Whether `other`'s elements all belong to `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.elements.iter().all(|e| self.contains(e))
    }
}

/// Orbits of the group generated by `gens` on `degree` points.
pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![start];
        label[start] = id;
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            for g in gens {
                let q = g.apply(p);
                if label[q] == usize::MAX {
                    label[q] = id;
                    orbit.push(q);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn generate_examples() {
        assert_eq!(generate(4, &[p(4, "(1 2)(3 4)")], 100).unwrap().order(), 2);
        let cyc = generate(6, &[p(6, "(1 2 3 4 5 6)")], 100).unwrap();
        assert_eq!(cyc.order(), 6);
        assert!(cyc.is_abelian());
        assert_eq!(generate(3, &[p(3, "(1 2)"), p(3, "(2 3)")], 100).unwrap().order(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let err = generate(5, &[p(5, "(1 2)"), p(5, "(1 2 3 4 5)")], 50);
        assert_eq!(err.unwrap_err(), Error::OrderCapExceeded { cap: 50 });
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(PermGroup::trivial(4).orbits(), vec![vec![0], vec![1], vec![2], vec![3]]);
        let g = generate(4, &[p(4, "(1 2)(3 4)")], 10).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2, 3]]);
        let c4 = generate(4, &[p(4, "(1 2 3 4)")], 10).unwrap();
        assert_eq!(c4.orbits(), vec![vec![0, 1, 2, 3]]);
        assert!(c4.is_transitive());
    }

    #[test]
    fn identity_is_first_element() {
        let g = generate(3, &[p(3, "(1 2 3)")], 10).unwrap();
        assert!(g.elements()[0].is_identity());
    }

    #[test]
    fn degree_mismatch() {
        assert_eq!(generate(3, &[p(4, "(1 2)")], 10).unwrap_err(), Error::DegreeMismatch(3, 4));
    }
}
