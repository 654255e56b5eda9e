//! Subgroup lattices and coset actions of small enumerated groups.

use serde::Serialize;
use std::collections::HashSet;

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

pub const DEFAULT_LATTICE_CAP: usize = 120;

/// Membership bitset over the elements of a fixed group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(Vec<u64>);

impl ElementSet {
    fn empty(n: usize) -> Self {
        ElementSet(vec![0; n.div_ceil(64)])
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        self.0[i / 64] |= 1 << (i % 64);
        !had
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len() * 64).filter(|&i| self.contains(i))
    }
}

/// A subgroup of an enumerated group, as a set of element indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Subgroup {
    pub members: ElementSet,
    /// Element indices generating the subgroup.
    pub generators: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// The subgroup generated by `perms`; each must lie in `g`.
    pub fn generated_by(g: &PermGroup, perms: &[Permutation]) -> Result<Subgroup> {
        let table = g.multiplication_table();
        let gens: Vec<usize> = perms.iter().map(|p| g.index_of(p).ok_or(Error::NotASubgroup)).collect::<Result<_>>()?;
        Ok(Subgroup { members: closure(&table, &gens), generators: gens })
    }

    /// Exactly the set `perms`, which must be a subgroup of `g`.
    pub fn from_elements(g: &PermGroup, perms: &[Permutation]) -> Result<Subgroup> {
        let sub = Subgroup::generated_by(g, perms)?;
        let given: HashSet<usize> = perms.iter().filter_map(|p| g.index_of(p)).collect();
        if given.len() != sub.order() || !given.contains(&0) {
            return Err(Error::NotASubgroup);
        }
        Ok(sub)
    }

    pub fn elements<'a>(&'a self, g: &'a PermGroup) -> impl Iterator<Item = &'a Permutation> + 'a {
        self.members.iter().map(move |i| &g.elements()[i])
    }
}

fn closure(table: &[Vec<usize>], gens: &[usize]) -> ElementSet {
    let mut set = ElementSet::empty(table.len());
    set.insert(0);
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        for &g in gens {
            let b = table[a][g];
            if set.insert(b) {
                stack.push(b);
            }
        }
    }
    set
}

/// All subgroups with their inclusion order.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub group_order: usize,
    /// Sorted by order, then membership; index 0 is trivial, the last is the
    /// whole group.
    pub subgroups: Vec<Subgroup>,
    /// `below[i]`: indices of proper subgroups of `subgroups[i]`.
    pub below: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn full(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// `[G : H]` for `H = subgroups[i]`.
    pub fn index_in_group(&self, i: usize) -> usize {
        self.group_order / self.subgroups[i].order()
    }

    /// `[H : K]` for `K ≤ H`.
    pub fn relative_index(&self, h: usize, k: usize) -> Option<usize> {
        let (oh, ok) = (self.subgroups[h].order(), self.subgroups[k].order());
        (self.subgroups[k].members.is_subset(&self.subgroups[h].members) && oh % ok == 0).then_some(oh / ok)
    }

    pub fn is_subgroup_of(&self, k: usize, h: usize) -> bool {
        self.subgroups[k].members.is_subset(&self.subgroups[h].members)
    }

    /// Covering relations of the inclusion order (Hasse diagram edges
    /// `(smaller, larger)`).
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (h, below) in self.below.iter().enumerate() {
            for &k in below {
                let intermediate = below.iter().any(|&m| m != k && self.is_subgroup_of(k, m));
                if !intermediate {
                    edges.push((k, h));
                }
            }
        }
        edges
    }

    /// Checks `[G:K] = [G:H]·[H:K]` for every nested pair; returns the
    /// number of pairs checked.
    pub fn verify_index_chains(&self) -> std::result::Result<usize, (usize, usize)> {
        let mut count = 0;
        for (h, below) in self.below.iter().enumerate() {
            for &k in below {
                let rel = self.relative_index(h, k).ok_or((h, k))?;
                if self.index_in_group(k) != self.index_in_group(h) * rel {
                    return Err((h, k));
                }
                count += 1;
            }
        }
        Ok(count)
    }
}

/// `subgroups`: every subgroup of `g`, grown from cyclic subgroups by joins.
pub fn subgroups(g: &PermGroup, cap: usize) -> Result<SubgroupLattice> {
    if g.order() > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let table = g.multiplication_table();
    let n = g.order();
    let mut cyclic: Vec<(usize, ElementSet)> = Vec::new();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    for e in 0..n {
        let s = closure(&table, &[e]);
        if seen.insert(s.clone()) {
            cyclic.push((e, s));
        }
    }
    let mut all: Vec<Subgroup> = cyclic.iter().map(|(e, s)| Subgroup { members: s.clone(), generators: vec![*e] }).collect();
    let mut frontier: Vec<usize> = (0..all.len()).collect();
    while let Some(i) = frontier.pop() {
        for (c, _) in &cyclic {
            if all[i].members.contains(*c) {
                continue;
            }
            let mut gens = all[i].generators.clone();
            gens.push(*c);
            let s = closure(&table, &gens);
            if seen.insert(s.clone()) {
                all.push(Subgroup { members: s, generators: gens });
                frontier.push(all.len() - 1);
            }
        }
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    let below = (0..all.len())
        .map(|h| (0..all.len()).filter(|&k| k != h && all[k].members.is_subset(&all[h].members)).collect())
        .collect();
    Ok(SubgroupLattice { group_order: n, subgroups: all, below })
}

/// Left cosets of a subgroup together with the action of the group's
/// generators on them.
#[derive(Clone, Debug, Serialize)]
pub struct CosetAction {
    /// Element indices of each coset; coset 0 is the subgroup itself.
    pub cosets: Vec<Vec<usize>>,
    /// One permutation of the cosets per generator of the group.
    pub generators: Vec<Permutation>,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.cosets.len()
    }

    /// `coset_of[e]` for each group element.
    pub fn coset_index(&self, group_order: usize) -> Vec<usize> {
        let mut out = vec![0; group_order];
        for (k, c) in self.cosets.iter().enumerate() {
            for &e in c {
                out[e] = k;
            }
        }
        out
    }
}

/// `coset_action`: the left action of `g` on left cosets `xH`.
pub fn coset_action(g: &PermGroup, h: &Subgroup) -> Result<CosetAction> {
    let table = g.multiplication_table();
    let n = g.order();
    if h.members.0.len() != n.div_ceil(64) || !h.members.contains(0) || closure(&table, &h.members.iter().collect::<Vec<_>>()) != h.members {
        return Err(Error::NotASubgroup);
    }
    let members: Vec<usize> = h.members.iter().collect();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let mut c: Vec<usize> = members.iter().map(|&m| table[x][m]).collect();
        c.sort_unstable();
        for &e in &c {
            coset_of[e] = cosets.len();
        }
        cosets.push(c);
    }
    let generators = g
        .generators()
        .iter()
        .map(|s| {
            let si = g.index_of(s).expect("generator in group");
            let images = cosets.iter().map(|c| coset_of[table[si][c[0]]]).collect();
            Permutation::from_images(images)
        })
        .collect::<Result<_>>()?;
    Ok(CosetAction { cosets, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::generate;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    /// Oracle: subsets of the group closed under composition, by brute force.
    fn brute_force_subgroup_count(g: &PermGroup) -> usize {
        let n = g.order();
        let table = g.multiplication_table();
        (0u64..1 << n)
            .filter(|mask| {
                mask & 1 == 1
                    && (0..n).all(|a| {
                        mask >> a & 1 == 0 || (0..n).all(|b| mask >> b & 1 == 0 || mask >> table[a][b] & 1 == 1)
                    })
            })
            .count()
    }

    #[test]
    fn cyclic_four() {
        let g = generate(4, &[p(4, "(1 2 3 4)")], 100).unwrap();
        let lat = subgroups(&g, 120).unwrap();
        let orders: Vec<usize> = lat.subgroups.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 4]);
        assert_eq!(brute_force_subgroup_count(&g), 3);
    }

    #[test]
    fn trivial_group_has_one_subgroup() {
        let lat = subgroups(&PermGroup::trivial(3), 120).unwrap();
        assert_eq!(lat.len(), 1);
        assert_eq!(lat.trivial(), lat.full());
    }

    #[test]
    fn symmetric_three() {
        let g = generate(3, &[p(3, "(1 2)"), p(3, "(2 3)")], 100).unwrap();
        let lat = subgroups(&g, 120).unwrap();
        let orders: Vec<usize> = lat.subgroups.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(brute_force_subgroup_count(&g), 6);
        assert!(lat.verify_index_chains().is_ok());
    }

    #[test]
    fn counts_match_brute_force_on_small_groups() {
        let cases = [
            generate(4, &[p(4, "(1 2)"), p(4, "(3 4)")], 100).unwrap(),
            generate(4, &[p(4, "(1 2 3 4)"), p(4, "(1 3)")], 100).unwrap(),
            generate(5, &[p(5, "(1 2 3 4 5)")], 100).unwrap(),
            generate(6, &[p(6, "(1 2)(3 4 5 6)")], 100).unwrap(),
        ];
        for g in &cases {
            assert_eq!(subgroups(g, 120).unwrap().len(), brute_force_subgroup_count(g));
        }
    }

    #[test]
    fn known_lattice_sizes() {
        let s4 = generate(4, &[p(4, "(1 2)"), p(4, "(1 2 3 4)")], 100).unwrap();
        assert_eq!(subgroups(&s4, 120).unwrap().len(), 30);
        let s5 = generate(5, &[p(5, "(1 2)"), p(5, "(1 2 3 4 5)")], 1000).unwrap();
        assert_eq!(subgroups(&s5, 120).unwrap().len(), 156);
        let a5 = generate(5, &[p(5, "(1 2 3)"), p(5, "(1 2 3 4 5)")], 1000).unwrap();
        assert_eq!(subgroups(&a5, 120).unwrap().len(), 59);
    }

    #[test]
    fn lattice_cap() {
        let s5 = generate(5, &[p(5, "(1 2)"), p(5, "(1 2 3 4 5)")], 1000).unwrap();
        assert_eq!(subgroups(&s5, 100).unwrap_err(), Error::OrderCapExceeded { cap: 100 });
    }

    #[test]
    fn regular_coset_action_is_faithful() {
        let g = generate(3, &[p(3, "(1 2)"), p(3, "(1 2 3)")], 100).unwrap();
        let triv = Subgroup::generated_by(&g, &[]).unwrap();
        let act = coset_action(&g, &triv).unwrap();
        assert_eq!(act.degree(), 6);
        let image = generate(6, &act.generators, 1000).unwrap();
        assert_eq!(image.order(), 6);
    }

    #[test]
    fn coset_action_rejects_non_subgroup() {
        let g = generate(3, &[p(3, "(1 2)"), p(3, "(1 2 3)")], 100).unwrap();
        assert_eq!(
            Subgroup::from_elements(&g, &[Permutation::identity(3), p(3, "(1 2 3)")]).unwrap_err(),
            Error::NotASubgroup
        );
        assert_eq!(Subgroup::generated_by(&g, &[p(3, "(1 2)")]).unwrap().order(), 2);
        let outside = generate(4, &[p(4, "(1 2)")], 10).unwrap();
        assert!(Subgroup::generated_by(&outside, &[p(4, "(3 4)")]).is_err());
    }
}
