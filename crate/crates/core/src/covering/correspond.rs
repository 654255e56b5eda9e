use serde::Serialize;

use super::{verify_cover_map, FiniteCover};
use crate::error::Result;
use crate::perm::{coset_action, generate, identify, subgroups, GroupLabel, SubgroupLattice};
use crate::tracking::MonodromyData;

/// One subgroup `H ≤ G` and the intermediate cover with fiber `G/H`.
#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceRow {
    pub subgroup: usize,
    pub order: usize,
    pub label: GroupLabel,
    /// Elements of `H` in cycle notation.
    pub elements: Vec<String>,
    /// `[G : H]`, the number of sheets.
    pub degree: usize,
    pub cover: FiniteCover,
    /// Indices of the rows whose subgroups properly contain this one.
    pub contained_in: Vec<usize>,
    pub is_trivial: bool,
    pub is_full: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceTable {
    pub group_order: usize,
    pub rows: Vec<CorrespondenceRow>,
    /// Nested pairs `H < J` for which the map `G/H → G/J` was checked.
    pub pairs_checked: usize,
    /// Every inclusion `H ⊆ J` yields an equivariant cover map `G/H → G/J`.
    pub anti_monotone: bool,
    /// Every such map has `[J : H]` sheets.
    pub index_identities: bool,
    #[serde(skip)]
    pub lattice: SubgroupLattice,
}

/// `correspondence`: the cover `G/H` for every subgroup `H` of the
/// monodromy group, with the inclusion-reversing maps between them checked.
pub fn correspondence(m: &MonodromyData, group_cap: usize, lattice_cap: usize) -> Result<CorrespondenceTable> {
    let g = generate(m.degree(), &m.gens, group_cap)?;
    let lattice = subgroups(&g, lattice_cap)?;
    let actions = lattice.subgroups.iter().map(|h| coset_action(&g, h)).collect::<Result<Vec<_>>>()?;
    let covers = actions
        .iter()
        .map(|a| FiniteCover::new(a.degree(), a.generators.clone()))
        .collect::<Result<Vec<_>>>()?;
    let coset_index: Vec<Vec<usize>> = actions.iter().map(|a| a.coset_index(g.order())).collect();

    let mut pairs_checked = 0;
    let mut anti_monotone = true;
    let mut index_identities = true;
    for (j, below) in lattice.below.iter().enumerate() {
        for &h in below {
            // xH ↦ xJ, read off from any representative.
            let map: Vec<usize> = actions[h].cosets.iter().map(|c| coset_index[j][c[0]]).collect();
            let fiber = verify_cover_map(&covers[h], &covers[j], &map);
            pairs_checked += 1;
            match fiber {
                Some(k) => {
                    if Some(k) != lattice.relative_index(j, h) || covers[h].degree != k * covers[j].degree {
                        index_identities = false;
                    }
                }
                None => {
                    anti_monotone = false;
                    index_identities = false;
                }
            }
        }
    }

    let full = lattice.full();
    let rows = lattice
        .subgroups
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let perms: Vec<_> = h.elements(&g).cloned().collect();
            let sub = generate(g.degree(), &perms, perms.len().max(1)).expect("closed subset");
            CorrespondenceRow {
                subgroup: i,
                order: h.order(),
                label: identify(&sub).label,
                elements: perms.iter().map(|p| p.to_cycle_string()).collect(),
                degree: covers[i].degree,
                cover: covers[i].clone(),
                contained_in: (0..lattice.len()).filter(|&j| lattice.below[j].contains(&i)).collect(),
                is_trivial: i == lattice.trivial(),
                is_full: i == full,
            }
        })
        .collect();
    Ok(CorrespondenceTable { group_order: g.order(), rows, pairs_checked, anti_monotone, index_identities, lattice })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::tests::fake_monodromy;

    #[test]
    fn cyclic_four_chain() {
        let t = correspondence(&fake_monodromy(4, &["(1 2 3 4)"]), 1000, 120).unwrap();
        let degrees: Vec<usize> = t.rows.iter().map(|r| r.degree).collect();
        assert_eq!(degrees, vec![4, 2, 1]);
        assert!(t.anti_monotone && t.index_identities);
        assert_eq!(t.pairs_checked, 3);
        assert!(t.rows[0].cover.galois);
    }

    #[test]
    fn trivial_group_single_row() {
        let t = correspondence(&fake_monodromy(2, &["()"]), 1000, 120).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert!(t.rows[0].is_trivial && t.rows[0].is_full);
    }

    #[test]
    fn symmetric_three_table() {
        let t = correspondence(&fake_monodromy(3, &["(1 2)", "(1 2 3)"]), 1000, 120).unwrap();
        assert_eq!(t.rows.len(), 6);
        assert!(t.anti_monotone && t.index_identities);
        // the order-2 subgroups give non-Galois 3-sheeted covers
        assert!(t.rows.iter().filter(|r| r.order == 2).all(|r| r.degree == 3 && !r.cover.galois));
    }
}
