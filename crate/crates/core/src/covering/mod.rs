//! Finite covers of the domain described by a fiber and a π₁-action:
//! the solution space, the ordered-roots cover, the splitting cover, the
//! subgroup/cover correspondence, factorization and power pullbacks.

mod correspond;
mod factor;
mod pullback;

pub use correspond::{correspondence, CorrespondenceRow, CorrespondenceTable};
pub use factor::{factor, FactorOptions};
pub use pullback::{pullback_power, PullbackReport};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::{generate, orbits_of, PermGroup, Permutation, DEFAULT_GROUP_CAP};
use crate::tracking::MonodromyData;

/// A covering of the domain: `degree` sheets permuted by one permutation
/// per hole.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteCover {
    pub degree: usize,
    pub action: Vec<Permutation>,
    pub components: Vec<Vec<usize>>,
    pub galois: bool,
}

impl FiniteCover {
    pub fn new(degree: usize, action: Vec<Permutation>) -> Result<FiniteCover> {
        if let Some(p) = action.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, p.degree()));
        }
        let components = orbits_of(degree, &action);
        let galois = components.first().is_none_or(|c| is_regular_on(&action, c));
        Ok(FiniteCover { degree, action, components, galois })
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.len()).collect()
    }

    /// Which component each sheet belongs to.
    pub fn component_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.degree];
        for (k, c) in self.components.iter().enumerate() {
            for &i in c {
                out[i] = k;
            }
        }
        out
    }

    /// The action restricted to one component, relabelled `0..len`.
    pub fn restrict(&self, component: usize) -> FiniteCover {
        let c = &self.components[component];
        let pos: HashMap<usize, usize> = c.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let action = self
            .action
            .iter()
            .map(|g| Permutation::from_images(c.iter().map(|&i| pos[&g.apply(i)]).collect()).expect("orbit is invariant"))
            .collect();
        FiniteCover::new(c.len(), action).expect("consistent degree")
    }
}

/// Whether the group generated by `action` acts regularly on `orbit`.
fn is_regular_on(action: &[Permutation], orbit: &[usize]) -> bool {
    let pos: HashMap<usize, usize> = orbit.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let restricted: Vec<Permutation> = action
        .iter()
        .map(|g| Permutation::from_images(orbit.iter().map(|&i| pos[&g.apply(i)]).collect()).expect("orbit is invariant"))
        .collect();
    // A transitive group is regular exactly when its order equals the orbit
    // size; the cap stops the enumeration as soon as it is exceeded.
    generate(orbit.len(), &restricted, orbit.len()).is_ok()
}

impl Serialize for FiniteCover {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FiniteCover", 4)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("generators", &self.action.iter().map(|p| p.to_cycle_string()).collect::<Vec<_>>())?;
        let comps: Vec<Vec<usize>> = self.components.iter().map(|c| c.iter().map(|i| i + 1).collect()).collect();
        st.serialize_field("components", &comps)?;
        st.serialize_field("galois", &self.galois)?;
        st.end()
    }
}

/// `solution_cover`: the roots themselves, permuted by monodromy.
pub fn solution_cover(m: &MonodromyData) -> FiniteCover {
    FiniteCover::new(m.degree(), m.gens.clone()).expect("monodromy permutations share the fiber degree")
}

/// The splitting cover together with its group and deck action.
#[derive(Clone, Debug)]
pub struct SplittingCover {
    pub cover: FiniteCover,
    /// Monodromy group; sheet `k` is the ordering `group.elements()[k]`.
    pub group: PermGroup,
    /// Deck transformations generated by right multiplication with the
    /// group's generators.
    pub deck: Vec<Permutation>,
}

/// `splitting_cover`: the orbit of the identity ordering of the roots under
/// the diagonal monodromy action.
pub fn splitting_cover(m: &MonodromyData, cap: usize) -> Result<SplittingCover> {
    let n = m.degree();
    let group = generate(n, &m.gens, cap)?;
    let els = group.elements();
    // The ordering (g(1), …, g(n)) moves to (s(g(1)), …, s(g(n))) = s∘g.
    let left = |s: &Permutation| {
        Permutation::from_images(els.iter().map(|e| group.index_of(&s.compose(e)).expect("closed")).collect())
    };
    let right = |s: &Permutation| {
        Permutation::from_images(els.iter().map(|e| group.index_of(&e.compose(s)).expect("closed")).collect())
    };
    let action = m.gens.iter().map(left).collect::<Result<Vec<_>>>()?;
    let deck = m.gens.iter().map(right).collect::<Result<Vec<_>>>()?;
    let cover = FiniteCover::new(els.len(), action)?;
    Ok(SplittingCover { cover, group, deck })
}

/// `ambient_cover`: all `n!` orderings of the roots with the diagonal
/// monodromy action.
pub fn ambient_cover(m: &MonodromyData) -> Result<(FiniteCover, Vec<Permutation>)> {
    let n = m.degree();
    let factorial: usize = (1..=n).product();
    if factorial > DEFAULT_GROUP_CAP {
        return Err(Error::OrderCapExceeded { cap: DEFAULT_GROUP_CAP });
    }
    let sym = if n < 2 {
        PermGroup::trivial(n)
    } else {
        let cycle = Permutation::from_images((1..n).chain([0]).collect())?;
        let swap = Permutation::from_images([1, 0].into_iter().chain(2..n).collect())?;
        generate(n, &[cycle, swap], DEFAULT_GROUP_CAP)?
    };
    let action = m
        .gens
        .iter()
        .map(|s| {
            Permutation::from_images(sym.elements().iter().map(|e| sym.index_of(&s.compose(e)).expect("closed")).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((FiniteCover::new(factorial, action)?, sym.elements().to_vec()))
}

/// Checks that `map` (sheet of `upper` ↦ sheet of `lower`) commutes with the
/// actions and has fibers of one common size, which it returns.
pub fn verify_cover_map(upper: &FiniteCover, lower: &FiniteCover, map: &[usize]) -> Option<usize> {
    if map.len() != upper.degree || upper.action.len() != lower.action.len() || map.iter().any(|&v| v >= lower.degree) {
        return None;
    }
    for (a, b) in upper.action.iter().zip(&lower.action) {
        if (0..upper.degree).any(|i| map[a.apply(i)] != b.apply(map[i])) {
            return None;
        }
    }
    let mut counts = vec![0usize; lower.degree];
    for &v in map {
        counts[v] += 1;
    }
    let first = counts[0];
    counts.iter().all(|&c| c == first).then_some(first)
}

/// Sheet counts along `S_f → E_f → E₁ → X`, where `E₁` is the component of
/// the solution space through root 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeTower {
    pub ambient_degree: usize,
    pub ambient_components: usize,
    pub splitting_degree: usize,
    pub solution_component_degree: usize,
    /// Sheets of `E_f` over one point of `E₁`.
    pub splitting_over_solution: usize,
    pub identity_component_matches: bool,
    pub consistent: bool,
}

/// Verifies the degree identities of the cover tower combinatorially.
pub fn degree_tower(m: &MonodromyData, cap: usize) -> Result<DegreeTower> {
    let split = splitting_cover(m, cap)?;
    let (ambient, orderings) = ambient_cover(m)?;
    let solution = solution_cover(m);
    // Component of the ambient cover through the identity ordering.
    let id_sheet = orderings.iter().position(|p| p.is_identity()).expect("identity ordering");
    let comp = ambient.components.iter().find(|c| c.contains(&id_sheet)).expect("component");
    let comp_perms: Vec<&Permutation> = comp.iter().map(|&k| &orderings[k]).collect();
    let identity_component_matches = comp_perms.len() == split.group.order()
        && split.group.elements().iter().zip(&comp_perms).all(|(a, b)| a == *b);
    let ambient_ok = ambient.components.iter().all(|c| c.len() == split.cover.degree);

    // E_f → E₁ sends an ordering to its first root.
    let e1 = solution.components.iter().position(|c| c.contains(&0)).unwrap_or(0);
    let e1_cover = solution.restrict(e1);
    let pos: HashMap<usize, usize> = solution.components[e1].iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let map: Vec<usize> = split.group.elements().iter().map(|g| pos[&g.apply(0)]).collect();
    let fiber = verify_cover_map(&split.cover, &e1_cover, &map);
    let over = fiber.unwrap_or(0);
    let consistent = identity_component_matches
        && ambient_ok
        && fiber.is_some()
        && split.cover.degree == over * e1_cover.degree
        && ambient.degree == ambient.components.len() * split.cover.degree;
    Ok(DegreeTower {
        ambient_degree: ambient.degree,
        ambient_components: ambient.components.len(),
        splitting_degree: split.cover.degree,
        solution_component_degree: e1_cover.degree,
        splitting_over_solution: over,
        identity_component_matches,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tracking::{ResidualReport, RootFiber, TrackStats};
    use num_complex::Complex64;

    pub(crate) fn fake_monodromy(n: usize, gens: &[&str]) -> MonodromyData {
        MonodromyData {
            base: RootFiber { point: Complex64::new(0.0, 0.0), roots: (0..n).map(|k| Complex64::new(k as f64, 0.0)).collect() },
            gens: gens.iter().map(|s| Permutation::parse_cycles(n, s).unwrap()).collect(),
            report: ResidualReport {
                weierstrass_margin: 1.0,
                base_residual: 0.0,
                base_separation: 1.0,
                per_generator: vec![],
                total: TrackStats::default(),
            },
        }
    }

    #[test]
    fn solution_cover_components() {
        let c = solution_cover(&fake_monodromy(4, &["(1 2)(3 4)"]));
        assert_eq!(c.degree, 4);
        assert_eq!(c.component_sizes(), vec![2, 2]);
        assert!(c.galois);
        let c = solution_cover(&fake_monodromy(3, &["()"]));
        assert_eq!(c.components.len(), 3);
    }

    #[test]
    fn splitting_degree_is_group_order() {
        let s = splitting_cover(&fake_monodromy(4, &["(1 2)(3 4)"]), 1000).unwrap();
        assert_eq!(s.cover.degree, 2);
        let s3 = splitting_cover(&fake_monodromy(3, &["(1 2)", "(2 3)"]), 1000).unwrap();
        assert_eq!(s3.cover.degree, 6);
        assert!(s3.cover.galois && s3.cover.is_connected());
        // deck transformations commute with the monodromy action
        for a in &s3.cover.action {
            for d in &s3.deck {
                assert_eq!(a.compose(d), d.compose(a));
            }
        }
        assert!(generate(6, &s3.deck, 100).unwrap().is_transitive());
    }

    #[test]
    fn non_regular_action_is_not_galois() {
        let c = solution_cover(&fake_monodromy(3, &["(1 2)", "(2 3)"]));
        assert!(c.is_connected());
        assert!(!c.galois);
    }

    #[test]
    fn tower_identities() {
        for (n, gens) in [(3, vec!["(1 2)", "(2 3)"]), (4, vec!["(1 2)(3 4)"]), (4, vec!["(1 2 3 4)"]), (2, vec!["()"])] {
            let t = degree_tower(&fake_monodromy(n, &gens), 1000).unwrap();
            assert!(t.consistent, "{:?}", t);
        }
    }
}
