use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

use super::{generate, PermGroup, Permutation};

/// Heuristic isomorphism-class label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupLabel {
    Trivial,
    Cyclic(usize),
    ElementaryAbelian { p: usize, rank: usize },
    /// Invariant factors `d_1 | d_2 | …`, ascending.
    Abelian(Vec<usize>),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Unidentified(usize),
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::Trivial => write!(f, "trivial"),
            GroupLabel::Cyclic(n) => write!(f, "C{}", n),
            GroupLabel::ElementaryAbelian { p, rank } => write!(f, "C{}^{}", p, rank),
            GroupLabel::Abelian(fs) => {
                write!(f, "{}", fs.iter().map(|d| format!("C{}", d)).collect::<Vec<_>>().join(" x "))
            }
            GroupLabel::Dihedral(m) => write!(f, "D{}", m),
            GroupLabel::Symmetric(k) => write!(f, "S{}", k),
            GroupLabel::Alternating(k) => write!(f, "A{}", k),
            GroupLabel::Unidentified(n) => write!(f, "unidentified (order {})", n),
        }
    }
}

impl Serialize for GroupLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The evidence behind a label.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Identification {
    pub label: GroupLabel,
    pub order: usize,
    pub abelian: bool,
    pub exponent: usize,
    /// Element order → number of elements of that order.
    pub order_histogram: BTreeMap<usize, usize>,
}

impl Identification {
    /// Same order, abelianness and element-order statistics.
    pub fn statistics_match(&self, other: &Identification) -> bool {
        self.order == other.order && self.abelian == other.abelian && self.order_histogram == other.order_histogram
    }
}

pub fn identify(g: &PermGroup) -> Identification {
    let order = g.order();
    let hist = g.order_histogram();
    let abelian = g.is_abelian();
    let label = if order == 1 {
        GroupLabel::Trivial
    } else if abelian {
        abelian_label(order, &hist)
    } else {
        nonabelian_label(order, &hist)
    };
    Identification { label, order, abelian, exponent: g.exponent(), order_histogram: hist }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of an abelian group from its element-order counts.
pub fn invariant_factors(order: usize, hist: &BTreeMap<usize, usize>) -> Vec<usize> {
    // For each prime p, N_k = #{g : g^(p^k) = 1} = p^(s_k) with
    // s_k = Σ_i min(k, e_i); successive differences count exponents ≥ k.
    let mut factors: Vec<usize> = Vec::new();
    for p in prime_factors(order) {
        let mut exps: Vec<u32> = Vec::new();
        let mut prev_s = 0u32;
        let mut k = 1u32;
        loop {
            let pk = p.pow(k);
            let count: usize = hist.iter().filter(|(o, _)| pk % **o == 0).map(|(_, c)| c).sum();
            let s = count.ilog(p);
            let at_least_k = s - prev_s;
            if at_least_k == 0 {
                break;
            }
            // at_least_k exponents are ≥ k
            if exps.len() < at_least_k as usize {
                exps.resize(at_least_k as usize, 0);
            }
            for e in exps.iter_mut().take(at_least_k as usize) {
                *e = k;
            }
            prev_s = s;
            k += 1;
        }
        // exps is descending; pair the largest p-part with the largest factor.
        if factors.len() < exps.len() {
            let pad = exps.len() - factors.len();
            let mut padded = vec![1; pad];
            padded.extend(factors);
            factors = padded;
        }
        let len = factors.len();
        for (i, e) in exps.iter().enumerate() {
            factors[len - 1 - i] *= p.pow(*e);
        }
    }
    factors
}

fn abelian_label(order: usize, hist: &BTreeMap<usize, usize>) -> GroupLabel {
    let fs = invariant_factors(order, hist);
    match fs.as_slice() {
        [n] => GroupLabel::Cyclic(*n),
        [p, ..] if fs.iter().all(|d| d == p) && prime_factors(*p) == vec![*p] => {
            GroupLabel::ElementaryAbelian { p: *p, rank: fs.len() }
        }
        _ => GroupLabel::Abelian(fs),
    }
}

fn symmetric_group(k: usize) -> PermGroup {
    let mut gens = vec![Permutation::from_cycles(k, &[&(1..=k).collect::<Vec<_>>()]).expect("cycle")];
    if k > 1 {
        gens.push(Permutation::from_cycles(k, &[&[1, 2]]).expect("transposition"));
    }
    generate(k, &gens, usize::MAX).expect("no cap")
}

fn alternating_histogram(k: usize) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for e in symmetric_group(k).elements().iter().filter(|e| e.sign() == 1) {
        *h.entry(e.order()).or_insert(0) += 1;
    }
    h
}

fn dihedral_histogram(m: usize) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for r in 0..m {
        *h.entry(m / num_integer::gcd(r, m)).or_insert(0) += 1;
    }
    *h.entry(2).or_insert(0) += m;
    h
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn nonabelian_label(order: usize, hist: &BTreeMap<usize, usize>) -> GroupLabel {
    for k in 3..=7 {
        if factorial(k) == order && symmetric_group(k).order_histogram() == *hist {
            return GroupLabel::Symmetric(k);
        }
        if k >= 4 && factorial(k) / 2 == order && alternating_histogram(k) == *hist {
            return GroupLabel::Alternating(k);
        }
    }
    if order % 2 == 0 && order >= 6 && dihedral_histogram(order / 2) == *hist {
        return GroupLabel::Dihedral(order / 2);
    }
    GroupLabel::Unidentified(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, gens: &[&str]) -> PermGroup {
        let gens: Vec<Permutation> = gens.iter().map(|s| Permutation::parse_cycles(n, s).unwrap()).collect();
        generate(n, &gens, 100_000).unwrap()
    }

    #[test]
    fn labels() {
        assert_eq!(identify(&PermGroup::trivial(3)).label, GroupLabel::Trivial);
        assert_eq!(identify(&g(5, &["(1 2 3 4 5)"])).label, GroupLabel::Cyclic(5));
        assert_eq!(identify(&g(5, &["(1 2)(3 4 5)"])).label, GroupLabel::Cyclic(6));
        assert_eq!(identify(&g(4, &["(1 2)", "(3 4)"])).label, GroupLabel::ElementaryAbelian { p: 2, rank: 2 });
        assert_eq!(identify(&g(6, &["(1 2)", "(3 4 5 6)"])).label, GroupLabel::Abelian(vec![2, 4]));
        assert_eq!(identify(&g(3, &["(1 2)", "(1 2 3)"])).label, GroupLabel::Symmetric(3));
        assert_eq!(identify(&g(4, &["(1 2)", "(1 2 3 4)"])).label, GroupLabel::Symmetric(4));
        assert_eq!(identify(&g(4, &["(1 2 3)", "(2 3 4)"])).label, GroupLabel::Alternating(4));
        assert_eq!(identify(&g(4, &["(1 2 3 4)", "(1 3)"])).label, GroupLabel::Dihedral(4));
        assert_eq!(identify(&g(5, &["(1 2 3 4 5)", "(2 5)(3 4)"])).label, GroupLabel::Dihedral(5));
    }

    #[test]
    fn quaternion_is_not_dihedral() {
        // Q8 in its regular representation on 8 points.
        let q = g(8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"]);
        assert_eq!(q.order(), 8);
        assert_eq!(identify(&q).label, GroupLabel::Unidentified(8));
    }

    #[test]
    fn display() {
        assert_eq!(GroupLabel::ElementaryAbelian { p: 2, rank: 2 }.to_string(), "C2^2");
        assert_eq!(GroupLabel::Abelian(vec![2, 4]).to_string(), "C2 x C4");
        assert_eq!(GroupLabel::Symmetric(3).to_string(), "S3");
    }
}
