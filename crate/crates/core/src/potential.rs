//! Cycles up to rotation, potentials and cyclic derivatives.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::quiver::{Path, Quiver};
use crate::scalar::Cyc3;

/// A cycle stored as its lexicographically smallest rotation of arrow ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    /// Caller guarantees the arrows close up into a cycle.
    pub fn canonical(arrows: &[usize]) -> Self {
        let n = arrows.len();
        let best = (0..n).map(|r| rotate(arrows, r)).min().unwrap_or_default();
        Cycle(best)
    }

    pub fn arrows(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rotations(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.0.len()).map(|r| rotate(&self.0, r))
    }

    pub fn source(&self, q: &Quiver) -> usize {
        q.arrow(self.0[0]).source
    }

    /// How often `arrow` occurs in the cycle.
    pub fn multiplicity(&self, arrow: usize) -> usize {
        self.0.iter().filter(|&&a| a == arrow).count()
    }
}

fn rotate(arrows: &[usize], r: usize) -> Vec<usize> {
    arrows[r..].iter().chain(&arrows[..r]).copied().collect()
}

/// All cycles of length three, one representative per rotation class.
pub fn three_cycles(q: &Quiver) -> BTreeSet<Cycle> {
    let mut out = BTreeSet::new();
    for a in q.arrows() {
        for &b in q.outgoing(a.target) {
            for &c in q.outgoing(q.arrow(b).target) {
                if q.arrow(c).target == a.source {
                    out.insert(Cycle::canonical(&[a.id, b, c]));
                }
            }
        }
    }
    out
}

/// A finite linear combination of paths with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathSum {
    terms: BTreeMap<Path, Cyc3>,
}

impl PathSum {
    pub fn new() -> Self {
        PathSum::default()
    }

    pub fn from_path(path: Path) -> Self {
        let mut out = PathSum::new();
        out.add_term(path, &Cyc3::one());
        out
    }

    pub fn add_term(&mut self, path: Path, coeff: &Cyc3) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(path).or_insert_with(Cyc3::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Cyc3)> {
        self.terms.iter()
    }

    pub fn coeff(&self, path: &Path) -> Cyc3 {
        self.terms.get(path).cloned().unwrap_or_else(Cyc3::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &Cyc3) -> PathSum {
        let mut out = PathSum::new();
        for (p, v) in &self.terms {
            out.add_term(p.clone(), &(v * c));
        }
        out
    }

    pub fn add(&mut self, other: &PathSum) {
        for (p, v) in &other.terms {
            self.add_term(p.clone(), v);
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms.iter().map(|(p, c)| format!("({c})·{}", p.display(q))).collect::<Vec<_>>().join(" + ")
    }
}

/// Map from rotation classes of cycles to nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Potential {
    terms: BTreeMap<Cycle, Cyc3>,
}

impl Potential {
    pub fn new() -> Self {
        Potential::default()
    }

    /// Adds `coeff · cycle`; the cycle may be given in any rotation.
    pub fn add_term(&mut self, arrows: &[usize], coeff: &Cyc3) {
        if coeff.is_zero() {
            return;
        }
        let key = Cycle::canonical(arrows);
        let entry = self.terms.entry(key.clone()).or_insert_with(Cyc3::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cycle, &Cyc3)> {
        self.terms.iter()
    }

    pub fn coeff(&self, cycle: &Cycle) -> Cyc3 {
        self.terms.get(cycle).cloned().unwrap_or_else(Cyc3::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitutes `a ↦ factor[a]·a` for every arrow.
    pub fn rescale(&self, factor: impl Fn(usize) -> Cyc3) -> Potential {
        let mut out = Potential::new();
        for (c, v) in &self.terms {
            let f = c.arrows().iter().fold(v.clone(), |acc, &a| &acc * &factor(a));
            out.add_term(c.arrows(), &f);
        }
        out
    }

    /// Image under an arrow relabelling.
    pub fn map_arrows(&self, map: impl Fn(usize) -> usize) -> Potential {
        let mut out = Potential::new();
        for (c, v) in &self.terms {
            let img: Vec<usize> = c.arrows().iter().map(|&a| map(a)).collect();
            out.add_term(&img, v);
        }
        out
    }

    pub fn add(&self, other: &Potential) -> Potential {
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_term(c.arrows(), v);
        }
        out
    }
}

/// `∂_a W`: for every stored cycle and every occurrence of `a` in it, the path
/// obtained by rotating `a` to the front and deleting it.
pub fn cyclic_derivative(q: &Quiver, w: &Potential, a: usize) -> Result<PathSum> {
    q.check_arrow(a)?;
    let mut out = PathSum::new();
    for (cycle, coeff) in w.terms() {
        let arrows = cycle.arrows();
        for (r, &b) in arrows.iter().enumerate() {
            if b != a {
                continue;
            }
            let rest: Vec<usize> = arrows[r + 1..].iter().chain(&arrows[..r]).copied().collect();
            let path = Path { source: q.arrow(a).target, arrows: rest };
            out.add_term(path, coeff);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn canonicalization_is_rotation_invariant(v in proptest::collection::vec(0usize..6, 1..6), r in 0usize..6) {
            let r = r % v.len();
            let rotated = rotate(&v, r);
            let c = Cycle::canonical(&v);
            prop_assert_eq!(&Cycle::canonical(&rotated), &c);
            prop_assert_eq!(Cycle::canonical(c.arrows()), c);
        }
    }

    #[test]
    fn potential_cancels_terms() {
        let mut w = Potential::new();
        w.add_term(&[1, 2, 0], &Cyc3::one());
        w.add_term(&[0, 1, 2], &Cyc3::from(-1));
        assert!(w.is_empty());
    }
}
