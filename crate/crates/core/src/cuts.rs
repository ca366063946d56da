//! Cuts, cut enumeration, ω-invariant cuts of `A^s`, the induced cut on `D^s`
//! and the socle-degree (homogeneity) report.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{build_a, build_d, omega_map, potential_a_on, STEPS};
use crate::jacobian::JacobianAlgebra;
use crate::potential::{Cycle, Potential};
use crate::quiver::{ArrowLabel, Family, Quiver, Vertex};
use crate::scalar::Cyc3;

/// Arrow subset with its 0/1 grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    arrows: Vec<usize>,
    grading: Vec<u32>,
}

impl Cut {
    pub fn new(q: &Quiver, arrows: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut grading = vec![0; q.num_arrows()];
        let mut ids = Vec::new();
        for a in arrows {
            q.check_arrow(a)?;
            if grading[a] == 0 {
                grading[a] = 1;
                ids.push(a);
            }
        }
        ids.sort_unstable();
        Ok(Cut { arrows: ids, grading })
    }

    /// Parses a comma-separated list of arrow names such as `a[1,0]@2.1.0,a[2,1]@2.1.0`.
    pub fn parse(q: &Quiver, spec: &str) -> Result<Self> {
        let ids = split_top_level(spec)
            .into_iter()
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| q.parse_arrow(name).map_err(|_| Error::BadCutSpec(format!("unknown arrow `{name}`"))))
            .collect::<Result<Vec<_>>>()?;
        if ids.is_empty() {
            return Err(Error::BadCutSpec("empty cut".into()));
        }
        Cut::new(q, ids)
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn grading(&self) -> &[u32] {
        &self.grading
    }

    pub fn contains(&self, a: usize) -> bool {
        self.grading.get(a).is_some_and(|&g| g == 1)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn names(&self, q: &Quiver) -> Vec<String> {
        self.arrows.iter().map(|&a| q.arrow_name(a)).collect()
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Cut, &'a Quiver);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let labels: Vec<String> = self.0.arrows.iter().map(|&a| self.1.arrow_name(a)).collect();
                write!(f, "{{{}}}", labels.join(", "))
            }
        }
        D(self, q)
    }
}

/// Splits on commas outside square brackets.
fn split_top_level(spec: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in spec.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&spec[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&spec[start..]);
    parts
}

/// `g_C`-degree of a cycle, occurrences counted with multiplicity.
fn cycle_degree(c: &Cycle, in_cut: impl Fn(usize) -> bool) -> usize {
    c.arrows().iter().filter(|&&a| in_cut(a)).count()
}

/// Every stored cycle has cut-degree exactly 1.
pub fn is_cut(w: &Potential, arrows: &[usize]) -> bool {
    w.terms().all(|(c, _)| cycle_degree(c, |a| arrows.contains(&a)) == 1)
}

/// All cuts of `(q, w)`, sorted by arrow-id list.
pub fn enumerate_cuts(q: &Quiver, w: &Potential) -> Vec<Cut> {
    let classes: Vec<Vec<usize>> = (0..q.num_arrows()).map(|a| vec![a]).collect();
    enumerate_class_cuts(q, w, &classes)
}

/// Cuts that are unions of the given disjoint arrow classes.
pub fn enumerate_class_cuts(q: &Quiver, w: &Potential, classes: &[Vec<usize>]) -> Vec<Cut> {
    let mut class_of = vec![usize::MAX; q.num_arrows()];
    for (k, cl) in classes.iter().enumerate() {
        for &a in cl {
            class_of[a] = k;
        }
    }
    let cycles: Vec<&Cycle> = w.terms().map(|(c, _)| c).collect();
    // Per cycle: class → number of occurrences.
    let mult: Vec<BTreeMap<usize, usize>> = cycles
        .iter()
        .map(|c| {
            let mut m = BTreeMap::new();
            for &a in c.arrows() {
                *m.entry(class_of[a]).or_insert(0) += 1;
            }
            m
        })
        .collect();

    // Variables in order of first appearance along the cycles, loose classes last.
    let mut order = Vec::new();
    let mut seen = vec![false; classes.len()];
    for m in &mult {
        for &k in m.keys() {
            if !std::mem::replace(&mut seen[k], true) {
                order.push(k);
            }
        }
    }
    order.extend((0..classes.len()).filter(|&k| !seen[k]));
    let mut cycles_of = vec![Vec::new(); classes.len()];
    for (ci, m) in mult.iter().enumerate() {
        for (&k, &n) in m {
            cycles_of[k].push((ci, n));
        }
    }
    let open: Vec<usize> = mult.iter().map(|m| m.values().sum()).collect();

    struct Search<'a> {
        order: &'a [usize],
        cycles_of: &'a [Vec<(usize, usize)>],
        degree: Vec<usize>,
        open: Vec<usize>,
        chosen: Vec<bool>,
        found: Vec<Vec<usize>>,
    }
    impl Search<'_> {
        fn run(&mut self, pos: usize) {
            if pos == self.order.len() {
                self.found.push((0..self.chosen.len()).filter(|&k| self.chosen[k]).collect());
                return;
            }
            let k = self.order[pos];
            for take in [false, true] {
                let mut ok = true;
                for &(ci, n) in &self.cycles_of[k] {
                    self.open[ci] -= n;
                    if take {
                        self.degree[ci] += n;
                    }
                    if self.degree[ci] > 1 || self.degree[ci] + self.open[ci] < 1 {
                        ok = false;
                    }
                }
                if ok {
                    self.chosen[k] = take;
                    self.run(pos + 1);
                    self.chosen[k] = false;
                }
                for &(ci, n) in &self.cycles_of[k] {
                    self.open[ci] += n;
                    if take {
                        self.degree[ci] -= n;
                    }
                }
            }
        }
    }
    if open.contains(&0) {
        return Vec::new();
    }
    let mut search = Search {
        order: &order,
        cycles_of: &cycles_of,
        degree: vec![0; cycles.len()],
        open,
        chosen: vec![false; classes.len()],
        found: Vec::new(),
    };
    search.run(0);
    let mut cuts: Vec<Cut> = search
        .found
        .into_iter()
        .map(|ks| Cut::new(q, ks.into_iter().flat_map(|k| classes[k].iter().copied())).expect("valid arrows"))
        .collect();
    cuts.sort();
    cuts
}

/// Every arrow lies in some cut.
pub fn has_enough_cuts(q: &Quiver, w: &Potential) -> bool {
    let cuts = enumerate_cuts(q, w);
    (0..q.num_arrows()).all(|a| cuts.iter().any(|c| c.contains(a)))
}

/// Orbits of the ω arrow map on `A^s`, each sorted, ordered by smallest id.
pub fn omega_arrow_orbits(q: &Quiver) -> Result<Vec<Vec<usize>>> {
    let om = omega_map(q)?;
    let mut seen = vec![false; q.num_arrows()];
    let mut orbits = Vec::new();
    for a in 0..q.num_arrows() {
        if seen[a] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut b = a;
        while !seen[b] {
            seen[b] = true;
            orbit.push(b);
            b = om.arrow_map[b];
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Cuts of `(A^s, W_A^s)` closed under ω.
pub fn invariant_cuts_a(s: usize) -> Result<Vec<Cut>> {
    let q = build_a(s)?;
    let w = potential_a_on(&q);
    let orbits = omega_arrow_orbits(&q)?;
    Ok(enumerate_class_cuts(&q, &w, &orbits))
}

pub fn is_omega_invariant(q: &Quiver, c: &Cut) -> Result<bool> {
    let om = omega_map(q)?;
    Ok(c.arrows().iter().all(|&a| c.contains(om.arrow_map[a])))
}

/// The cut of `D^s` induced by an ω-invariant cut `cprime` of `A^s`, `s ≡ 1 mod 3`:
/// `e_x α_{i,j}` lies in the cut iff `e_{ω^j(x)} α_i` does, the `β_k` iff the
/// arrow `X - f_0 → X` does, and the `γ_k` iff `X → X + f_2` does.
pub fn induce_cut_d(s: usize, cprime: &Cut) -> Result<Cut> {
    if s % 3 != 1 {
        return Err(Error::InvalidParameter(format!("induced cuts need s ≡ 1 mod 3, got s = {s}")));
    }
    let qa = build_a(s)?;
    let wa = potential_a_on(&qa);
    if cprime.grading().len() != qa.num_arrows() {
        return Err(Error::InvalidParameter("cut does not live on A^s".into()));
    }
    if !is_omega_invariant(&qa, cprime)? {
        return Err(Error::NotInvariant);
    }
    if !is_cut(&wa, cprime.arrows()) {
        return Err(Error::NotACut);
    }
    let qd = build_d(s)?;
    let t = ((s - 1) / 3) as u32;
    let x_fixed = [t, t, t];
    let a_arrow = |x: [u32; 3], i: u8| -> usize {
        let v = qa.vertex_index(&Vertex::Lattice(x)).expect("lattice vertex of A^s");
        qa.find_arrow(v, ArrowLabel::alpha(i, 0)).expect("arrow of A^s")
    };
    let before_x = shift(x_fixed, 0, -1);
    let beta_in = cprime.contains(a_arrow(before_x, 0));
    let gamma_in = cprime.contains(a_arrow(x_fixed, 2));
    let mut ids = Vec::new();
    for arrow in qd.arrows() {
        let keep = match arrow.label {
            ArrowLabel::Alpha { i, j } => {
                let x = qd.vertex(arrow.source).coords().expect("α starts at a lattice vertex");
                cprime.contains(a_arrow(crate::families::omega_pow(x, j as i64), i))
            }
            ArrowLabel::Beta(_) => beta_in,
            ArrowLabel::Gamma(_) => gamma_in,
        };
        if keep {
            ids.push(arrow.id);
        }
    }
    Cut::new(&qd, ids)
}

fn shift(x: [u32; 3], i: usize, sign: i64) -> [u32; 3] {
    let mut out = [0; 3];
    for c in 0..3 {
        out[c] = (x[c] as i64 + sign * STEPS[i][c]) as u32;
    }
    out
}

/// A loop whose cube occurs in the potential; it rules out every cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopWitness {
    pub arrow: String,
    pub vertex: Vertex,
    pub label: ArrowLabel,
    pub coeff: Cyc3,
}

pub fn cube_loop_witness(q: &Quiver, w: &Potential) -> Option<LoopWitness> {
    q.arrows().iter().find_map(|a| {
        if a.source != a.target {
            return None;
        }
        let c = w.coeff(&Cycle::canonical(&[a.id, a.id, a.id]));
        (!c.is_zero()).then(|| LoopWitness {
            arrow: q.arrow_name(a.id),
            vertex: q.vertex(a.source),
            label: a.label,
            coeff: c,
        })
    })
}

/// The loop predicted for `D^s`: `α_{2,2}` at `(t,t,t-1)` when `s = 3t`,
/// `α_{2,1}` at `(t+1,t,t)` when `s = 3t+2`.
pub fn expected_cube_loop(s: usize) -> Option<(Vertex, ArrowLabel)> {
    let t = (s / 3) as u32;
    match s % 3 {
        0 if s >= 3 => Some((Vertex::lattice(t, t, t - 1), ArrowLabel::alpha(2, 2))),
        2 => Some((Vertex::lattice(t + 1, t, t), ArrowLabel::alpha(2, 1))),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneityReport {
    pub s: usize,
    pub cut: Vec<String>,
    pub socle_degrees: BTreeMap<Vertex, u32>,
    /// Common socle degree, when there is one.
    #[serde(rename = "N")]
    pub n: Option<u32>,
    /// Order of the Nakayama permutation.
    pub k: usize,
    /// `"2N/(k+N)"`, unreduced.
    pub fcy: Option<String>,
    pub witness: Option<String>,
}

/// Socle degrees of all `e_x J` under the cut grading, and the resulting
/// Calabi-Yau fraction when they agree.
pub fn homogeneity_report(j: &JacobianAlgebra, c: &Cut) -> Result<HomogeneityReport> {
    let q = j.quiver();
    if !is_cut(j.potential(), c.arrows()) {
        return Err(Error::NotACut);
    }
    let perm = j.nakayama_permutation()?;
    let k = permutation_order(&perm);
    let mut socle_degrees = BTreeMap::new();
    let mut per_vertex = Vec::new();
    for x in 0..q.num_vertices() {
        let soc = j.socle_idx(x);
        let e = soc.first().expect("selfinjective: nonzero socle");
        let mut degs = e.support().map(|i| j.path_grade(i, c.grading()));
        let d = degs.next().expect("nonzero element");
        if degs.any(|e| e != d) {
            return Err(Error::NotHomogeneous(format!("socle of e_{} J is not cut-homogeneous", q.vertex(x))));
        }
        socle_degrees.insert(q.vertex(x), d);
        per_vertex.push(d);
    }
    let first = per_vertex[0];
    let (n, fcy, witness) = match per_vertex.iter().position(|&d| d != first) {
        None => (Some(first), Some(format!("{}/{}", 2 * first, k as u32 + first)), None),
        Some(y) => (
            None,
            None,
            Some(format!("socle degree {} at {} but {} at {}", first, q.vertex(0), per_vertex[y], q.vertex(y))),
        ),
    };
    Ok(HomogeneityReport { s: q.s(), cut: c.names(q), socle_degrees, n, k, fcy, witness })
}

pub fn permutation_order(perm: &[usize]) -> usize {
    let mut cur: Vec<usize> = perm.to_vec();
    let mut k = 1;
    while cur.iter().enumerate().any(|(i, &p)| i != p) {
        cur = cur.iter().map(|&p| perm[p]).collect();
        k += 1;
    }
    k
}

/// Checks that a quiver belongs to family D (several reports only make sense there).
pub fn require_d(q: &Quiver) -> Result<()> {
    if q.family() != Family::D {
        return Err(Error::WrongFamily);
    }
    Ok(())
}
