//! The quotient QP `(Ã^s, W̃)` built from `(A^s, W_A^s)` and its ω-orbits, and a
//! label-level comparison of quivers with potential.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{
    build_a, fixed_point, is_orbit_rep, omega_map, omega_pow, potential_a_on, step, step_back, Triple,
};
use crate::potential::{Cycle, Potential};
use crate::quiver::{ArrowLabel, Family, Quiver, Vertex};
use crate::scalar::{rational, zeta_pow, Cyc3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowCase {
    /// Between non-fixed vertices; becomes a single `α_{i,j}`.
    Free,
    /// Into the fixed vertex; becomes `β_0, β_1, β_2`.
    IntoFixed,
    /// Out of the fixed vertex; becomes `γ_0, γ_1, γ_2`.
    OutOfFixed,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowOrbit {
    pub members: Vec<usize>,
    /// The member whose target (case `Free`, `IntoFixed`) or source is a representative.
    pub rep: usize,
    pub case: ArrowCase,
}

/// A free-orbit cycle representative `x → y' → z' → x` with its rotation offsets.
#[derive(Clone, Debug, Serialize)]
pub struct FreeCycleRep {
    /// Arrows of `A^s`, starting at the representative vertex `x`.
    pub arrows: [usize; 3],
    pub orbit_size: usize,
    pub j0: u8,
    pub j2: u8,
}

/// A cycle through the fixed vertex, as `X+f_2 → · → X → X+f_2`.
#[derive(Clone, Debug, Serialize)]
pub struct FixedCycleRep {
    pub arrows: [usize; 3],
    /// `p(c)`: 0 for the cycle through `X - f_0`, -1 for the one through `X - f_1`.
    pub p: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitTable {
    pub s: usize,
    pub v1: Vec<Triple>,
    pub v2: Option<Triple>,
    pub arrow_orbits: Vec<ArrowOrbit>,
    pub c1: Vec<FreeCycleRep>,
    pub c2: Vec<FixedCycleRep>,
}

fn vertex_triple(q: &Quiver, v: usize) -> Triple {
    q.vertex(v).coords().expect("A^s vertices are lattice points")
}

/// Orbit data of `A^s` under ω.
pub fn orbit_table(s: usize) -> Result<OrbitTable> {
    let q = build_a(s)?;
    let w = potential_a_on(&q);
    let om = omega_map(&q)?;
    let fixed = fixed_point(s);
    let v1: Vec<Triple> = q.vertices().iter().filter_map(|v| v.coords()).filter(|&x| is_orbit_rep(x)).collect();
    let is_rep = |v: usize| is_orbit_rep(vertex_triple(&q, v));
    let is_fixed = |v: usize| Some(vertex_triple(&q, v)) == fixed;

    let mut seen = vec![false; q.num_arrows()];
    let mut arrow_orbits = Vec::new();
    for a in 0..q.num_arrows() {
        if seen[a] {
            continue;
        }
        let mut members = vec![a];
        seen[a] = true;
        let mut b = om.arrow_map[a];
        while b != a {
            seen[b] = true;
            members.push(b);
            b = om.arrow_map[b];
        }
        members.sort_unstable();
        let arrow = q.arrow(a);
        let (case, pick): (ArrowCase, Box<dyn Fn(usize) -> bool>) = if is_fixed(arrow.target) {
            (ArrowCase::IntoFixed, Box::new(|m| is_rep(q.arrow(m).source)))
        } else if is_fixed(arrow.source) {
            (ArrowCase::OutOfFixed, Box::new(|m| is_rep(q.arrow(m).target)))
        } else {
            (ArrowCase::Free, Box::new(|m| is_rep(q.arrow(m).target)))
        };
        let reps: Vec<usize> = members.iter().copied().filter(|&m| pick(m)).collect();
        let [rep] = reps[..] else {
            return Err(Error::Internal(format!(
                "arrow orbit of {} has {} designated representatives",
                q.arrow_name(a),
                reps.len()
            )));
        };
        arrow_orbits.push(ArrowOrbit { members, rep, case });
    }

    // Cycle orbits.
    let mut seen_cycles = BTreeSet::new();
    let mut c1 = Vec::new();
    let mut c2 = Vec::new();
    for (c, _) in w.terms() {
        if seen_cycles.contains(c) {
            continue;
        }
        let mut orbit = vec![c.clone()];
        let mut img = Cycle::canonical(&c.arrows().iter().map(|&a| om.arrow_map[a]).collect::<Vec<_>>());
        while &img != c {
            orbit.push(img.clone());
            img = Cycle::canonical(&img.arrows().iter().map(|&a| om.arrow_map[a]).collect::<Vec<_>>());
        }
        orbit.sort();
        seen_cycles.extend(orbit.iter().cloned());
        let through_fixed = c.arrows().iter().any(|&a| is_fixed(q.arrow(a).source));
        if through_fixed {
            continue;
        }
        let (arrows, _) = orbit
            .iter()
            .flat_map(|m| m.rotations().map(move |r| (r, m)))
            .find(|(r, _)| is_rep(q.arrow(r[0]).source))
            .ok_or_else(|| Error::Internal("cycle orbit avoids every representative".into()))?;
        let arrows = [arrows[0], arrows[1], arrows[2]];
        let y1 = vertex_triple(&q, q.arrow(arrows[0]).target);
        let z1 = vertex_triple(&q, q.arrow(arrows[1]).target);
        let j0 = (0..3u8).find(|&j| is_orbit_rep(omega_pow(y1, j as i64))).expect("free vertex");
        let j2 = (0..3u8).find(|&j| is_orbit_rep(omega_pow(z1, -(j as i64)))).expect("free vertex");
        c1.push(FreeCycleRep { arrows, orbit_size: orbit.len(), j0, j2 });
    }

    if let Some(x) = fixed {
        let arrow_at = |v: Triple, i: u8| -> Result<usize> {
            let vi = q.vertex_index(&Vertex::Lattice(v))?;
            q.find_arrow(vi, ArrowLabel::alpha(i, 0))
                .ok_or_else(|| Error::Internal(format!("no α_{i} at {}", Vertex::Lattice(v))))
        };
        let after = step(x, 2).expect("X + f_2");
        let minus = arrow_at(after, 1)?;
        let plus = arrow_at(after, 0)?;
        let c_minus = [minus, arrow_at(step_back(x, 0).expect("X - f_0"), 0)?, arrow_at(x, 2)?];
        let c_plus = [plus, arrow_at(step_back(x, 1).expect("X - f_1"), 1)?, arrow_at(x, 2)?];
        for (arrows, p) in [(c_minus, 0), (c_plus, -1)] {
            if w.coeff(&Cycle::canonical(&arrows)).is_zero() {
                return Err(Error::Internal("fixed-vertex cycle missing from W_A".into()));
            }
            c2.push(FixedCycleRep { arrows, p });
        }
        let xi = q.vertex_index(&Vertex::Lattice(x))?;
        let through = w.terms().filter(|(c, _)| c.arrows().iter().any(|&a| q.arrow(a).source == xi)).count();
        if through != 6 {
            return Err(Error::Internal(format!("{through} cycles through the fixed vertex")));
        }
    }

    Ok(OrbitTable { s, v1, v2: fixed, arrow_orbits, c1, c2 })
}

/// `(Ã^s, W̃_A^s)` assembled from the orbit table.
pub fn build_tilde(s: usize) -> Result<(Quiver, Potential)> {
    let qa = build_a(s)?;
    let wa = potential_a_on(&qa);
    let table = orbit_table(s)?;
    let is_rep = |x: Triple| is_orbit_rep(x);

    let mut vertices: Vec<Vertex> = table.v1.iter().map(|&x| Vertex::Lattice(x)).collect();
    if table.v2.is_some() {
        vertices.extend((0..3).map(Vertex::Fixed));
    }

    let mut arrows = Vec::new();
    for orbit in &table.arrow_orbits {
        let rep = qa.arrow(orbit.rep);
        let (i, _) = match rep.label {
            ArrowLabel::Alpha { i, j } => (i, j),
            _ => unreachable!("A^s has only α arrows"),
        };
        let src = vertex_triple(&qa, rep.source);
        let tgt = vertex_triple(&qa, rep.target);
        match orbit.case {
            ArrowCase::Free => {
                let j = (0..3u8).find(|&j| is_rep(omega_pow(src, -(j as i64)))).expect("free source");
                let x = omega_pow(src, -(j as i64));
                arrows.push((Vertex::Lattice(x), Vertex::Lattice(tgt), ArrowLabel::alpha(i, j)));
            }
            ArrowCase::IntoFixed => {
                for k in 0..3 {
                    arrows.push((Vertex::Lattice(src), Vertex::Fixed(k), ArrowLabel::Beta(k)));
                }
            }
            ArrowCase::OutOfFixed => {
                for k in 0..3 {
                    arrows.push((Vertex::Fixed(k), Vertex::Lattice(tgt), ArrowLabel::Gamma(k)));
                }
            }
        }
    }
    let qt = Quiver::new(s, Family::D, vertices, arrows)?;

    let tilde_arrow = |x: Triple, label: ArrowLabel, y: Triple| -> Result<usize> {
        let xi = qt.vertex_index(&Vertex::Lattice(x))?;
        let a = qt
            .find_arrow(xi, label)
            .ok_or_else(|| Error::Internal(format!("Ã^s has no arrow {label} at {}", Vertex::Lattice(x))))?;
        if qt.vertex(qt.arrow(a).target) != Vertex::Lattice(y) {
            return Err(Error::Internal(format!("{label} at {} ends at the wrong vertex", Vertex::Lattice(x))));
        }
        Ok(a)
    };
    let l_of = |a: usize| match qa.arrow(a).label {
        ArrowLabel::Alpha { i, .. } => i as i64,
        _ => unreachable!(),
    };
    let m3 = |v: i64| v.rem_euclid(3) as u8;

    let mut wt = Potential::new();
    for rep in &table.c1 {
        let [a0, a1, a2] = rep.arrows;
        let x = vertex_triple(&qa, qa.arrow(a0).source);
        let y = omega_pow(vertex_triple(&qa, qa.arrow(a0).target), rep.j0 as i64);
        let z = omega_pow(vertex_triple(&qa, qa.arrow(a1).target), -(rep.j2 as i64));
        let (j0, j2) = (rep.j0 as i64, rep.j2 as i64);
        let (i0, i1, i2) = (m3(l_of(a0) - j0), m3(l_of(a1) + j2), m3(l_of(a2)));
        let j1 = m3(-(j0 + j2));
        let cyc = [
            tilde_arrow(x, ArrowLabel::alpha(i0, m3(j0)), y)?,
            tilde_arrow(y, ArrowLabel::alpha(i1, j1), z)?,
            tilde_arrow(z, ArrowLabel::alpha(i2, m3(j2)), x)?,
        ];
        let lambda = wa.coeff(&Cycle::canonical(&rep.arrows));
        let coeff = lambda.scale(&rational(rep.orbit_size as i64, 3));
        wt.add_term(&cyc, &coeff);
    }
    if let Some(xf) = table.v2 {
        let after = step(xf, 2).expect("X + f_2");
        let before = step_back(xf, 0).expect("X - f_0");
        for rep in &table.c2 {
            let first = rep.arrows[0];
            let mid = qa.arrow(first).target;
            let (i, _) = match qa.arrow(first).label {
                ArrowLabel::Alpha { i, j } => (i, j),
                _ => unreachable!(),
            };
            // The representative of `X+f_2 → mid` ends at the representative of mid's orbit.
            let mid_t = vertex_triple(&qa, mid);
            let jm = (0..3u8).find(|&j| is_rep(omega_pow(mid_t, j as i64))).expect("free vertex");
            debug_assert_eq!(omega_pow(mid_t, jm as i64), before);
            let label = ArrowLabel::alpha(m3(i as i64 - jm as i64), jm);
            let head = tilde_arrow(after, label, before)?;
            let lambda = wa.coeff(&Cycle::canonical(&rep.arrows));
            for k in 0..3u8 {
                let b = qt.find_arrow(qt.vertex_index(&Vertex::Lattice(before))?, ArrowLabel::Beta(k)).expect("β");
                let g = qt.find_arrow(qt.vertex_index(&Vertex::Fixed(k))?, ArrowLabel::Gamma(k)).expect("γ");
                wt.add_term(&[head, b, g], &(&lambda * &zeta_pow(-rep.p * k as i64)));
            }
        }
    }
    Ok((qt, wt))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiffKind {
    Vertex,
    Arrow,
    Coefficient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QpDiff {
    pub kind: DiffKind,
    pub expected: String,
    pub found: String,
}

type ArrowKey = (Vertex, ArrowLabel);

fn cycle_key(q: &Quiver, c: &Cycle) -> Vec<ArrowKey> {
    let keys: Vec<ArrowKey> = c.arrows().iter().map(|&a| (q.vertex(q.arrow(a).source), q.arrow(a).label)).collect();
    (0..keys.len()).map(|r| keys[r..].iter().chain(&keys[..r]).copied().collect::<Vec<_>>()).min().unwrap_or_default()
}

fn show_cycle(key: &[ArrowKey]) -> String {
    key.iter().map(|(v, l)| format!("{l}@{v}")).collect::<Vec<_>>().join(" ")
}

/// Compares two QPs by vertex names, `(source, label, target)` arrows and
/// cycle coefficients. `None` means equal; otherwise the first difference,
/// with `expected` taken from `a`.
pub fn qp_equal(a: (&Quiver, &Potential), b: (&Quiver, &Potential)) -> Option<QpDiff> {
    let (qa, wa) = a;
    let (qb, wb) = b;
    let va: BTreeSet<Vertex> = qa.vertices().iter().copied().collect();
    let vb: BTreeSet<Vertex> = qb.vertices().iter().copied().collect();
    if va.len() != vb.len() {
        return Some(QpDiff {
            kind: DiffKind::Vertex,
            expected: format!("{} vertices", va.len()),
            found: format!("{} vertices", vb.len()),
        });
    }
    if let Some(v) = va.symmetric_difference(&vb).next() {
        let (expected, found) =
            if va.contains(v) { (v.to_string(), "absent".into()) } else { ("absent".into(), v.to_string()) };
        return Some(QpDiff { kind: DiffKind::Vertex, expected, found });
    }
    let arrows = |q: &Quiver| -> BTreeSet<(Vertex, ArrowLabel, Vertex)> {
        q.arrows().iter().map(|a| (q.vertex(a.source), a.label, q.vertex(a.target))).collect()
    };
    let (aa, ab) = (arrows(qa), arrows(qb));
    if let Some(x) = aa.symmetric_difference(&ab).next() {
        let show = format!("{}: {} → {}", x.1, x.0, x.2);
        let (expected, found) = if aa.contains(x) { (show, "absent".into()) } else { ("absent".into(), show) };
        return Some(QpDiff { kind: DiffKind::Arrow, expected, found });
    }
    let coeffs = |q: &Quiver, w: &Potential| -> BTreeMap<Vec<ArrowKey>, Cyc3> {
        w.terms().map(|(c, v)| (cycle_key(q, c), v.clone())).collect()
    };
    let (ca, cb) = (coeffs(qa, wa), coeffs(qb, wb));
    let keys: BTreeSet<&Vec<ArrowKey>> = ca.keys().chain(cb.keys()).collect();
    for k in keys {
        let x = ca.get(k).cloned().unwrap_or_else(Cyc3::zero);
        let y = cb.get(k).cloned().unwrap_or_else(Cyc3::zero);
        if x != y {
            return Some(QpDiff {
                kind: DiffKind::Coefficient,
                expected: format!("{}: {x}", show_cycle(k)),
                found: format!("{}: {y}", show_cycle(k)),
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_d, potential_d_on};

    #[test]
    fn orbit_tables() {
        let t = orbit_table(4).unwrap();
        assert_eq!(t.v1, vec![[3, 0, 0], [2, 1, 0], [2, 0, 1]]);
        assert_eq!(t.v2, Some([1, 1, 1]));
        let t = orbit_table(2).unwrap();
        assert_eq!((t.v1, t.v2), (vec![[1, 0, 0]], None));
        let t = orbit_table(5).unwrap();
        assert_eq!((t.v1.len(), t.v2), (5, None));
    }

    #[test]
    fn orbit_sizes_add_up() {
        for s in 2..=8 {
            let t = orbit_table(s).unwrap();
            let q = build_a(s).unwrap();
            assert_eq!(t.arrow_orbits.iter().map(|o| o.members.len()).sum::<usize>(), q.num_arrows());
            let fixed = usize::from(t.v2.is_some());
            assert_eq!(3 * t.v1.len() + 3 * fixed, q.num_vertices() + 2 * fixed);
        }
    }

    #[test]
    fn tilde_equals_d() {
        for s in 2..=7 {
            let (qt, wt) = build_tilde(s).unwrap();
            let qd = build_d(s).unwrap();
            let wd = potential_d_on(&qd);
            assert_eq!(qp_equal((&qt, &wt), (&qd, &wd)), None, "s = {s}");
        }
    }

    #[test]
    fn tilde_coefficients_at_s4() {
        let (q, w) = build_tilde(4).unwrap();
        let x = |v: Vertex| q.vertex_index(&v).unwrap();
        let a = |v: Vertex, l: ArrowLabel| q.find_arrow(x(v), l).unwrap();
        let v210 = Vertex::lattice(2, 1, 0);
        let v201 = Vertex::lattice(2, 0, 1);
        let v300 = Vertex::lattice(3, 0, 0);
        let free =
            [a(v300, ArrowLabel::alpha(0, 0)), a(v210, ArrowLabel::alpha(1, 0)), a(v201, ArrowLabel::alpha(2, 0))];
        assert_eq!(w.coeff(&Cycle::canonical(&free)), Cyc3::from(1));
        for k in 0..3 {
            let b = a(v201, ArrowLabel::Beta(k));
            let g = a(Vertex::Fixed(k), ArrowLabel::Gamma(k));
            assert_eq!(w.coeff(&Cycle::canonical(&[a(v210, ArrowLabel::alpha(1, 0)), b, g])), Cyc3::from(-1));
            assert_eq!(w.coeff(&Cycle::canonical(&[a(v210, ArrowLabel::alpha(2, 1)), b, g])), zeta_pow(k as i64));
        }
    }

    #[test]
    fn qp_equal_reports_vertex_count() {
        let qa = build_a(2).unwrap();
        let wa = potential_a_on(&qa);
        let qd = build_d(2).unwrap();
        let wd = potential_d_on(&qd);
        let diff = qp_equal((&qa, &wa), (&qd, &wd)).unwrap();
        assert_eq!(diff.kind, DiffKind::Vertex);
        assert_eq!((diff.expected.as_str(), diff.found.as_str()), ("3 vertices", "1 vertices"));
    }

    #[test]
    fn qp_equal_reports_coefficients() {
        let qd = build_d(4).unwrap();
        let wd = potential_d_on(&qd);
        let scaled = wd.rescale(|_| Cyc3::from(-1));
        let diff = qp_equal((&qd, &wd), (&qd, &scaled)).unwrap();
        assert_eq!(diff.kind, DiffKind::Coefficient);
    }
}
