//! The type-A and type-D quivers with potential, the rotation ω and the sign twist.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::potential::{three_cycles, Cycle, Potential};
use crate::quiver::{ArrowLabel, Family, Path, Quiver, Vertex};
use crate::scalar::{rational, zeta_pow, Cyc3};

/// Steps `f_0 = (-1,1,0)`, `f_1 = (0,-1,1)`, `f_2 = (1,0,-1)`.
pub const STEPS: [[i64; 3]; 3] = [[-1, 1, 0], [0, -1, 1], [1, 0, -1]];

pub type Triple = [u32; 3];

/// `ω(x0, x1, x2) = (x1, x2, x0)`.
pub fn omega(x: Triple) -> Triple {
    [x[1], x[2], x[0]]
}

pub fn omega_pow(x: Triple, j: i64) -> Triple {
    (0..j.rem_euclid(3)).fold(x, |y, _| omega(y))
}

/// `x + f_i`, if it stays in the positive octant.
pub fn step(x: Triple, i: usize) -> Option<Triple> {
    let mut out = [0u32; 3];
    for c in 0..3 {
        let v = x[c] as i64 + STEPS[i % 3][c];
        if v < 0 {
            return None;
        }
        out[c] = v as u32;
    }
    Some(out)
}

/// `x - f_i`.
pub fn step_back(x: Triple, i: usize) -> Option<Triple> {
    let mut out = [0u32; 3];
    for c in 0..3 {
        let v = x[c] as i64 - STEPS[i % 3][c];
        if v < 0 {
            return None;
        }
        out[c] = v as u32;
    }
    Some(out)
}

/// All natural triples summing to `s - 1`, in decreasing lexicographic order.
pub fn lattice_points(s: usize) -> Vec<Triple> {
    let n = (s - 1) as u32;
    let mut out = Vec::new();
    for a in (0..=n).rev() {
        for b in (0..=n - a).rev() {
            out.push([a, b, n - a - b]);
        }
    }
    out
}

/// Strict lexicographic winner of its rotation orbit.
pub fn is_orbit_rep(x: Triple) -> bool {
    x > omega(x) && x > omega(omega(x))
}

fn check_s(s: usize) -> Result<()> {
    if s < 2 {
        Err(Error::InvalidParameter(format!("s must be at least 2, got {s}")))
    } else {
        Ok(())
    }
}

/// `(t, t, t)` when `s = 3t + 1`.
pub fn fixed_point(s: usize) -> Option<Triple> {
    (s % 3 == 1).then(|| {
        let t = ((s - 1) / 3) as u32;
        [t, t, t]
    })
}

pub fn build_a(s: usize) -> Result<Quiver> {
    check_s(s)?;
    let pts = lattice_points(s);
    let mut arrows = Vec::new();
    for &x in &pts {
        for i in 0..3 {
            if let Some(y) = step(x, i) {
                arrows.push((Vertex::Lattice(x), Vertex::Lattice(y), ArrowLabel::alpha(i as u8, 0)));
            }
        }
    }
    Quiver::new(s, Family::A, pts.into_iter().map(Vertex::Lattice).collect(), arrows)
}

pub fn build_d(s: usize) -> Result<Quiver> {
    check_s(s)?;
    let reps: Vec<Triple> = lattice_points(s).into_iter().filter(|&x| is_orbit_rep(x)).collect();
    let mut arrows = Vec::new();
    for &x in &reps {
        for i in 0..3 {
            for j in 0..3 {
                let Some(y) = step(omega_pow(x, j), i as usize) else { continue };
                if is_orbit_rep(y) {
                    arrows.push((Vertex::Lattice(x), Vertex::Lattice(y), ArrowLabel::alpha(i, j as u8)));
                }
            }
        }
    }
    let mut vertices: Vec<Vertex> = reps.into_iter().map(Vertex::Lattice).collect();
    if let Some(x) = fixed_point(s) {
        let into = Vertex::Lattice(step_back(x, 0).expect("t >= 1"));
        let out = Vertex::Lattice(step(x, 2).expect("t >= 1"));
        vertices.extend((0..3).map(Vertex::Fixed));
        for k in 0..3 {
            arrows.push((into, Vertex::Fixed(k), ArrowLabel::Beta(k)));
        }
        for k in 0..3 {
            arrows.push((Vertex::Fixed(k), out, ArrowLabel::Gamma(k)));
        }
    }
    Quiver::new(s, Family::D, vertices, arrows)
}

/// `(a, b, c) ∼ base` up to cyclic shift.
fn cyclically_equal(t: [u8; 3], base: [u8; 3]) -> bool {
    (0..3).any(|r| [t[r], t[(r + 1) % 3], t[(r + 2) % 3]] == base)
}

fn orientation_sign(t: [u8; 3]) -> i64 {
    if cyclically_equal(t, [0, 1, 2]) {
        1
    } else if cyclically_equal(t, [0, 2, 1]) {
        -1
    } else {
        0
    }
}

fn alpha_indices(label: ArrowLabel) -> Option<(u8, u8)> {
    match label {
        ArrowLabel::Alpha { i, j } => Some((i, j)),
        _ => None,
    }
}

/// `λ_A` of a 3-cycle of `A^s`.
pub fn lambda_a(q: &Quiver, arrows: &[usize]) -> Cyc3 {
    let idx: Option<Vec<u8>> = arrows.iter().map(|&a| alpha_indices(q.arrow(a).label).map(|(i, _)| i)).collect();
    match idx.as_deref() {
        Some(&[a, b, c]) => Cyc3::from(orientation_sign([a, b, c])),
        _ => Cyc3::zero(),
    }
}

/// `λ_D` of a 3-cycle of `D^s`, read in the rotation given (starting at its first arrow).
pub fn lambda_d(q: &Quiver, arrows: &[usize]) -> Cyc3 {
    let labels: Vec<ArrowLabel> = arrows.iter().map(|&a| q.arrow(a).label).collect();
    if labels.len() != 3 {
        return Cyc3::zero();
    }
    if let Some(k) = labels.iter().find_map(|l| match l {
        ArrowLabel::Beta(k) => Some(*k),
        _ => None,
    }) {
        return match labels.iter().find_map(|&l| alpha_indices(l)) {
            Some((1, 0)) => Cyc3::from(-1),
            Some((2, 1)) => zeta_pow(k as i64),
            _ => Cyc3::zero(),
        };
    }
    let Some(ij): Option<Vec<(u8, u8)>> = labels.iter().map(|&l| alpha_indices(l)).collect() else {
        return Cyc3::zero();
    };
    if arrows[0] == arrows[1] && arrows[1] == arrows[2] {
        let (i, j) = ij[0];
        let t = [(i + j) % 3, (i + 3 - j) % 3, i];
        return Cyc3::from_rational(rational(orientation_sign(t), 3));
    }
    if arrows[0] == arrows[1] || arrows[1] == arrows[2] || arrows[0] == arrows[2] {
        return Cyc3::zero();
    }
    let [(i0, j0), (i1, j1), (i2, j2)] = [ij[0], ij[1], ij[2]];
    if (j0 + j1 + j2) % 3 != 0 {
        return Cyc3::zero();
    }
    let t = [(i0 + j0) % 3, (i1 + 3 - j2) % 3, i2];
    Cyc3::from(orientation_sign(t))
}

pub fn potential_a(s: usize) -> Result<Potential> {
    let q = build_a(s)?;
    Ok(potential_a_on(&q))
}

pub fn potential_a_on(q: &Quiver) -> Potential {
    let mut w = Potential::new();
    for c in three_cycles(q) {
        w.add_term(c.arrows(), &lambda_a(q, c.arrows()));
    }
    w
}

pub fn potential_d(s: usize) -> Result<Potential> {
    let q = build_d(s)?;
    Ok(potential_d_on(&q))
}

/// `λ_D` evaluated on each canonical representative.
pub fn potential_d_on(q: &Quiver) -> Potential {
    let mut w = Potential::new();
    for c in three_cycles(q) {
        w.add_term(c.arrows(), &lambda_d(q, c.arrows()));
    }
    w
}

/// The path spanning `Soc(e_x Π_D^s)` at `x = (3t, 0, 0)`, `s = 3t + 1`:
/// `α_0^a α_{2,1} α_2^b` with `a = b = (3t-1)/2` for odd `t`, and
/// `a = 3t/2`, `b = (3t-2)/2` for even `t`.
pub fn predicted_socle_path(q: &Quiver) -> Result<Path> {
    let s = q.s();
    if q.family() != Family::D || s % 3 != 1 {
        return Err(Error::InvalidParameter(format!("needs D^s with s ≡ 1 mod 3, got {}^{s}", q.family())));
    }
    let t = (s - 1) / 3;
    let (a, b) = if t % 2 == 1 { ((3 * t - 1) / 2, (3 * t - 1) / 2) } else { (3 * t / 2, (3 * t - 2) / 2) };
    let mut labels = vec![ArrowLabel::alpha(0, 0); a];
    labels.push(ArrowLabel::alpha(2, 1));
    labels.extend(std::iter::repeat_n(ArrowLabel::alpha(2, 0), b));
    q.path_by_labels(&Vertex::lattice(3 * t as u32, 0, 0), &labels)
}

/// A cycle whose `λ_D` value depends on the chosen starting arrow.
#[derive(Clone, Debug)]
pub struct RotationDiscrepancy {
    pub cycle: Cycle,
    pub values: Vec<Cyc3>,
}

/// Evaluates `λ_D` on every rotation of every 3-cycle of `D^s`.
pub fn lambda_d_rotation_discrepancies(s: usize) -> Result<Vec<RotationDiscrepancy>> {
    let q = build_d(s)?;
    let mut out = Vec::new();
    for c in three_cycles(&q) {
        let values: Vec<Cyc3> = c.rotations().map(|r| lambda_d(&q, &r)).collect();
        if values.iter().any(|v| v != &values[0]) {
            out.push(RotationDiscrepancy { cycle: c, values });
        }
    }
    Ok(out)
}

/// A quiver automorphism given by vertex and arrow permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub vertex_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl Automorphism {
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            vertex_map: self.vertex_map.iter().map(|&v| other.vertex_map[v]).collect(),
            arrow_map: self.arrow_map.iter().map(|&a| other.arrow_map[a]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &v)| i == v)
            && self.arrow_map.iter().enumerate().all(|(i, &a)| i == a)
    }

    pub fn apply_potential(&self, w: &Potential) -> Potential {
        w.map_arrows(|a| self.arrow_map[a])
    }
}

/// ω on `A^s`: `x ↦ ω(x)` and `e_x α_i ↦ e_{ω(x)} α_{i-1}`.
pub fn omega_map(q: &Quiver) -> Result<Automorphism> {
    if q.family() != Family::A {
        return Err(Error::WrongFamily);
    }
    let vertex_map = q
        .vertices()
        .iter()
        .map(|v| {
            let x = v.coords().expect("type-A vertices are lattice points");
            q.vertex_index(&Vertex::Lattice(omega(x)))
        })
        .collect::<Result<Vec<_>>>()?;
    let arrow_map = q
        .arrows()
        .iter()
        .map(|a| {
            let (i, _) = alpha_indices(a.label).expect("type-A arrows are alphas");
            let label = ArrowLabel::alpha((i + 2) % 3, 0);
            q.find_arrow(vertex_map[a.source], label)
                .ok_or_else(|| Error::Internal(format!("ω image of {} missing", q.arrow_name(a.id))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Automorphism { vertex_map, arrow_map })
}

/// `par_i(x) = (-1)^(s - x_{i+1})`.
pub fn parity_factor(s: usize, x: Triple, i: usize) -> i64 {
    if (s as i64 - x[(i + 1) % 3] as i64).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Rescales `W_A^s` by `e_x α_i ↦ par_i(x) e_x α_i` and compares with the
/// all-ones potential on the 3-cycles of `A^s`.
pub fn sign_twist_check(s: usize) -> Result<bool> {
    let q = build_a(s)?;
    let w = potential_a_on(&q);
    let twisted = w.rescale(|a| {
        let arrow = q.arrow(a);
        let (i, _) = alpha_indices(arrow.label).expect("alpha");
        let x = q.vertex(arrow.source).coords().expect("lattice");
        Cyc3::from(parity_factor(s, x, i as usize))
    });
    let mut all_ones = Potential::new();
    for c in three_cycles(&q) {
        all_ones.add_term(c.arrows(), &Cyc3::one());
    }
    Ok(twisted == all_ones)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::cyclic_derivative;

    fn count_signs(w: &Potential) -> (usize, usize) {
        let plus = w.terms().filter(|(_, c)| c.is_one()).count();
        let minus = w.terms().filter(|(_, c)| **c == Cyc3::from(-1)).count();
        (plus, minus)
    }

    fn arrow(q: &Quiver, name: &str) -> usize {
        q.parse_arrow(name).unwrap()
    }

    /// Brute-force count of triples summing to `s - 1` with both endpoints of each
    /// step in the octant.
    fn brute_counts(s: usize) -> (usize, usize) {
        let n = s as i64 - 1;
        let mut v = 0;
        let mut a = 0;
        for x0 in 0..=n {
            for x1 in 0..=n {
                let x2 = n - x0 - x1;
                if x2 < 0 {
                    continue;
                }
                v += 1;
                for f in STEPS {
                    if x0 + f[0] >= 0 && x1 + f[1] >= 0 && x2 + f[2] >= 0 {
                        a += 1;
                    }
                }
            }
        }
        (v, a)
    }

    #[test]
    fn type_a_sizes() {
        for (s, v, a) in [(2, 3, 3), (3, 6, 9), (4, 10, 18)] {
            let q = build_a(s).unwrap();
            assert_eq!((q.num_vertices(), q.num_arrows()), (v, a), "s = {s}");
            assert_eq!(brute_counts(s), (v, a));
        }
        assert!(matches!(build_a(1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn type_a_potential_signs() {
        assert_eq!(count_signs(&potential_a(2).unwrap()), (1, 0));
        assert_eq!(count_signs(&potential_a(3).unwrap()), (3, 1));
        assert_eq!(count_signs(&potential_a(4).unwrap()), (6, 3));
    }

    #[test]
    fn type_d_small_quivers() {
        let q = build_d(2).unwrap();
        assert_eq!(q.vertices(), &[Vertex::lattice(1, 0, 0)]);
        assert_eq!(q.num_arrows(), 1);
        assert_eq!(q.arrow(0).label, ArrowLabel::alpha(2, 1));
        assert_eq!(q.arrow(0).source, q.arrow(0).target);

        let q = build_d(3).unwrap();
        assert_eq!(q.num_vertices(), 2);
        let labels: Vec<String> = q.arrows().iter().map(|a| q.arrow_name(a.id)).collect();
        assert_eq!(labels, ["a[0,0]@2.0.0", "a[2,1]@1.1.0", "a[2,2]@1.1.0"]);

        let q = build_d(4).unwrap();
        let names: Vec<String> = q.vertices().iter().map(|v| v.to_string()).collect();
        assert_eq!(names, ["3.0.0", "2.1.0", "2.0.1", "X0", "X1", "X2"]);
        let labels: Vec<String> = q.arrows().iter().map(|a| a.label.to_string()).collect();
        assert_eq!(labels, ["α_0", "α_1", "α_{2,1}", "α_2", "β_0", "β_1", "β_2", "γ_0", "γ_1", "γ_2"]);
        assert!(matches!(build_d(1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn d4_potential_matches_hand_expansion() {
        let q = build_d(4).unwrap();
        let w = potential_d_on(&q);
        assert_eq!(w.len(), 7);
        let a0 = arrow(&q, "a[0,0]@3.0.0");
        let a1 = arrow(&q, "a[1,0]@2.1.0");
        let a21 = arrow(&q, "a[2,1]@2.1.0");
        let a2 = arrow(&q, "a[2,0]@2.0.1");
        assert!(w.coeff(&Cycle::canonical(&[a0, a1, a2])).is_one());
        assert!(w.coeff(&Cycle::canonical(&[a0, a21, a2])).is_zero());
        for k in 0..3 {
            let b = arrow(&q, &format!("b[{k}]"));
            let g = arrow(&q, &format!("g[{k}]"));
            assert_eq!(w.coeff(&Cycle::canonical(&[a1, b, g])), Cyc3::from(-1));
            assert_eq!(w.coeff(&Cycle::canonical(&[a21, b, g])), zeta_pow(k));
        }
    }

    #[test]
    fn d5_potential_matches_hand_expansion() {
        let q = build_d(5).unwrap();
        let w = potential_d_on(&q);
        let c = |names: [&str; 3]| Cycle::canonical(&names.map(|n| arrow(&q, n)));
        let expected = [
            (c(["a[0,0]@4.0.0", "a[1,0]@3.1.0", "a[2,0]@3.0.1"]), Cyc3::from(1)),
            (c(["a[0,0]@3.1.0", "a[1,0]@2.2.0", "a[2,0]@2.1.1"]), Cyc3::from(1)),
            (c(["a[0,0]@3.0.1", "a[2,0]@2.1.1", "a[1,0]@3.1.0"]), Cyc3::from(-1)),
            (c(["a[0,0]@3.0.1", "a[2,2]@2.1.1", "a[2,1]@2.2.0"]), Cyc3::from(1)),
            (c(["a[2,1]@2.1.1", "a[2,2]@2.1.1", "a[1,0]@2.2.0"]), Cyc3::from(-1)),
            (c(["a[2,1]@2.1.1", "a[2,1]@2.1.1", "a[2,1]@2.1.1"]), Cyc3::from_rational(rational(1, 3))),
        ];
        assert_eq!(w.len(), expected.len());
        for (cycle, coeff) in expected {
            assert_eq!(w.coeff(&cycle), coeff);
        }
    }

    #[test]
    fn d2_potential_is_one_third_loop_cube() {
        let w = potential_d(2).unwrap();
        assert_eq!(w.len(), 1);
        let (c, v) = w.terms().next().unwrap();
        assert_eq!(c.arrows(), &[0, 0, 0]);
        assert_eq!(*v, Cyc3::from_rational(rational(1, 3)));
    }

    #[test]
    fn lambda_d_is_rotation_consistent() {
        for s in 2..=10 {
            let bad = lambda_d_rotation_discrepancies(s).unwrap();
            assert!(bad.is_empty(), "s = {s}: {bad:?}");
        }
    }

    #[test]
    fn d_vertex_count_formula() {
        for s in 2..=12 {
            let a = build_a(s).unwrap().num_vertices();
            let d = build_d(s).unwrap().num_vertices();
            assert_eq!(d, a.div_ceil(3) + if s % 3 == 1 { 2 } else { 0 }, "s = {s}");
        }
    }

    #[test]
    fn every_arrow_of_d_lies_on_a_potential_cycle_when_s_is_one_mod_three() {
        for s in [4, 7, 10] {
            let q = build_d(s).unwrap();
            let w = potential_d_on(&q);
            for a in q.arrows() {
                assert!(w.terms().any(|(c, _)| c.multiplicity(a.id) > 0), "s = {s}: {}", q.arrow_name(a.id));
            }
        }
    }

    #[test]
    fn omega_examples_and_order_three() {
        let q = build_a(4).unwrap();
        let om = omega_map(&q).unwrap();
        let v = |t: [u32; 3]| q.vertex_index(&Vertex::Lattice(t)).unwrap();
        assert_eq!(om.vertex_map[v([3, 0, 0])], v([0, 0, 3]));
        assert_eq!(om.vertex_map[v([1, 1, 1])], v([1, 1, 1]));
        let a = arrow(&q, "a[0,0]@3.0.0");
        assert_eq!(q.arrow_name(om.arrow_map[a]), "a[2,0]@0.0.3");
        for s in 2..=8 {
            let q = build_a(s).unwrap();
            let om = omega_map(&q).unwrap();
            assert!(om.compose(&om).compose(&om).is_identity());
            assert!(!om.is_identity());
            let w = potential_a_on(&q);
            assert_eq!(om.apply_potential(&w), w, "s = {s}");
        }
        assert!(matches!(omega_map(&build_d(4).unwrap()), Err(Error::WrongFamily)));
    }

    #[test]
    fn sign_twist() {
        for s in 2..=8 {
            assert!(sign_twist_check(s).unwrap(), "s = {s}");
        }
        // clockwise cycle at (1,1,1) in A^4 has parity product -1
        let s = 4;
        assert_eq!(
            parity_factor(s, [1, 1, 1], 0) * parity_factor(s, [0, 2, 1], 2) * parity_factor(s, [1, 2, 0], 1),
            -1
        );
        assert_eq!(parity_factor(2, [1, 0, 0], 0) * parity_factor(2, [0, 1, 0], 1) * parity_factor(2, [0, 0, 1], 2), 1);
    }

    #[test]
    fn derivatives_of_d4() {
        let q = build_d(4).unwrap();
        let w = potential_d_on(&q);
        let a0 = arrow(&q, "a[0,0]@3.0.0");
        let a1 = arrow(&q, "a[1,0]@2.1.0");
        let a21 = arrow(&q, "a[2,1]@2.1.0");
        let a2 = arrow(&q, "a[2,0]@2.0.1");
        let d = cyclic_derivative(&q, &w, a1).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.coeff(&Path::new(&q, q.arrow(a2).source, vec![a2, a0]).unwrap()).is_one());
        let d21 = cyclic_derivative(&q, &w, a21).unwrap();
        assert_eq!(d21.len(), 3);
        for k in 0..3 {
            let b = arrow(&q, &format!("b[{k}]"));
            let g = arrow(&q, &format!("g[{k}]"));
            let bg = Path::new(&q, q.arrow(b).source, vec![b, g]).unwrap();
            assert_eq!(d.coeff(&bg), Cyc3::from(-1));
            assert_eq!(d21.coeff(&bg), zeta_pow(k as i64));
        }
        assert!(cyclic_derivative(&q, &w, 99).is_err());

        let q2 = build_d(2).unwrap();
        let d = cyclic_derivative(&q2, &potential_d_on(&q2), 0).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d.coeff(&Path::new(&q2, 0, vec![0, 0]).unwrap()).is_one());
    }

    #[test]
    fn derivative_reassembles_cycles() {
        // Σ_a a·∂_a W recovers each distinct-arrow cycle once per rotation.
        let q = build_a(4).unwrap();
        let w = potential_a_on(&q);
        let mut rebuilt = Potential::new();
        for a in q.arrows() {
            for (p, c) in cyclic_derivative(&q, &w, a.id).unwrap().terms() {
                let mut arrows = vec![a.id];
                arrows.extend(&p.arrows);
                rebuilt.add_term(&arrows, c);
            }
        }
        assert_eq!(rebuilt, w.add(&w).add(&w));
    }
}
