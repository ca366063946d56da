//! Acceptance suite. Run with `cargo test -p qpforge --test acceptance`.
//!
//! Each check has a wall-clock budget; exceeding it is a failure even when the
//! answer is right.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use qpforge::cuts::{cube_loop_witness, enumerate_cuts, expected_cube_loop, has_enough_cuts, homogeneity_report, Cut};
use qpforge::families::{build_a, build_d, omega_map, potential_a_on, potential_d_on, sign_twist_check};
use qpforge::higher_ar::{ar_quiver, module_window, tau2_minus_dims, truncate, ArRule, DEFAULT_GLDIM_CAP};
use qpforge::jacobian::{default_degree_cap, DEFAULT_SEED};
use qpforge::scalar::zeta_pow;
use qpforge::skew::{build_tilde, qp_equal};
use qpforge::{compute_algebra, ArrowLabel, Cyc3, JacobianAlgebra, Path, PathSum, Quiver, SymmetryVerdict, Vertex};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn pi_d(s: usize) -> JacobianAlgebra {
    let q = build_d(s).unwrap();
    let w = potential_d_on(&q);
    compute_algebra(&q, &w, default_degree_cap(s)).unwrap()
}

fn pi_a(s: usize) -> JacobianAlgebra {
    let q = build_a(s).unwrap();
    let w = potential_a_on(&q);
    compute_algebra(&q, &w, default_degree_cap(s)).unwrap()
}

fn v(name: &str) -> Vertex {
    name.parse().unwrap()
}

fn path(q: &Quiver, names: &[&str]) -> Path {
    let arrows = names.iter().map(|n| q.parse_arrow(n).unwrap()).collect();
    Path::from_arrows(q, arrows).unwrap()
}

fn standard_cut(q: &Quiver) -> Cut {
    Cut::parse(q, "a[1,0]@2.1.0,a[2,1]@2.1.0").unwrap()
}

type Layer<'a> = Vec<(&'a str, usize)>;

/// Dimension vector over the vertices of `q`, from `(vertex, multiplicity)` pairs.
fn dv(q: &Quiver, entries: &[(&str, usize)]) -> Vec<usize> {
    let mut out = vec![0; q.num_vertices()];
    for (name, d) in entries {
        out[q.vertex_index(&v(name)).unwrap()] += d;
    }
    out
}

fn dimension_d4() -> Outcome {
    let j = pi_d(4);
    let q = j.quiver();
    ensure!(j.dimension() == 32, "dim {}", j.dimension());
    let dims = j.projective_dimensions();
    let got: Vec<usize> =
        ["3.0.0", "2.1.0", "2.0.1", "X0", "X1", "X2"].iter().map(|x| dims[q.vertex_index(&v(x)).unwrap()]).collect();
    ensure!(got == [4, 8, 8, 4, 4, 4], "projectives {got:?}");
    Ok(format!("dim 32, projectives {got:?}"))
}

fn derived_relations_d4() -> Outcome {
    let j = pi_d(4);
    let q = j.quiver();
    let (a1, a21) = ("a[1,0]@2.1.0", "a[2,1]@2.1.0");
    let b = |k: usize| format!("b[{k}]");
    let g = |k: usize| format!("g[{k}]");
    let one = Cyc3::one();
    let mut checked = 0;
    let mut vanish = |terms: Vec<(Vec<String>, Cyc3)>| -> Result<(), String> {
        let mut e = PathSum::new();
        for (names, c) in &terms {
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            e.add_term(path(q, &names), c);
        }
        let nf = j.normal_form(&e).map_err(|e| e.to_string())?;
        checked += 1;
        ensure!(nf.is_zero(), "{} does not vanish", e.display(q));
        Ok(())
    };
    // α_1β_0γ_0 = ζ²α_1β_1γ_1 = ζα_1β_2γ_2, untwisted for α_(2,1), and the same with α on the right.
    let twist = [one.clone(), zeta_pow(2), zeta_pow(1)];
    for (k, tw) in twist.iter().enumerate().skip(1) {
        vanish(vec![(vec![a1.into(), b(0), g(0)], one.clone()), (vec![a1.into(), b(k), g(k)], -tw.clone())])?;
        vanish(vec![(vec![a21.into(), b(0), g(0)], one.clone()), (vec![a21.into(), b(k), g(k)], -one.clone())])?;
        vanish(vec![(vec![b(0), g(0), a1.into()], one.clone()), (vec![b(k), g(k), a1.into()], -tw.clone())])?;
        vanish(vec![(vec![b(0), g(0), a21.into()], one.clone()), (vec![b(k), g(k), a21.into()], -one.clone())])?;
    }
    for i in 0..3 {
        for jj in 0..3 {
            if i != jj {
                vanish(vec![(vec![g(i), a1.into(), b(jj)], one.clone())])?;
                vanish(vec![(vec![g(i), a21.into(), b(jj)], one.clone())])?;
            }
        }
    }
    Ok(format!("{checked} relations reduce to zero"))
}

fn skew_equality() -> Outcome {
    for s in 2..=10 {
        let (qt, wt) = build_tilde(s).map_err(|e| e.to_string())?;
        let q = build_d(s).unwrap();
        let w = potential_d_on(&q);
        if let Some(d) = qp_equal((&qt, &wt), (&q, &w)) {
            return Err(format!("s = {s}: {d:?}"));
        }
    }
    Ok("equal for s = 2..10".into())
}

fn zero_cuts() -> Outcome {
    let mut seen = Vec::new();
    for s in [2, 3, 5, 6, 8, 9] {
        let q = build_d(s).unwrap();
        let w = potential_d_on(&q);
        let cuts = enumerate_cuts(&q, &w);
        ensure!(cuts.is_empty(), "s = {s}: {} cuts", cuts.len());
        let lw = cube_loop_witness(&q, &w).ok_or(format!("s = {s}: no witness loop"))?;
        ensure!(!lw.coeff.is_zero(), "s = {s}: zero cube coefficient");
        if let Some((vx, label)) = expected_cube_loop(s) {
            ensure!(lw.vertex == vx && lw.label == label, "s = {s}: witness {} is not {label}@{vx}", lw.arrow);
        }
        seen.push(format!("{s}:{}", lw.arrow));
    }
    Ok(format!("witness loops {}", seen.join(" ")))
}

/// All arrow subsets meeting every potential term exactly once, counted with multiplicity.
fn brute_force_cuts(q: &Quiver, w: &qpforge::Potential) -> BTreeSet<Vec<usize>> {
    let n = q.num_arrows();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << n) {
        let ok = w.terms().all(|(c, _)| c.arrows().iter().filter(|&&a| mask >> a & 1 == 1).count() == 1);
        if ok {
            out.insert((0..n).filter(|&a| mask >> a & 1 == 1).collect());
        }
    }
    out
}

fn cuts_d4() -> Outcome {
    let q = build_d(4).unwrap();
    let w = potential_d_on(&q);
    let cuts = enumerate_cuts(&q, &w);
    ensure!(cuts.len() == 17, "{} cuts", cuts.len());
    let found: BTreeSet<Vec<usize>> = cuts.iter().map(|c| c.arrows().to_vec()).collect();
    ensure!(found == brute_force_cuts(&q, &w), "enumeration disagrees with the 2^10 oracle");
    ensure!(found.contains(standard_cut(&q).arrows()), "{{α_1, α_(2,1)}} missing");
    let covered: BTreeSet<usize> = found.iter().flatten().copied().collect();
    ensure!(covered.len() == q.num_arrows() && has_enough_cuts(&q, &w), "union covers {} arrows", covered.len());
    Ok("17 cuts, oracle agrees, all 10 arrows covered".into())
}

fn symmetric_d() -> Outcome {
    for s in 2..=8 {
        let j = pi_d(s);
        let perm = j.nakayama_permutation().map_err(|e| format!("s = {s}: {e}"))?;
        ensure!(perm.iter().enumerate().all(|(i, &p)| i == p), "s = {s}: permutation {perm:?}");
        let verdict = j.is_symmetric(4, DEFAULT_SEED);
        ensure!(verdict == SymmetryVerdict::Symmetric, "s = {s}: {verdict:?}");
    }
    Ok("identity and symmetric for s = 2..8".into())
}

fn nakayama_a() -> Outcome {
    let mut which = Vec::new();
    for s in 2..=6 {
        let j = pi_a(s);
        let perm = j.nakayama_permutation().map_err(|e| format!("s = {s}: {e}"))?;
        let om = omega_map(j.quiver()).unwrap().vertex_map;
        let om2: Vec<usize> = om.iter().map(|&x| om[x]).collect();
        let k = if perm == om {
            1
        } else if perm == om2 {
            2
        } else {
            return Err(format!("s = {s}: {perm:?} is neither ω nor ω²"));
        };
        which.push(k);
    }
    ensure!(which.iter().all(|&k| k == which[0]), "direction changes with s: {which:?}");
    Ok(format!("ω^{} for s = 2..6", which[0]))
}

fn socle_d7() -> Outcome {
    let j = pi_d(7);
    let q = j.quiver();
    let x = v("6.0.0");
    let soc = j.socle(&x).map_err(|e| e.to_string())?;
    ensure!(soc.len() == 1, "socle dimension {}", soc.len());
    let mut labels = vec![ArrowLabel::alpha(0, 0); 3];
    labels.push(ArrowLabel::alpha(2, 1));
    labels.extend([ArrowLabel::alpha(2, 0); 2]);
    let p = q.path_by_labels(&x, &labels).map_err(|e| e.to_string())?;
    let e = j.path_element(&p).map_err(|e| e.to_string())?;
    ensure!(!e.is_zero(), "{} is zero", p.display(q));
    let (i0, c0) = soc[0].terms().next().unwrap();
    let ratio = e.coeff(i0).checked_div(c0).unwrap();
    ensure!(e == soc[0].scaled(&ratio), "{} is not in the socle", p.display(q));
    Ok(format!("socle spanned by {}", p.display(q)))
}

fn homogeneity() -> Outcome {
    let mut counts = Vec::new();
    for (s, t, fcy, min) in [(4, 1, "2/2", 17), (7, 2, "4/3", 3)] {
        let j = pi_d(s);
        let cuts = enumerate_cuts(j.quiver(), j.potential());
        ensure!(cuts.len() >= min, "s = {s}: only {} cuts", cuts.len());
        for c in &cuts {
            let r = homogeneity_report(&j, c).map_err(|e| format!("s = {s}: {e}"))?;
            ensure!(r.socle_degrees.values().all(|&d| d == t), "s = {s}: degrees {:?}", r.socle_degrees);
            ensure!(r.fcy.as_deref() == Some(fcy), "s = {s}: fcy {:?}", r.fcy);
        }
        counts.push(format!("D{s}: {} cuts give {fcy}", cuts.len()));
    }
    Ok(counts.join(", "))
}

fn truncation_d4() -> Outcome {
    let j = pi_d(4);
    let q = j.quiver();
    let c = standard_cut(q);
    let l = truncate(&j, &c).map_err(|e| e.to_string())?;
    ensure!(l.dimension() == 16, "dim Λ = {}", l.dimension());
    // Relabelled vertices: 1 = 300, 2 = 210, 3 = 201, 4_k = X_k.
    let series: [(&str, Vec<Layer>); 6] = [
        ("3.0.0", vec![vec![("3.0.0", 1)], vec![("2.1.0", 1)]]),
        ("2.1.0", vec![vec![("2.1.0", 1)]]),
        ("2.0.1", vec![vec![("2.0.1", 1)], vec![("3.0.0", 1), ("X0", 1), ("X1", 1), ("X2", 1)], vec![("2.1.0", 2)]]),
        ("X0", vec![vec![("X0", 1)], vec![("2.1.0", 1)]]),
        ("X1", vec![vec![("X1", 1)], vec![("2.1.0", 1)]]),
        ("X2", vec![vec![("X2", 1)], vec![("2.1.0", 1)]]),
    ];
    for (x, layers) in &series {
        let want: Vec<Vec<usize>> = layers.iter().map(|l| dv(q, l)).collect();
        let got = l.radical_series(&v(x)).map_err(|e| e.to_string())?;
        ensure!(got == want, "radical series of e_{x}Λ: {got:?}");
    }
    let tau: [(&str, Vec<(&str, usize)>); 6] = [
        ("3.0.0", vec![("2.0.1", 1), ("3.0.0", 1)]),
        ("2.1.0", vec![("2.0.1", 2), ("3.0.0", 1), ("X0", 1), ("X1", 1), ("X2", 1), ("2.1.0", 1)]),
        ("2.0.1", vec![("2.0.1", 1)]),
        ("X0", vec![("2.0.1", 1), ("X0", 1)]),
        ("X1", vec![("2.0.1", 1), ("X1", 1)]),
        ("X2", vec![("2.0.1", 1), ("X2", 1)]),
    ];
    for (x, want) in &tau {
        let got = tau2_minus_dims(&j, &c, &v(x)).map_err(|e| e.to_string())?;
        ensure!(got.len() >= 2 && got[1] == dv(q, want), "τ₂⁻(e_{x}Λ) has dimension vector {:?}", got.get(1));
    }
    Ok("dim 16, six radical series and four τ₂⁻ shapes match".into())
}

fn global_dimension() -> Outcome {
    let mut notes = Vec::new();
    for s in [4, 7] {
        let j = pi_d(s);
        let cuts = enumerate_cuts(j.quiver(), j.potential());
        let mut worst = 0;
        for c in &cuts {
            let l = truncate(&j, c).map_err(|e| e.to_string())?;
            let g = l.global_dimension(DEFAULT_GLDIM_CAP).map_err(|e| format!("s = {s}: {e}"))?;
            ensure!(g <= 2, "s = {s}, cut {}: gl.dim {g}", c.display(j.quiver()));
            worst = worst.max(g);
        }
        notes.push(format!("D{s}: {} cuts, max {worst}", cuts.len()));
    }
    Ok(notes.join(", "))
}

fn ar_quiver_d4() -> Outcome {
    let q = build_d(4).unwrap();
    let w = potential_d_on(&q);
    let ar = ar_quiver(&q, &w, &standard_cut(&q), module_window(4).unwrap()).map_err(|e| e.to_string())?;
    let (same, next) = (ar.count(ArRule::SameLevel), ar.count(ArRule::NextLevel));
    ensure!(ar.vertices.len() == 12, "{} vertices", ar.vertices.len());
    ensure!(ar.arrows.len() == 18 && same == 16 && next == 2, "{same} + {next} arrows");
    Ok("12 vertices, 16 in-level + 2 cross-level arrows".into())
}

fn oracle() -> Outcome {
    let cases = [
        ("A2", build_a(2).unwrap()),
        ("A3", build_a(3).unwrap()),
        ("D2", build_d(2).unwrap()),
        ("D3", build_d(3).unwrap()),
    ];
    for (name, q) in cases {
        let w = if name.starts_with('A') { potential_a_on(&q) } else { potential_d_on(&q) };
        let j = compute_algebra(&q, &w, default_degree_cap(q.s())).map_err(|e| e.to_string())?;
        let horizon = j.top_degree() + 2;
        let naive = common::naive_vertex_dims(&q, &w, horizon);
        ensure!(naive == j.projective_dimensions(), "{name}: naive {naive:?} vs {:?}", j.projective_dimensions());
        ensure!(naive.iter().sum::<usize>() == j.dimension(), "{name}: totals differ");
    }
    Ok("A2, A3, D2, D3 agree".into())
}

fn sign_twist() -> Outcome {
    for s in 2..=8 {
        ensure!(sign_twist_check(s).map_err(|e| e.to_string())?, "s = {s}");
    }
    Ok("s = 2..8".into())
}

struct Check {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

const fn check(name: &'static str, secs: u64, run: fn() -> Outcome) -> Check {
    Check { name, budget: Duration::from_secs(secs), run }
}

fn main() -> ExitCode {
    let checks = [
        check("dim Π_D^4 = 32 with projectives (4,8,8,4,4,4)", 1, dimension_d4),
        check("derived D^4 relations vanish", 1, derived_relations_d4),
        check("skew quotient equals (D^s, W_D) for s ≤ 10", 10, skew_equality),
        check("no cuts for s ≢ 1 mod 3, witness loops", 5, zero_cuts),
        check("D^4 has 17 cuts, enough of them", 2, cuts_d4),
        check("Π_D^s symmetric for s ≤ 8", 60, symmetric_d),
        check("Nakayama permutation of Π_A^s is a rotation", 30, nakayama_a),
        check("socle of e_(6,0,0) Π_D^7", 30, socle_d7),
        check("homogeneity and fCY for D^4 and D^7", 90, homogeneity),
        check("truncated D^4: radical series and τ₂⁻", 2, truncation_d4),
        check("gl.dim ≤ 2 for D^4 and D^7 cuts", 60, global_dimension),
        check("2-AR quiver of D^4 on levels 0..1", 1, ar_quiver_d4),
        check("engine agrees with brute-force oracle", 5, oracle),
        check("sign twist of W_A for s ≤ 8", 2, sign_twist),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, c) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if took <= c.budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget {:?}", c.budget)),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} {:>2} {} ({:.3}s) {detail}", i + 1, c.name, took.as_secs_f64());
    }
    println!("{} of {} passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
