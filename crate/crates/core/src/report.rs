//! The `verify` bundle: one named check per structural property of `D^s`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cuts::{cube_loop_witness, enumerate_cuts, expected_cube_loop, has_enough_cuts, homogeneity_report, Cut};
use crate::error::{Error, Result};
use crate::families::{build_d, potential_d_on, predicted_socle_path, sign_twist_check};
use crate::higher_ar::{ar_quiver, module_window, serre_orbit_report, truncate, ArRule, DEFAULT_GLDIM_CAP};
use crate::jacobian::{compute_algebra, JacobianAlgebra, SymmetryVerdict, DEFAULT_SEED};
use crate::quiver::Vertex;
use crate::skew::{build_tilde, qp_equal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Skew,
    Dimension,
    Selfinjective,
    Symmetric,
    Cuts,
    Socle,
    Homogeneity,
    Gldim,
    ArQuiver,
    SignTwist,
}

impl CheckKind {
    pub const ALL: [CheckKind; 10] = [
        CheckKind::Skew,
        CheckKind::Dimension,
        CheckKind::Selfinjective,
        CheckKind::Symmetric,
        CheckKind::Cuts,
        CheckKind::Socle,
        CheckKind::Homogeneity,
        CheckKind::Gldim,
        CheckKind::ArQuiver,
        CheckKind::SignTwist,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Skew => "skew",
            CheckKind::Dimension => "dimension",
            CheckKind::Selfinjective => "selfinjective",
            CheckKind::Symmetric => "symmetric",
            CheckKind::Cuts => "cuts",
            CheckKind::Socle => "socle",
            CheckKind::Homogeneity => "homogeneity",
            CheckKind::Gldim => "gldim",
            CheckKind::ArQuiver => "ar-quiver",
            CheckKind::SignTwist => "sign-twist",
        }
    }

    /// The property being checked, in words.
    pub fn anchor(self) -> &'static str {
        match self {
            CheckKind::Skew => "skew-group quotient of (A^s, W_A) equals (D^s, W_D)",
            CheckKind::Dimension => "Jacobian algebra of D^s is finite dimensional",
            CheckKind::Selfinjective => "Nakayama permutation of Π_D is the identity",
            CheckKind::Symmetric => "Π_D carries a symmetrizing trace form",
            CheckKind::Cuts => "D^s has cuts iff s ≡ 1 mod 3, and then enough of them",
            CheckKind::Socle => "Soc(e_(3t,0,0) Π_D) is spanned by α_0^a α_(2,1) α_2^b",
            CheckKind::Homogeneity => "every cut makes Π_D (t+1)-homogeneous, fCY 2t/(t+1)",
            CheckKind::Gldim => "truncated Jacobian algebras have global dimension ≤ 2",
            CheckKind::ArQuiver => "2-AR quiver on levels 0..t follows the two arrow rules",
            CheckKind::SignTwist => "W_A is the plain 3-cycle sum after a sign twist",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: CheckKind,
    pub anchor: &'static str,
    pub status: Status,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub s: usize,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify D^{}", self.s)?;
        for c in &self.checks {
            writeln!(f, "{} {:<13} {}", c.status, c.name.name(), c.witness)?;
        }
        write!(f, "{} passed, {} failed, {} skipped", self.passed, self.failed, self.skipped)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub checks: Vec<CheckKind>,
    pub seed: u64,
    pub degree_cap: usize,
    /// Per-cut checks look at the first `max_cuts` cuts in enumeration order.
    pub max_cuts: usize,
}

impl VerifyOptions {
    pub fn new(s: usize) -> Self {
        VerifyOptions {
            checks: CheckKind::ALL.to_vec(),
            seed: DEFAULT_SEED,
            degree_cap: crate::jacobian::default_degree_cap(s),
            max_cuts: 200,
        }
    }
}

type Outcome = (Status, String);

fn pass(w: impl Into<String>) -> Outcome {
    (Status::Pass, w.into())
}

fn fail(w: impl Into<String>) -> Outcome {
    (Status::Fail, w.into())
}

fn skip(w: impl Into<String>) -> Outcome {
    (Status::Skipped, w.into())
}

/// Cap overruns abort the whole report; every other error becomes a failed entry.
fn absorb(r: Result<Outcome>) -> Result<Outcome> {
    match r {
        Ok(o) => Ok(o),
        Err(e @ Error::DimensionCapExceeded { .. }) => Err(e),
        Err(e) => Ok(fail(e.to_string())),
    }
}

struct Context {
    s: usize,
    algebra: JacobianAlgebra,
    cuts: Vec<Cut>,
}

pub fn cmd_verify(s: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("s must be at least 2, got {s}")));
    }
    let q = build_d(s)?;
    let w = potential_d_on(&q);
    let cuts = enumerate_cuts(&q, &w);
    let algebra = compute_algebra(&q, &w, opts.degree_cap)?;
    let ctx = Context { s, algebra, cuts };
    let mut checks = Vec::new();
    for &kind in &CheckKind::ALL {
        if !opts.checks.contains(&kind) {
            continue;
        }
        let (status, witness) = absorb(run_check(kind, &ctx, opts))?;
        checks.push(CheckResult { name: kind, anchor: kind.anchor(), status, witness });
    }
    let count = |st: Status| checks.iter().filter(|c| c.status == st).count();
    Ok(VerificationReport {
        s,
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        checks,
    })
}

fn run_check(kind: CheckKind, ctx: &Context, opts: &VerifyOptions) -> Result<Outcome> {
    match kind {
        CheckKind::Skew => check_skew(ctx),
        CheckKind::Dimension => check_dimension(ctx),
        CheckKind::Selfinjective => check_selfinjective(ctx),
        CheckKind::Symmetric => Ok(check_symmetric(ctx, opts.seed)),
        CheckKind::Cuts => check_cuts(ctx),
        CheckKind::Socle => check_socle(ctx),
        CheckKind::Homogeneity => check_homogeneity(ctx, opts.max_cuts),
        CheckKind::Gldim => check_gldim(ctx, opts.max_cuts),
        CheckKind::ArQuiver => check_ar_quiver(ctx),
        CheckKind::SignTwist => Ok(match sign_twist_check(ctx.s)? {
            true => pass(format!("A^{} sign twist maps W_A to the 3-cycle sum", ctx.s)),
            false => fail("sign-twisted potential differs from the 3-cycle sum"),
        }),
    }
}

fn check_skew(ctx: &Context) -> Result<Outcome> {
    let (qt, wt) = build_tilde(ctx.s)?;
    let q = ctx.algebra.quiver();
    let w = ctx.algebra.potential();
    Ok(match qp_equal((&qt, &wt), (q, w)) {
        None => pass(format!("{} vertices, {} arrows, {} terms agree", q.num_vertices(), q.num_arrows(), w.len())),
        Some(d) => fail(serde_json::to_string(&d).unwrap_or_default()),
    })
}

/// Dimensions known independently: `dim Π_D^4 = 32` with the listed projectives.
fn known_dimensions(s: usize) -> Option<(usize, Vec<usize>)> {
    match s {
        4 => Some((32, vec![4, 8, 8, 4, 4, 4])),
        _ => None,
    }
}

fn check_dimension(ctx: &Context) -> Result<Outcome> {
    let j = &ctx.algebra;
    let dims = j.projective_dimensions();
    let witness = format!("dim {} top degree {} projectives {:?}", j.dimension(), j.top_degree(), dims);
    Ok(match known_dimensions(ctx.s) {
        Some((d, p)) if d != j.dimension() || p != dims => {
            fail(format!("{witness}; expected dim {d} projectives {p:?}"))
        }
        _ => pass(witness),
    })
}

fn check_selfinjective(ctx: &Context) -> Result<Outcome> {
    let perm = match ctx.algebra.nakayama_permutation() {
        Ok(p) => p,
        Err(e) => return Ok(fail(e.to_string())),
    };
    Ok(match perm.iter().enumerate().all(|(i, &p)| i == p) {
        true => pass(format!("identity on {} vertices", perm.len())),
        false => fail(format!("permutation {perm:?}")),
    })
}

fn check_symmetric(ctx: &Context, seed: u64) -> Outcome {
    match ctx.algebra.is_symmetric(4, seed) {
        SymmetryVerdict::Symmetric => pass(format!("trace form found (seed {seed:#x})")),
        other => fail(format!("{other:?}")),
    }
}

fn check_cuts(ctx: &Context) -> Result<Outcome> {
    let q = ctx.algebra.quiver();
    let w = ctx.algebra.potential();
    let n = ctx.cuts.len();
    if ctx.s % 3 == 1 {
        if n == 0 {
            return Ok(fail("no cuts found"));
        }
        if ctx.s == 4 && n != 17 {
            return Ok(fail(format!("{n} cuts, expected 17")));
        }
        return Ok(match has_enough_cuts(q, w) {
            true => pass(format!("{n} cuts covering all {} arrows", q.num_arrows())),
            false => fail(format!("{n} cuts do not cover every arrow")),
        });
    }
    if n != 0 {
        return Ok(fail(format!("{n} cuts found where none should exist")));
    }
    let Some(loop_w) = cube_loop_witness(q, w) else {
        return Ok(fail("zero cuts but no loop with a cubed term"));
    };
    if let Some((v, label)) = expected_cube_loop(ctx.s) {
        if loop_w.vertex != v || loop_w.label != label {
            return Ok(fail(format!("witness loop {} differs from {label}@{v}", loop_w.arrow)));
        }
    }
    Ok(pass(format!("zero cuts; loop {} has cube coefficient {}", loop_w.arrow, loop_w.coeff)))
}

fn not_applicable(s: usize) -> Outcome {
    skip(format!("s = {s} is not ≡ 1 mod 3"))
}

fn check_socle(ctx: &Context) -> Result<Outcome> {
    if ctx.s % 3 != 1 {
        return Ok(not_applicable(ctx.s));
    }
    let j = &ctx.algebra;
    let q = j.quiver();
    let t = (ctx.s - 1) / 3;
    let x = Vertex::lattice(3 * t as u32, 0, 0);
    let soc = j.socle(&x)?;
    if soc.len() != 1 {
        return Ok(fail(format!("socle of e_{x} Π has dimension {}", soc.len())));
    }
    let p = predicted_socle_path(q)?;
    let e = j.path_element(&p)?;
    let (i0, c0) = soc[0].terms().next().expect("nonzero socle element");
    let ratio = e.coeff(i0).checked_div(c0)?;
    Ok(match !e.is_zero() && e == soc[0].scaled(&ratio) {
        true => pass(format!("{} spans the socle of e_{x} Π", p.display(q))),
        false => fail(format!("{} is not a socle generator", p.display(q))),
    })
}

fn sample(ctx: &Context, max_cuts: usize) -> (&[Cut], String) {
    let n = ctx.cuts.len().min(max_cuts);
    let note =
        if n < ctx.cuts.len() { format!("first {n} of {} cuts", ctx.cuts.len()) } else { format!("all {n} cuts") };
    (&ctx.cuts[..n], note)
}

fn check_homogeneity(ctx: &Context, max_cuts: usize) -> Result<Outcome> {
    if ctx.s % 3 != 1 {
        return Ok(not_applicable(ctx.s));
    }
    let t = ((ctx.s - 1) / 3) as u32;
    let expected = format!("{}/{}", 2 * t, t + 1);
    let (cuts, note) = sample(ctx, max_cuts);
    for c in cuts {
        let rep = homogeneity_report(&ctx.algebra, c)?;
        if rep.n != Some(t) || rep.fcy.as_deref() != Some(expected.as_str()) {
            let q = ctx.algebra.quiver();
            return Ok(fail(format!(
                "cut {}: N = {:?}, fcy = {:?}{}",
                c.display(q),
                rep.n,
                rep.fcy,
                rep.witness.map(|w| format!(" ({w})")).unwrap_or_default()
            )));
        }
        let orbits = serre_orbit_report(&ctx.algebra, c)?;
        if orbits.iter().any(|o| o.members.len() != t as usize + 1 || o.shift != 2 * t) {
            return Ok(fail(format!("cut {}: Serre orbits have the wrong shape", c.display(ctx.algebra.quiver()))));
        }
    }
    Ok(pass(format!("{note}: N = {t}, fcy = {expected}")))
}

fn check_gldim(ctx: &Context, max_cuts: usize) -> Result<Outcome> {
    if ctx.s % 3 != 1 {
        return Ok(not_applicable(ctx.s));
    }
    let (cuts, note) = sample(ctx, max_cuts);
    let mut worst = 0;
    for c in cuts {
        let l = truncate(&ctx.algebra, c)?;
        let g = l.global_dimension(DEFAULT_GLDIM_CAP)?;
        if g > 2 {
            return Ok(fail(format!("cut {}: gl.dim {g}", c.display(ctx.algebra.quiver()))));
        }
        worst = worst.max(g);
    }
    Ok(pass(format!("{note}: max gl.dim {worst}")))
}

fn check_ar_quiver(ctx: &Context) -> Result<Outcome> {
    if ctx.s % 3 != 1 {
        return Ok(not_applicable(ctx.s));
    }
    let q = ctx.algebra.quiver();
    let w = ctx.algebra.potential();
    let window = module_window(ctx.s)?;
    let levels = (window.end() - window.start() + 1) as usize;
    for c in &ctx.cuts {
        let ar = ar_quiver(q, w, c, window.clone())?;
        let same = ar.count(ArRule::SameLevel);
        let next = ar.count(ArRule::NextLevel);
        let expected_same = levels * (q.num_arrows() - c.len());
        let expected_next = (levels - 1) * c.len();
        if ar.vertices.len() != levels * q.num_vertices() || same != expected_same || next != expected_next {
            return Ok(fail(format!("cut {}: {} vertices, {same}+{next} arrows", c.display(q), ar.vertices.len())));
        }
    }
    let c = &ctx.cuts[0];
    let ar = ar_quiver(q, w, c, window)?;
    Ok(pass(format!(
        "{} cuts; first cut gives {} vertices, {} arrows ({} in-level, {} cross-level)",
        ctx.cuts.len(),
        ar.vertices.len(),
        ar.arrows.len(),
        ar.count(ArRule::SameLevel),
        ar.count(ArRule::NextLevel)
    )))
}
