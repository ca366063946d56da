//! Truncations `Λ = Π/⟨C⟩`, their modules and global dimension, graded pieces
//! of `Π` as `τ₂⁻`-translates, and the levelled 2-AR quiver.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use num_traits::Zero;
use serde::Serialize;

use crate::cuts::{homogeneity_report, is_cut, Cut};
use crate::error::{Error, Result};
use crate::jacobian::{Element, JacobianAlgebra, Relation};
use crate::linalg::{Echelon, Matrix, Vector};
use crate::potential::Potential;
use crate::quiver::{Quiver, Vertex};
use crate::scalar::Cyc3;

/// The cut-degree-0 part of a Jacobian algebra.
#[derive(Clone, Debug)]
pub struct TruncatedAlgebra<'a> {
    parent: &'a JacobianAlgebra,
    cut: Cut,
    basis: Vec<usize>,
    /// Relations `∂_c W` for `c ∈ C`, the only ones surviving truncation.
    relations: Vec<Relation>,
}

pub fn truncate<'a>(j: &'a JacobianAlgebra, c: &Cut) -> Result<TruncatedAlgebra<'a>> {
    if !is_cut(j.potential(), c.arrows()) {
        return Err(Error::NotACut);
    }
    j.check_homogeneous(c.grading())?;
    let basis = (0..j.dimension()).filter(|&i| j.path_grade(i, c.grading()) == 0).collect();
    let relations = j.relations().iter().filter(|r| c.contains(r.arrow)).cloned().collect();
    Ok(TruncatedAlgebra { parent: j, cut: c.clone(), basis, relations })
}

impl<'a> TruncatedAlgebra<'a> {
    pub fn parent(&self) -> &'a JacobianAlgebra {
        self.parent
    }

    pub fn quiver(&self) -> &'a Quiver {
        self.parent.quiver()
    }

    pub fn cut(&self) -> &Cut {
        &self.cut
    }

    /// Parent indices of the basis.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Arrows of the truncated quiver.
    pub fn arrows(&self) -> Vec<usize> {
        (0..self.quiver().num_arrows()).filter(|&a| !self.cut.contains(a)).collect()
    }

    /// `dim e_x Λ` for every vertex.
    pub fn projective_dimensions(&self) -> Vec<usize> {
        let mut out = vec![0; self.quiver().num_vertices()];
        for &i in &self.basis {
            out[self.parent.source_of(i)] += 1;
        }
        out
    }

    fn vertex_basis(&self, x: usize) -> Vec<usize> {
        self.basis.iter().copied().filter(|&i| self.parent.source_of(i) == x).collect()
    }

    /// Dimension vectors of the radical layers of `e_x Λ` (paths of length `n`).
    pub fn radical_series(&self, x: &Vertex) -> Result<Vec<Vec<usize>>> {
        let v = self.quiver().vertex_index(x)?;
        let n = self.quiver().num_vertices();
        let mut layers: Vec<Vec<usize>> = Vec::new();
        for i in self.vertex_basis(v) {
            let d = self.parent.path_of(i).len();
            if layers.len() <= d {
                layers.resize(d + 1, vec![0; n]);
            }
            layers[d][self.parent.target_of(i)] += 1;
        }
        Ok(layers)
    }

    /// The indecomposable projective `e_x Λ` as a representation.
    pub fn projective(&self, x: usize) -> ModuleRep {
        let q = self.quiver();
        let elems = self.vertex_basis(x);
        let mut dims = vec![0; q.num_vertices()];
        let mut local = HashMap::new();
        for &i in &elems {
            let t = self.parent.target_of(i);
            local.insert(i, dims[t]);
            dims[t] += 1;
        }
        let mut action: Vec<Matrix> =
            q.arrows().iter().map(|a| Matrix::zeros(dims[a.source], dims[a.target])).collect();
        for &i in &elems {
            let t = self.parent.target_of(i);
            for &a in q.outgoing(t) {
                if self.cut.contains(a) {
                    continue;
                }
                let img = self.parent.mul_arrow(&Element::basis(i), a);
                for (k, c) in img.terms() {
                    let col = *local.get(&k).expect("products of degree-0 elements stay in degree 0");
                    action[a].set(local[&i], col, c.clone());
                }
            }
        }
        ModuleRep { dims, action }
    }

    pub fn simple(&self, x: usize) -> ModuleRep {
        let q = self.quiver();
        let mut dims = vec![0; q.num_vertices()];
        dims[x] = 1;
        let action = q.arrows().iter().map(|a| Matrix::zeros(dims[a.source], dims[a.target])).collect();
        ModuleRep { dims, action }
    }

    /// Every surviving relation acts as zero.
    pub fn annihilates(&self, m: &ModuleRep) -> bool {
        self.relations.iter().all(|r| {
            let mut acc = Matrix::zeros(m.dims[r.source], m.dims[r.target]);
            for (c, [a, b]) in &r.terms {
                let prod = m.action[*a].mul(&m.action[*b]);
                for r in 0..acc.rows() {
                    for col in 0..acc.cols() {
                        let v = prod.get(r, col);
                        if !v.is_zero() {
                            acc.add_at(r, col, &(c * v));
                        }
                    }
                }
            }
            acc.is_zero()
        })
    }

    /// Minimal projective cover `⊕ P_v → M`; returns the kernel.
    pub fn syzygy(&self, m: &ModuleRep) -> ModuleRep {
        let q = self.quiver();
        let n = q.num_vertices();
        // Tops: complements of the radical at each vertex.
        let mut tops: Vec<(usize, Vector)> = Vec::new();
        for w in 0..n {
            let mut rad = Echelon::new(m.dims[w]);
            for &a in q.incoming(w) {
                for row in m.action[a].to_rows() {
                    rad.insert(row);
                }
            }
            tops.extend(rad.complement().into_iter().map(|t| (w, t)));
        }
        // P = ⊕ e_v Λ over tops; record per vertex the list of (top, basis element).
        let mut p_index: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (ti, (v, _)) in tops.iter().enumerate() {
            for i in self.vertex_basis(*v) {
                p_index[self.parent.target_of(i)].push((ti, i));
            }
        }
        // π_w : P_w → M_w, row per P basis vector.
        let mut pi: Vec<Matrix> = (0..n).map(|w| Matrix::zeros(p_index[w].len(), m.dims[w])).collect();
        for w in 0..n {
            for (r, &(ti, i)) in p_index[w].iter().enumerate() {
                let img = m.act_path(&tops[ti].1, &self.parent.path_of(i).arrows);
                for (c, v) in img.into_iter().enumerate() {
                    pi[w].set(r, c, v);
                }
            }
        }
        // Kernel basis per vertex, kept in reduced echelon form for coordinates.
        let kernels: Vec<Echelon> = (0..n)
            .map(|w| {
                let mut e = Echelon::new(p_index[w].len());
                for v in pi[w].left_kernel() {
                    e.insert(v);
                }
                e
            })
            .collect();
        let pos: Vec<HashMap<(usize, usize), usize>> =
            p_index.iter().map(|l| l.iter().enumerate().map(|(k, &key)| (key, k)).collect()).collect();
        let dims: Vec<usize> = kernels.iter().map(Echelon::rank).collect();
        let mut action = Vec::with_capacity(q.num_arrows());
        for a in q.arrows() {
            let (v, w) = (a.source, a.target);
            let mut mat = Matrix::zeros(dims[v], dims[w]);
            if !self.cut.contains(a.id) {
                for (r, row) in kernels[v].rows().iter().enumerate() {
                    // row · a inside P_w
                    let mut img = vec![Cyc3::zero(); p_index[w].len()];
                    for (k, c) in row.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (ti, i) = p_index[v][k];
                        let prod = self.parent.mul_arrow(&Element::basis(i), a.id);
                        for (b, d) in prod.terms() {
                            img[pos[w][&(ti, b)]] += &(c * d);
                        }
                    }
                    let coords = kernels[w].coords(&img).expect("kernel is a submodule");
                    for (col, c) in coords.into_iter().enumerate() {
                        mat.set(r, col, c);
                    }
                }
            }
            action.push(mat);
        }
        ModuleRep { dims, action }
    }

    /// Length of a minimal projective resolution of `M`.
    pub fn projective_dimension(&self, m: &ModuleRep, cap: usize) -> Result<usize> {
        let mut cur = m.clone();
        for n in 0..=cap {
            let k = self.syzygy(&cur);
            if !self.annihilates(&k) {
                return Err(Error::Internal("syzygy violates the relations".into()));
            }
            if k.is_zero() {
                return Ok(n);
            }
            cur = k;
        }
        Err(Error::CapExceeded { cap })
    }

    /// Maximum projective dimension of the simples.
    pub fn global_dimension(&self, cap: usize) -> Result<usize> {
        if cap < 1 {
            return Err(Error::InvalidParameter("cap must be at least 1".into()));
        }
        let mut best = 0;
        for x in 0..self.quiver().num_vertices() {
            best = best.max(self.projective_dimension(&self.simple(x), cap)?);
        }
        Ok(best)
    }
}

pub const DEFAULT_GLDIM_CAP: usize = 10;

/// A right module: a space per vertex and, per arrow `a: v → w`, the matrix of `m ↦ m·a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    pub dims: Vec<usize>,
    pub action: Vec<Matrix>,
}

impl ModuleRep {
    pub fn dimension(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dimension() == 0
    }

    pub fn act_path(&self, v: &[Cyc3], arrows: &[usize]) -> Vector {
        arrows.iter().fold(v.to_vec(), |acc, &a| self.action[a].left_apply(&acc))
    }
}

/// Dimension vectors of the cut-degree-`i` pieces of `e_x Π`, for `i` up to the top cut-degree.
pub fn tau2_minus_dims(j: &JacobianAlgebra, c: &Cut, x: &Vertex) -> Result<Vec<Vec<usize>>> {
    if !is_cut(j.potential(), c.arrows()) {
        return Err(Error::NotACut);
    }
    let gd = j.graded_dimensions(c.grading())?;
    let v = j.quiver().vertex_index(x)?;
    let n = j.quiver().num_vertices();
    let top = gd.by_pair.keys().filter(|(s, _, _)| *s == v).map(|&(_, _, g)| g).max().unwrap_or(0);
    Ok((0..=top).map(|g| gd.vertex_piece(v, g, n)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ArRule {
    /// Same level, reversed non-cut arrow.
    SameLevel,
    /// Next level, reversed cut arrow.
    NextLevel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArArrow {
    pub from: (Vertex, i64),
    pub to: (Vertex, i64),
    pub rule: ArRule,
    /// Name of the quiver arrow it reverses.
    pub arrow: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArQuiver {
    pub vertices: Vec<(Vertex, i64)>,
    pub arrows: Vec<ArArrow>,
    pub levels: (i64, i64),
}

impl ArQuiver {
    pub fn count(&self, rule: ArRule) -> usize {
        self.arrows.iter().filter(|a| a.rule == rule).count()
    }
}

/// `(x, i) → (y, i)` for each non-cut arrow `y → x`, and `(x, i) → (y, i+1)`
/// for each cut arrow `y → x`, over the requested levels.
pub fn ar_quiver(q: &Quiver, w: &Potential, c: &Cut, levels: RangeInclusive<i64>) -> Result<ArQuiver> {
    if !is_cut(w, c.arrows()) {
        return Err(Error::NotACut);
    }
    let (lo, hi) = (*levels.start(), *levels.end());
    if lo > hi {
        return Err(Error::InvalidParameter(format!("empty level range {lo}..{hi}")));
    }
    let mut vertices = Vec::new();
    for i in lo..=hi {
        for &v in q.vertices() {
            vertices.push((v, i));
        }
    }
    let mut arrows = Vec::new();
    for i in lo..=hi {
        for a in q.arrows() {
            let (x, y) = (q.vertex(a.target), q.vertex(a.source));
            let (rule, j) = if c.contains(a.id) { (ArRule::NextLevel, i + 1) } else { (ArRule::SameLevel, i) };
            if j <= hi {
                arrows.push(ArArrow { from: (x, i), to: (y, j), rule, arrow: q.arrow_name(a.id) });
            }
        }
    }
    Ok(ArQuiver { vertices, arrows, levels: (lo, hi) })
}

/// Levels `0..=t` for `s = 3t + 1`.
pub fn module_window(s: usize) -> Result<RangeInclusive<i64>> {
    if s % 3 != 1 {
        return Err(Error::InvalidParameter(format!("the module window needs s ≡ 1 mod 3, got {s}")));
    }
    Ok(0..=((s - 1) / 3) as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreOrbit {
    pub vertex: Vertex,
    pub members: Vec<(Vertex, i64)>,
    pub shift: u32,
}

/// One orbit `(x,0) → … → (x,t)` per vertex, shifted by `[2t]`.
pub fn serre_orbit_report(j: &JacobianAlgebra, c: &Cut) -> Result<Vec<SerreOrbit>> {
    let rep = homogeneity_report(j, c)?;
    let t = rep.n.ok_or_else(|| Error::NotHomogeneous(rep.witness.clone().unwrap_or_default()))?;
    Ok(j.quiver()
        .vertices()
        .iter()
        .map(|&v| SerreOrbit { vertex: v, members: (0..=t as i64).map(|i| (v, i)).collect(), shift: 2 * t })
        .collect())
}
