//! Finite-dimensional Jacobian algebras `kQ / ⟨∂_a W⟩` with explicit path bases.
//!
//! The quotient is built degree by degree. With `B_n` the basis in path length
//! `n`, the spanning set in length `n+1` is `{u·a : u ∈ B_n}` and the relations
//! imposed there are `{v·r : v ∈ B_{n-1}, r = ∂_b W}`, each rewritten through
//! the degree-`n` normal forms. Elimination runs separately for every
//! (source, target) pair, with the largest paths chosen as pivots, so each
//! basis element is the smallest surviving path in its class.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::potential::{cyclic_derivative, PathSum, Potential};
use crate::quiver::{Path, Quiver, Vertex};
use crate::scalar::Cyc3;

/// `∂_b W` for one arrow `b`: length-two paths from the target of `b` to its source.
#[derive(Clone, Debug)]
pub struct Relation {
    pub arrow: usize,
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(Cyc3, [usize; 2])>,
}

#[derive(Clone, Debug, Default)]
pub struct RelationSet {
    relations: Vec<Relation>,
}

impl RelationSet {
    pub fn iter(&self) -> impl Iterator<Item = &Relation> {
        self.relations.iter()
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn for_arrow(&self, a: usize) -> Option<&Relation> {
        self.relations.iter().find(|r| r.arrow == a)
    }

    pub fn as_path_sum(rel: &Relation) -> PathSum {
        let mut out = PathSum::new();
        for (c, [a, b]) in &rel.terms {
            out.add_term(Path { source: rel.source, arrows: vec![*a, *b] }, c);
        }
        out
    }
}

/// One relation per arrow with a nonzero cyclic derivative.
pub fn jacobian_relations(q: &Quiver, w: &Potential) -> Result<RelationSet> {
    let mut relations = Vec::new();
    for arrow in q.arrows() {
        let d = cyclic_derivative(q, w, arrow.id)?;
        if d.is_zero() {
            continue;
        }
        let mut terms = Vec::with_capacity(d.len());
        for (p, c) in d.terms() {
            let [a, b] = p.arrows[..] else {
                return Err(Error::InvalidParameter(format!(
                    "relation for {} has a term of length {}",
                    q.arrow_name(arrow.id),
                    p.len()
                )));
            };
            terms.push((c.clone(), [a, b]));
        }
        relations.push(Relation { arrow: arrow.id, source: arrow.target, target: arrow.source, terms });
    }
    Ok(RelationSet { relations })
}

/// Sparse vector in the global basis of a [`JacobianAlgebra`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<usize, Cyc3>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(idx: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(idx, Cyc3::one());
        Element { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Cyc3)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    pub fn coeff(&self, idx: usize) -> Cyc3 {
        self.terms.get(&idx).cloned().unwrap_or_else(Cyc3::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, c: &Cyc3, other: &Element) {
        if c.is_zero() {
            return;
        }
        for (&i, v) in &other.terms {
            let e = self.terms.entry(i).or_insert_with(Cyc3::zero);
            *e += &(c * v);
            if e.is_zero() {
                self.terms.remove(&i);
            }
        }
    }

    pub fn add_term(&mut self, idx: usize, c: &Cyc3) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(idx).or_insert_with(Cyc3::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn scaled(&self, c: &Cyc3) -> Element {
        let mut out = Element::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&-Cyc3::one(), other);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisPath {
    pub path: Path,
    pub target: usize,
    pub degree: usize,
}

/// Path order: length, then arrow ids, then source (only relevant for idempotents).
fn path_order_key(p: &Path) -> (usize, &[usize], usize) {
    (p.arrows.len(), &p.arrows, p.source)
}

#[derive(Clone, Debug)]
pub struct JacobianAlgebra {
    quiver: Quiver,
    potential: Potential,
    relations: RelationSet,
    basis: Vec<BasisPath>,
    degrees: Vec<Range<usize>>,
    /// `(degree, source, target)` → global indices in path order.
    blocks: HashMap<(usize, usize, usize), Vec<usize>>,
    local: Vec<usize>,
    /// For every basis element, its right products with composable arrows.
    right: Vec<BTreeMap<usize, Element>>,
}

/// Default degree cap `3·s`.
/// `(u, a)` with the image of `u·a` keyed by extended path, before new indices exist.
type Pending = (usize, usize, Vec<(Vec<usize>, Cyc3)>);

pub fn default_degree_cap(s: usize) -> usize {
    3 * s
}

pub fn compute_algebra(q: &Quiver, w: &Potential, degree_cap: usize) -> Result<JacobianAlgebra> {
    if degree_cap < 1 {
        return Err(Error::InvalidParameter("degree cap must be at least 1".into()));
    }
    let relations = jacobian_relations(q, w)?;
    let mut rels_from: Vec<Vec<usize>> = vec![Vec::new(); q.num_vertices()];
    for (n, r) in relations.iter().enumerate() {
        rels_from[r.source].push(n);
    }

    let mut alg = JacobianAlgebra {
        quiver: q.clone(),
        potential: w.clone(),
        relations,
        basis: Vec::new(),
        degrees: Vec::new(),
        blocks: HashMap::new(),
        local: Vec::new(),
        right: Vec::new(),
    };
    let lazy: Vec<Path> = (0..q.num_vertices()).map(Path::lazy).collect();
    alg.push_degree(lazy);

    let mut n = 0;
    loop {
        let next = alg.extend_degree(n, &rels_from);
        if next.is_empty() {
            break;
        }
        if n + 1 >= degree_cap {
            return Err(Error::DimensionCapExceeded { cap: degree_cap });
        }
        alg.push_degree(next);
        n += 1;
    }
    Ok(alg)
}

impl JacobianAlgebra {
    fn push_degree(&mut self, mut paths: Vec<Path>) {
        paths.sort_by(|a, b| path_order_key(a).cmp(&path_order_key(b)));
        let d = self.degrees.len();
        let start = self.basis.len();
        for p in paths {
            let idx = self.basis.len();
            let target = p.target(&self.quiver);
            let block = self.blocks.entry((d, p.source, target)).or_default();
            self.local.push(block.len());
            block.push(idx);
            self.basis.push(BasisPath { path: p, target, degree: d });
            self.right.push(BTreeMap::new());
        }
        self.degrees.push(start..self.basis.len());
    }

    /// Computes the degree-`n+1` basis, fills the right products of degree-`n`
    /// elements, and returns the new basis paths (not yet indexed).
    fn extend_degree(&mut self, n: usize, rels_from: &[Vec<usize>]) -> Vec<Path> {
        let q = &self.quiver;
        // Columns per (source, target): pairs (u, a) in decreasing path order.
        let mut columns: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for u in self.degrees[n].clone() {
            let bp = &self.basis[u];
            for &a in q.outgoing(bp.target) {
                columns.entry((bp.path.source, q.arrow(a).target)).or_default().push((u, a));
            }
        }
        let extended = |basis: &[BasisPath], &(u, a): &(usize, usize)| -> Vec<usize> {
            let mut v = basis[u].path.arrows.clone();
            v.push(a);
            v
        };
        let mut new_paths = Vec::new();
        // Global index of new basis elements is assigned in push_degree after sorting;
        // record images against path keys first.
        let mut pending: Vec<Pending> = Vec::new();

        for ((x, y), mut cols) in columns {
            cols.sort_by_key(|p| Reverse(extended(&self.basis, p)));
            let col_of: HashMap<(usize, usize), usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();

            let mut rows: Vec<Vec<Cyc3>> = Vec::new();
            if n >= 1 {
                for v in self.degrees[n - 1].clone() {
                    let bv = &self.basis[v];
                    if bv.path.source != x {
                        continue;
                    }
                    for &ri in &rels_from[bv.target] {
                        let rel = &self.relations.relations[ri];
                        if rel.target != y {
                            continue;
                        }
                        let mut row = vec![Cyc3::zero(); cols.len()];
                        for (c, [a1, a2]) in &rel.terms {
                            let Some(img) = self.right[v].get(a1) else { continue };
                            for (u, coef) in img.terms() {
                                let col = col_of[&(u, *a2)];
                                row[col] += &(c * coef);
                            }
                        }
                        if row.iter().any(|e| !e.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
            let ncols = cols.len();
            let mut m = Matrix::from_rows(rows, ncols);
            let pivots = m.rref();
            let mut pivot_row = vec![None; ncols];
            for (r, &p) in pivots.iter().enumerate() {
                pivot_row[p] = Some(r);
            }
            let free: Vec<usize> = (0..ncols).filter(|&c| pivot_row[c].is_none()).collect();
            for &f in &free {
                let (u, _) = cols[f];
                new_paths.push(Path { source: self.basis[u].path.source, arrows: extended(&self.basis, &cols[f]) });
            }
            for (c, &(u, a)) in cols.iter().enumerate() {
                let image: Vec<(Vec<usize>, Cyc3)> = match pivot_row[c] {
                    None => vec![(extended(&self.basis, &(u, a)), Cyc3::one())],
                    Some(r) => free
                        .iter()
                        .filter(|&&f| !m.get(r, f).is_zero())
                        .map(|&f| (extended(&self.basis, &cols[f]), -m.get(r, f)))
                        .collect(),
                };
                pending.push((u, a, image));
            }
        }

        // Resolve path keys to the indices the new degree will receive.
        let mut sorted = new_paths.clone();
        sorted.sort_by(|a, b| path_order_key(a).cmp(&path_order_key(b)));
        let offset = self.basis.len();
        let index_of: HashMap<Vec<usize>, usize> =
            sorted.iter().enumerate().map(|(i, p)| (p.arrows.clone(), offset + i)).collect();
        for (u, a, image) in pending {
            let mut e = Element::zero();
            for (key, c) in image {
                e.add_term(index_of[&key], &c);
            }
            self.right[u].insert(a, e);
        }
        new_paths
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree_range(&self, d: usize) -> Range<usize> {
        self.degrees.get(d).cloned().unwrap_or(0..0)
    }

    /// `|B_d|` for `d = 0..=top_degree`.
    pub fn degree_dimensions(&self) -> Vec<usize> {
        self.degrees.iter().map(|r| r.len()).collect()
    }

    /// Basis indices of `e_x J_d e_y`, in path order.
    pub fn block(&self, d: usize, x: usize, y: usize) -> &[usize] {
        self.blocks.get(&(d, x, y)).map_or(&[], Vec::as_slice)
    }

    /// Position of a basis element inside its `(degree, source, target)` block.
    pub fn local_index(&self, idx: usize) -> usize {
        self.local[idx]
    }

    /// Basis of `e_x J`, ordered by degree then path order.
    pub fn vertex_basis(&self, x: &Vertex) -> Result<Vec<usize>> {
        let v = self.quiver.vertex_index(x)?;
        Ok(self.vertex_basis_idx(v))
    }

    pub fn vertex_basis_idx(&self, v: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].path.source == v).collect()
    }

    /// `dim e_x J e_y` as a vertex × vertex table.
    pub fn dimension_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.quiver.num_vertices();
        let mut m = vec![vec![0; n]; n];
        for b in &self.basis {
            m[b.path.source][b.target] += 1;
        }
        m
    }

    /// `dim e_x J` for every vertex.
    pub fn projective_dimensions(&self) -> Vec<usize> {
        self.dimension_matrix().iter().map(|r| r.iter().sum()).collect()
    }

    pub fn path_of(&self, idx: usize) -> &Path {
        &self.basis[idx].path
    }

    pub fn source_of(&self, idx: usize) -> usize {
        self.basis[idx].path.source
    }

    pub fn target_of(&self, idx: usize) -> usize {
        self.basis[idx].target
    }

    /// `x · a`, zero when `a` does not compose.
    pub fn mul_arrow(&self, x: &Element, a: usize) -> Element {
        let mut out = Element::zero();
        for (i, c) in x.terms() {
            if let Some(img) = self.right[i].get(&a) {
                out.add_scaled(c, img);
            }
        }
        out
    }

    pub fn mul_path(&self, x: &Element, arrows: &[usize]) -> Element {
        arrows.iter().fold(x.clone(), |acc, &a| self.mul_arrow(&acc, a))
    }

    /// Right multiplication by the basis element `idx`.
    pub fn mul_basis(&self, x: &Element, idx: usize) -> Element {
        let p = &self.basis[idx].path;
        if p.arrows.is_empty() {
            let mut out = Element::zero();
            for (i, c) in x.terms() {
                if self.basis[i].target == p.source {
                    out.add_term(i, c);
                }
            }
            return out;
        }
        self.mul_path(x, &p.arrows)
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (j, c) in y.terms() {
            out.add_scaled(c, &self.mul_basis(x, j));
        }
        out
    }

    /// Residue class of a path.
    pub fn path_element(&self, p: &Path) -> Result<Element> {
        let p = Path::new(&self.quiver, p.source, p.arrows.clone())?;
        Ok(self.mul_path(&Element::basis(p.source), &p.arrows))
    }

    /// Coordinates of a linear combination of paths in the basis.
    pub fn normal_form(&self, expr: &PathSum) -> Result<Element> {
        let mut out = Element::zero();
        for (p, c) in expr.terms() {
            out.add_scaled(c, &self.path_element(p)?);
        }
        Ok(out)
    }

    /// Matrix of right multiplication by `a` from block `(d, x, y)` to `(d+1, x, t(a))`,
    /// rows indexed by the source block.
    pub fn right_matrix(&self, d: usize, x: usize, y: usize, a: usize) -> Matrix {
        let src = self.block(d, x, y);
        let tgt = self.block(d + 1, x, self.quiver.arrow(a).target);
        let mut m = Matrix::zeros(src.len(), tgt.len());
        if self.quiver.arrow(a).source != y {
            return m;
        }
        for (r, &u) in src.iter().enumerate() {
            if let Some(img) = self.right[u].get(&a) {
                for (i, c) in img.terms() {
                    m.set(r, self.local[i], c.clone());
                }
            }
        }
        m
    }

    /// Basis of `Soc(e_x J)`: elements killed by every arrow, computed per
    /// degree and target as the common left kernel of the right-multiplication maps.
    pub fn socle(&self, x: &Vertex) -> Result<Vec<Element>> {
        let v = self.quiver.vertex_index(x)?;
        Ok(self.socle_idx(v))
    }

    pub fn socle_idx(&self, x: usize) -> Vec<Element> {
        let mut out = Vec::new();
        for d in 0..self.degrees.len() {
            for y in 0..self.quiver.num_vertices() {
                let src = self.block(d, x, y);
                if src.is_empty() {
                    continue;
                }
                let outs = self.quiver.outgoing(y);
                let widths: Vec<usize> =
                    outs.iter().map(|&a| self.block(d + 1, x, self.quiver.arrow(a).target).len()).collect();
                let total: usize = widths.iter().sum();
                let mut m = Matrix::zeros(src.len(), total);
                let mut off = 0;
                for (&a, &w) in outs.iter().zip(&widths) {
                    let r = self.right_matrix(d, x, y, a);
                    for i in 0..src.len() {
                        for j in 0..w {
                            m.set(i, off + j, r.get(i, j).clone());
                        }
                    }
                    off += w;
                }
                for k in m.left_kernel() {
                    let mut e = Element::zero();
                    for (i, c) in k.iter().enumerate() {
                        e.add_term(src[i], c);
                    }
                    out.push(e);
                }
            }
        }
        out
    }

    /// `x ↦` the vertex at which `Soc(e_x J)` sits.
    pub fn nakayama_permutation(&self) -> Result<Vec<usize>> {
        let n = self.quiver.num_vertices();
        let mut perm = Vec::with_capacity(n);
        for x in 0..n {
            let soc = self.socle_idx(x);
            let name = self.quiver.vertex(x);
            match soc.as_slice() {
                [] => return Err(Error::NotSelfinjectiveBasic(format!("Soc(e_{name} J) is zero"))),
                [e] => {
                    let i = e.support().next().expect("nonzero socle element");
                    perm.push(self.basis[i].target);
                }
                _ => return Err(Error::NotSelfinjectiveBasic(format!("Soc(e_{name} J) has dimension {}", soc.len()))),
            }
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::NotSelfinjectiveBasic(format!(
                    "socle vertex {} is hit twice",
                    self.quiver.vertex(p)
                )));
            }
        }
        Ok(perm)
    }

    /// Degree of a basis path under an arrow grading.
    pub fn path_grade(&self, idx: usize, grading: &[u32]) -> u32 {
        self.basis[idx].path.arrows.iter().map(|&a| grading[a]).sum()
    }

    /// Checks every relation is homogeneous for `grading`.
    pub fn check_homogeneous(&self, grading: &[u32]) -> Result<()> {
        if grading.len() != self.quiver.num_arrows() {
            return Err(Error::InvalidParameter(format!(
                "grading has {} entries for {} arrows",
                grading.len(),
                self.quiver.num_arrows()
            )));
        }
        for rel in self.relations.iter() {
            let mut degs = rel.terms.iter().map(|(_, [a, b])| grading[*a] + grading[*b]);
            let first = degs.next();
            if degs.any(|d| Some(d) != first) {
                return Err(Error::NotHomogeneous(format!(
                    "relation of {} mixes degrees",
                    self.quiver.arrow_name(rel.arrow)
                )));
            }
        }
        Ok(())
    }

    pub fn graded_dimensions(&self, grading: &[u32]) -> Result<GradedDimensions> {
        self.check_homogeneous(grading)?;
        let mut total = BTreeMap::new();
        let mut by_pair = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            let g = self.path_grade(i, grading);
            *total.entry(g).or_insert(0) += 1;
            *by_pair.entry((b.path.source, b.target, g)).or_insert(0) += 1;
        }
        Ok(GradedDimensions { total, by_pair })
    }

    /// Decides symmetry by searching for a trace form with nondegenerate Gram matrix.
    ///
    /// A trace form vanishes on `[J, J]`, hence on every `e_x J e_y` with `x ≠ y`;
    /// its Gram matrix therefore splits into blocks `e_x J e_y × e_y J e_x`,
    /// each of which must be square and invertible.
    pub fn is_symmetric(&self, attempts: usize, seed: u64) -> SymmetryVerdict {
        let perm = match self.nakayama_permutation() {
            Ok(p) => p,
            Err(e) => return SymmetryVerdict::NotSelfinjective { reason: e.to_string() },
        };
        if perm.iter().enumerate().any(|(i, &p)| i != p) {
            return SymmetryVerdict::NotSymmetric { permutation: perm };
        }
        if attempts == 0 {
            return SymmetryVerdict::Inconclusive;
        }
        let n = self.quiver.num_vertices();
        // Diagonal basis e_x J_d e_x, indexed per degree.
        let top = self.top_degree();
        let mut diag: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
        let mut diag_pos = vec![usize::MAX; self.basis.len()];
        for (i, b) in self.basis.iter().enumerate() {
            if b.path.source == b.target {
                diag_pos[i] = diag[b.degree].len();
                diag[b.degree].push(i);
            }
        }
        let to_diag_vec = |e: &Element, d: usize| -> Vec<Cyc3> {
            let mut v = vec![Cyc3::zero(); diag[d].len()];
            for (i, c) in e.terms() {
                v[diag_pos[i]] = c.clone();
            }
            v
        };

        // Products uv for u ∈ e_x J e_y, v ∈ e_y J e_x of positive degree.
        let mut products: HashMap<(usize, usize), Element> = HashMap::new();
        let mut pair_basis: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            pair_basis.entry((b.path.source, b.target)).or_default().push(i);
        }
        let empty = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let us = pair_basis.get(&(x, y)).unwrap_or(&empty);
                let vs = pair_basis.get(&(y, x)).unwrap_or(&empty);
                for &u in us {
                    for &v in vs {
                        if self.basis[u].degree + self.basis[v].degree > top {
                            continue;
                        }
                        products.insert((u, v), self.mul_basis(&Element::basis(u), v));
                    }
                }
            }
        }

        // Commutator subspace, degree by degree.
        let mut comm: Vec<Echelon> = diag.iter().map(|b| Echelon::new(b.len())).collect();
        for (&(u, v), uv) in &products {
            if u > v || self.basis[u].degree == 0 || self.basis[v].degree == 0 {
                continue;
            }
            let d = self.basis[u].degree + self.basis[v].degree;
            let vu = &products[&(v, u)];
            let diff = uv.sub(vu);
            if !diff.is_zero() {
                comm[d].insert(to_diag_vec(&diff, d));
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..attempts {
            // Random trace form: free values on non-pivot coordinates, pivots solved.
            let mut phi = vec![Cyc3::zero(); self.basis.len()];
            for (d, ech) in comm.iter().enumerate() {
                let mut vals = vec![Cyc3::zero(); diag[d].len()];
                let mut is_pivot = vec![false; diag[d].len()];
                for &p in ech.pivots() {
                    is_pivot[p] = true;
                }
                for (c, val) in vals.iter_mut().enumerate() {
                    if !is_pivot[c] {
                        *val = Cyc3::from(rng.gen_range(-9i64..=9));
                    }
                }
                for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
                    let mut s = Cyc3::zero();
                    for (c, r) in row.iter().enumerate() {
                        if c != p && !r.is_zero() {
                            s += &(r * &vals[c]);
                        }
                    }
                    vals[p] = -s;
                }
                for (c, v) in vals.into_iter().enumerate() {
                    phi[diag[d][c]] = v;
                }
            }
            let eval = |e: &Element| -> Cyc3 {
                let mut s = Cyc3::zero();
                for (i, c) in e.terms() {
                    if !phi[i].is_zero() {
                        s += &(c * &phi[i]);
                    }
                }
                s
            };
            let mut ok = true;
            'blocks: for x in 0..n {
                for y in x..n {
                    let us = pair_basis.get(&(x, y)).unwrap_or(&empty);
                    let vs = pair_basis.get(&(y, x)).unwrap_or(&empty);
                    if us.len() != vs.len() {
                        ok = false;
                        break 'blocks;
                    }
                    if us.is_empty() {
                        continue;
                    }
                    let mut g = Matrix::zeros(us.len(), vs.len());
                    for (r, &u) in us.iter().enumerate() {
                        for (c, &v) in vs.iter().enumerate() {
                            if let Some(uv) = products.get(&(u, v)) {
                                g.set(r, c, eval(uv));
                            }
                        }
                    }
                    if !g.is_invertible() {
                        ok = false;
                        break 'blocks;
                    }
                }
            }
            if ok {
                return SymmetryVerdict::Symmetric;
            }
        }
        SymmetryVerdict::WeaklySymmetricOnly
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDimensions {
    pub total: BTreeMap<u32, usize>,
    /// `(source, target, degree)` → dimension.
    pub by_pair: BTreeMap<(usize, usize, u32), usize>,
}

impl GradedDimensions {
    /// Dimension vector (indexed by target vertex) of `e_x J_g`.
    pub fn vertex_piece(&self, x: usize, g: u32, num_vertices: usize) -> Vec<usize> {
        (0..num_vertices).map(|y| self.by_pair.get(&(x, y, g)).copied().unwrap_or(0)).collect()
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed_0003;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SymmetryVerdict {
    Symmetric,
    /// Nakayama permutation is trivial but no nondegenerate trace form turned up.
    WeaklySymmetricOnly,
    /// Selfinjective with a nontrivial Nakayama permutation.
    NotSymmetric {
        permutation: Vec<usize>,
    },
    NotSelfinjective {
        reason: String,
    },
    Inconclusive,
}
