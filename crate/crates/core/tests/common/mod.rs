#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::Zero;
use qpforge::linalg::Echelon;
use qpforge::{Cyc3, Potential, Quiver};

/// All paths of length `n` as arrow sequences.
pub fn paths_of_length(q: &Quiver, n: usize) -> Vec<Vec<usize>> {
    let mut layer: Vec<Vec<usize>> = (0..q.num_vertices()).map(|_| Vec::new()).collect();
    if n == 0 {
        return layer;
    }
    layer = q.arrows().iter().map(|a| vec![a.id]).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for p in &layer {
            let end = q.arrow(*p.last().unwrap()).target;
            for &b in q.outgoing(end) {
                let mut e = p.clone();
                e.push(b);
                next.push(e);
            }
        }
        layer = next;
    }
    layer
}

/// Cyclic derivatives read straight off the cycle list, without going through the engine.
pub fn naive_relations(q: &Quiver, w: &Potential) -> Vec<BTreeMap<Vec<usize>, Cyc3>> {
    let mut rels = vec![BTreeMap::new(); q.num_arrows()];
    for (cycle, coeff) in w.terms() {
        let arrows = cycle.arrows();
        let n = arrows.len();
        for i in 0..n {
            let rest: Vec<usize> = (1..n).map(|k| arrows[(i + k) % n]).collect();
            let e = rels[arrows[i]].entry(rest).or_insert_with(Cyc3::zero);
            *e = &*e + coeff;
        }
    }
    for r in &mut rels {
        r.retain(|_, c| !c.is_zero());
    }
    rels
}

/// Degree-`n` part of `e_x J` for every vertex `x`, by brute force: the number of
/// paths of length `n` from `x` minus the rank of `span{u·∂_a W·v}` among them.
pub fn naive_degree_dims_by_source(q: &Quiver, w: &Potential, n: usize) -> Vec<usize> {
    if n == 0 {
        return vec![1; q.num_vertices()];
    }
    let rels = naive_relations(q, w);
    let all = paths_of_length(q, n);
    (0..q.num_vertices())
        .map(|x| {
            let paths: Vec<&Vec<usize>> = all.iter().filter(|p| q.arrow(p[0]).source == x).collect();
            let index: BTreeMap<&Vec<usize>, usize> = paths.iter().enumerate().map(|(i, p)| (*p, i)).collect();
            let mut ech = Echelon::new(paths.len());
            for p in &paths {
                for start in 0..n {
                    for rel in &rels {
                        let Some((first, _)) = rel.iter().next() else { continue };
                        let k = first.len();
                        // Only the generator whose middle is literally a term of the relation.
                        if start + k > n || !rel.contains_key(&p[start..start + k]) {
                            continue;
                        }
                        let mut v = vec![Cyc3::zero(); paths.len()];
                        for (mid, c) in rel {
                            let mut full = p[..start].to_vec();
                            full.extend(mid);
                            full.extend(&p[start + k..]);
                            v[index[&full]] = c.clone();
                        }
                        ech.insert(v);
                    }
                }
            }
            paths.len() - ech.rank()
        })
        .collect()
}

pub fn naive_degree_dims(q: &Quiver, w: &Potential, max_n: usize) -> Vec<usize> {
    (0..=max_n).map(|n| naive_degree_dims_by_source(q, w, n).iter().sum()).collect()
}

/// `dim e_x J` for every `x`, summing degrees `0..=max_n`.
pub fn naive_vertex_dims(q: &Quiver, w: &Potential, max_n: usize) -> Vec<usize> {
    let mut out = vec![0; q.num_vertices()];
    for n in 0..=max_n {
        for (o, d) in out.iter_mut().zip(naive_degree_dims_by_source(q, w, n)) {
            *o += d;
        }
    }
    out
}
