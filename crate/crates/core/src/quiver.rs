//! Quivers, vertices, arrow labels and paths.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    A,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::D => write!(f, "D"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Family::A),
            "d" | "D" => Ok(Family::D),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// A vertex: either a lattice point `(x0, x1, x2)` or one of the three copies `X_k`
/// of the rotation-fixed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Lattice([u32; 3]),
    Fixed(u8),
}

impl Vertex {
    pub fn lattice(x0: u32, x1: u32, x2: u32) -> Self {
        Vertex::Lattice([x0, x1, x2])
    }

    pub fn coords(&self) -> Option<[u32; 3]> {
        match self {
            Vertex::Lattice(x) => Some(*x),
            Vertex::Fixed(_) => None,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Lattice([a, b, c]) => write!(f, "{a}.{b}.{c}"),
            Vertex::Fixed(k) => write!(f, "X{k}"),
        }
    }
}

impl FromStr for Vertex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad vertex {s:?}"));
        if let Some(k) = s.strip_prefix('X') {
            let k: u8 = k.parse().map_err(|_| bad())?;
            return if k < 3 { Ok(Vertex::Fixed(k)) } else { Err(bad()) };
        }
        let parts: Vec<u32> = s.split('.').map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?;
        match parts[..] {
            [a, b, c] => Ok(Vertex::Lattice([a, b, c])),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowLabel {
    Alpha { i: u8, j: u8 },
    Beta(u8),
    Gamma(u8),
}

impl ArrowLabel {
    pub fn alpha(i: u8, j: u8) -> Self {
        ArrowLabel::Alpha { i, j }
    }
}

impl Serialize for ArrowLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Printed as `α_i` when `j = 0`, else `α_{i,j}`.
impl fmt::Display for ArrowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrowLabel::Alpha { i, j: 0 } => write!(f, "α_{i}"),
            ArrowLabel::Alpha { i, j } => write!(f, "α_{{{i},{j}}}"),
            ArrowLabel::Beta(k) => write!(f, "β_{k}"),
            ArrowLabel::Gamma(k) => write!(f, "γ_{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub id: usize,
    pub source: usize,
    pub target: usize,
    pub label: ArrowLabel,
}

/// A finite quiver from one of the two families, with dense arrow ids.
#[derive(Clone, Debug)]
pub struct Quiver {
    s: usize,
    family: Family,
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<Vertex, usize>,
    arrow_index: HashMap<(usize, ArrowLabel), usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

impl Quiver {
    /// Arrows are given as `(source vertex, target vertex, label)` and receive ids in order.
    pub fn new(
        s: usize,
        family: Family,
        vertices: Vec<Vertex>,
        arrows: Vec<(Vertex, Vertex, ArrowLabel)>,
    ) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        for (n, v) in vertices.iter().enumerate() {
            if vertex_index.insert(*v, n).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate vertex {v}")));
            }
        }
        let lookup = |v: &Vertex| vertex_index.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.to_string()));
        let mut outgoing = vec![Vec::new(); vertices.len()];
        let mut incoming = vec![Vec::new(); vertices.len()];
        let mut arrow_index = HashMap::new();
        let mut list = Vec::with_capacity(arrows.len());
        for (id, (src, tgt, label)) in arrows.into_iter().enumerate() {
            let source = lookup(&src)?;
            let target = lookup(&tgt)?;
            if arrow_index.insert((source, label), id).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate arrow {label} at {src}")));
            }
            outgoing[source].push(id);
            incoming[target].push(id);
            list.push(Arrow { id, source, target, label });
        }
        Ok(Quiver { s, family, vertices, arrows: list, vertex_index, arrow_index, outgoing, incoming })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, idx: usize) -> Vertex {
        self.vertices[idx]
    }

    pub fn arrow(&self, id: usize) -> &Arrow {
        &self.arrows[id]
    }

    pub fn vertex_index(&self, v: &Vertex) -> Result<usize> {
        self.vertex_index.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn find_arrow(&self, source: usize, label: ArrowLabel) -> Option<usize> {
        self.arrow_index.get(&(source, label)).copied()
    }

    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.incoming[v]
    }

    pub fn check_arrow(&self, id: usize) -> Result<()> {
        if id < self.arrows.len() {
            Ok(())
        } else {
            Err(Error::UnknownArrow(format!("#{id}")))
        }
    }

    /// Stable textual id: `a[i,j]@x0.x1.x2`, `b[k]` or `g[k]`.
    pub fn arrow_name(&self, id: usize) -> String {
        let a = &self.arrows[id];
        match a.label {
            ArrowLabel::Alpha { i, j } => format!("a[{i},{j}]@{}", self.vertices[a.source]),
            ArrowLabel::Beta(k) => format!("b[{k}]"),
            ArrowLabel::Gamma(k) => format!("g[{k}]"),
        }
    }

    pub fn parse_arrow(&self, name: &str) -> Result<usize> {
        let unknown = || Error::UnknownArrow(name.to_string());
        let name = name.trim();
        let bracket =
            |s: &str| -> Option<String> { s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).map(str::to_string) };
        if let Some(rest) = name.strip_prefix('a') {
            let (idx, src) = rest.split_once('@').ok_or_else(unknown)?;
            let inner = bracket(idx).ok_or_else(unknown)?;
            let (i, j) = inner.split_once(',').ok_or_else(unknown)?;
            let i: u8 = i.trim().parse().map_err(|_| unknown())?;
            let j: u8 = j.trim().parse().map_err(|_| unknown())?;
            let src: Vertex = src.parse().map_err(|_| unknown())?;
            let src = self.vertex_index(&src).map_err(|_| unknown())?;
            return self.find_arrow(src, ArrowLabel::alpha(i, j)).ok_or_else(unknown);
        }
        let (ctor, rest): (fn(u8) -> ArrowLabel, &str) = if let Some(r) = name.strip_prefix('b') {
            (ArrowLabel::Beta, r)
        } else if let Some(r) = name.strip_prefix('g') {
            (ArrowLabel::Gamma, r)
        } else {
            return Err(unknown());
        };
        let k: u8 = bracket(rest).ok_or_else(unknown)?.parse().map_err(|_| unknown())?;
        let label = ctor(k);
        self.arrows.iter().find(|a| a.label == label).map(|a| a.id).ok_or_else(unknown)
    }

    /// The path from `start` that takes the arrow with each label in turn.
    pub fn path_by_labels(&self, start: &Vertex, labels: &[ArrowLabel]) -> Result<Path> {
        let source = self.vertex_index(start)?;
        let mut at = source;
        let mut arrows = Vec::with_capacity(labels.len());
        for &l in labels {
            let a = self
                .find_arrow(at, l)
                .ok_or_else(|| Error::IllFormedPath(format!("no arrow {l} at {}", self.vertex(at))))?;
            arrows.push(a);
            at = self.arrow(a).target;
        }
        Ok(Path { source, arrows })
    }
}

/// A path `e_source a_0 a_1 ...`, composed left to right (first `a_0`, then `a_1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(v: usize) -> Self {
        Path { source: v, arrows: Vec::new() }
    }

    /// Validates composability.
    pub fn new(q: &Quiver, source: usize, arrows: Vec<usize>) -> Result<Self> {
        if source >= q.num_vertices() {
            return Err(Error::IllFormedPath(format!("no vertex #{source}")));
        }
        let mut at = source;
        for &a in &arrows {
            q.check_arrow(a).map_err(|_| Error::IllFormedPath(format!("no arrow #{a}")))?;
            let arrow = q.arrow(a);
            if arrow.source != at {
                return Err(Error::IllFormedPath(format!("{} does not start at {}", q.arrow_name(a), q.vertex(at))));
            }
            at = arrow.target;
        }
        Ok(Path { source, arrows })
    }

    /// Path through the given arrows; the source is that of the first arrow.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let first = *arrows.first().ok_or_else(|| Error::IllFormedPath("empty arrow list".into()))?;
        q.check_arrow(first).map_err(|_| Error::IllFormedPath(format!("no arrow #{first}")))?;
        Path::new(q, q.arrow(first).source, arrows)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.source, |&a| q.arrow(a).target)
    }

    pub fn display(&self, q: &Quiver) -> String {
        let mut out = format!("e_{}", q.vertex(self.source));
        for &a in &self.arrows {
            out.push(' ');
            out.push_str(&q.arrow(a).label.to_string());
        }
        out
    }
}
