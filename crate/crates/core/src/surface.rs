//! The thickened-surface realization of a braid word and its genus.
//!
//! The graph is `C₀ ∪ β ∪ C₁`: the two end circles become cycles through the
//! marked points, each regular crossing becomes a 4-valent vertex, and virtual
//! crossings leave no trace (the two bands just pass by each other). All
//! rotations are counterclockwise in the plane picture where time runs left to
//! right and positions run bottom to top. The genus is the one left after
//! capping every boundary component except the two outer ones along `C₀` and
//! `C₁`.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::BraidWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexRole {
    /// Marked point `k` (1-based) on the start circle.
    Start(usize),
    /// Marked point `k` (1-based) on the end circle.
    End(usize),
    /// Regular crossing produced by the letter at this (0-based) index.
    Crossing(usize),
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexRole::Start(k) => write!(f, "c0:{k}"),
            VertexRole::End(k) => write!(f, "c1:{k}"),
            VertexRole::Crossing(i) => write!(f, "x:{i}"),
        }
    }
}

impl VertexRole {
    fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Format(format!("bad vertex role `{text}`"));
        let (tag, value) = text.split_once(':').ok_or_else(bad)?;
        let value: usize = value.parse().map_err(|_| bad())?;
        match tag {
            "c0" => Ok(VertexRole::Start(value)),
            "c1" => Ok(VertexRole::End(value)),
            "x" => Ok(VertexRole::Crossing(value)),
            _ => Err(bad()),
        }
    }
}

/// A connected graph with a rotation system. Half-edges are numbered
/// `0..half_edge_count()`; each appears in exactly one rotation and one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    n: usize,
    roles: Vec<VertexRole>,
    rotations: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
    mate: Vec<usize>,
    next_around: Vec<usize>,
    vertex_of: Vec<usize>,
}

impl RibbonGraph {
    pub fn from_parts(
        n: usize,
        roles: Vec<VertexRole>,
        rotations: Vec<Vec<usize>>,
        edges: Vec<[usize; 2]>,
    ) -> Result<Self> {
        if roles.len() != rotations.len() {
            return Err(Error::MalformedRotation("role and rotation counts differ".into()));
        }
        let count = rotations.iter().map(Vec::len).sum::<usize>();
        let mut vertex_of = vec![usize::MAX; count];
        let mut next_around = vec![usize::MAX; count];
        for (v, rotation) in rotations.iter().enumerate() {
            for (i, &h) in rotation.iter().enumerate() {
                if h >= count || vertex_of[h] != usize::MAX {
                    return Err(Error::MalformedRotation(format!(
                        "half-edge {h} repeated or out of range"
                    )));
                }
                vertex_of[h] = v;
                next_around[h] = rotation[(i + 1) % rotation.len()];
            }
        }
        let mut mate = vec![usize::MAX; count];
        for &[a, b] in &edges {
            if a >= count || b >= count || a == b || mate[a] != usize::MAX || mate[b] != usize::MAX {
                return Err(Error::MalformedRotation(format!("bad edge {a}-{b}")));
            }
            mate[a] = b;
            mate[b] = a;
        }
        if let Some(h) = mate.iter().position(|&m| m == usize::MAX) {
            return Err(Error::MalformedRotation(format!("half-edge {h} is not on an edge")));
        }
        Ok(RibbonGraph {
            n,
            roles,
            rotations,
            edges,
            mate,
            next_around,
            vertex_of,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn half_edge_count(&self) -> usize {
        self.mate.len()
    }

    pub fn roles(&self) -> &[VertexRole] {
        &self.roles
    }

    pub fn rotation(&self, vertex: usize) -> &[usize] {
        &self.rotations[vertex]
    }

    pub fn vertex_of(&self, half_edge: usize) -> usize {
        self.vertex_of[half_edge]
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.rotations[vertex].len()
    }

    pub fn is_connected(&self) -> bool {
        if self.rotations.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            for &h in &self.rotations[v] {
                stack.push(self.vertex_of[self.mate[h]]);
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Graph-description text: a header, one `v` line per vertex with its
    /// rotation, one `e` line per edge, in construction order.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let bad = |line: &str| Error::Format(format!("bad ribbon line `{line}`"));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| bad(""))?;
        let n: usize = header
            .strip_prefix("ribbon n=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad(header))?;
        let (mut roles, mut rotations, mut edges) = (Vec::new(), Vec::new(), Vec::new());
        for line in lines {
            let mut fields = line.split_whitespace();
            match fields.next() {
                Some("v") => {
                    let id: usize = fields.next().and_then(|f| f.parse().ok()).ok_or_else(|| bad(line))?;
                    if id != roles.len() {
                        return Err(bad(line));
                    }
                    roles.push(VertexRole::parse(fields.next().ok_or_else(|| bad(line))?)?);
                    let rotation = fields
                        .map(|f| f.parse::<usize>().map_err(|_| bad(line)))
                        .collect::<Result<Vec<_>>>()?;
                    rotations.push(rotation);
                }
                Some("e") => {
                    let ends = fields
                        .map(|f| f.parse::<usize>().map_err(|_| bad(line)))
                        .collect::<Result<Vec<_>>>()?;
                    match ends[..] {
                        [a, b] => edges.push([a, b]),
                        _ => return Err(bad(line)),
                    }
                }
                _ => return Err(bad(line)),
            }
        }
        RibbonGraph::from_parts(n, roles, rotations, edges)
    }
}

impl fmt::Display for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ribbon n={}", self.n)?;
        for (v, (role, rotation)) in self.roles.iter().zip(&self.rotations).enumerate() {
            write!(f, "v {v} {role}")?;
            for h in rotation {
                write!(f, " {h}")?;
            }
            writeln!(f)?;
        }
        for [a, b] in &self.edges {
            writeln!(f, "e {a} {b}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceSummary {
    pub vertices: usize,
    pub edges: usize,
    pub boundary_count: usize,
    /// Indices into [`boundary_components`] for the `C₀` and `C₁` sides.
    pub distinguished: (usize, usize),
    pub genus: usize,
}

impl SurfaceSummary {
    pub fn euler(&self) -> i64 {
        self.vertices as i64 - self.edges as i64
    }
}

struct Builder {
    roles: Vec<VertexRole>,
    rotations: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
    next_half_edge: usize,
}

impl Builder {
    fn vertex(&mut self, role: VertexRole, degree: usize) -> Vec<usize> {
        let darts: Vec<usize> = (self.next_half_edge..self.next_half_edge + degree).collect();
        self.next_half_edge += degree;
        self.roles.push(role);
        darts
    }
}

pub fn build_ribbon_graph(w: &BraidWord) -> RibbonGraph {
    let n = w.n();
    let mut b = Builder {
        roles: Vec::new(),
        rotations: Vec::new(),
        edges: Vec::new(),
        next_half_edge: 0,
    };

    // marked point darts: [strand, up, down]; east, north, south on C₀
    let mut start = Vec::with_capacity(n);
    for k in 1..=n {
        let d = b.vertex(VertexRole::Start(k), 3);
        b.rotations.push(vec![d[0], d[1], d[2]]);
        start.push(d);
    }
    for k in 0..n {
        b.edges.push([start[k][1], start[(k + 1) % n][2]]);
    }

    // pending[pos] is the open strand dart currently occupying slot pos
    let mut pending: Vec<usize> = start.iter().map(|d| d[0]).collect();
    for (idx, letter) in w.letters().iter().enumerate() {
        let (lo, hi) = (letter.index() - 1, letter.index());
        if !letter.is_sigma() {
            pending.swap(lo, hi);
            continue;
        }
        // [in-lower, out-lower, out-upper, in-upper] is counterclockwise
        let d = b.vertex(VertexRole::Crossing(idx), 4);
        b.rotations.push(d.clone());
        b.edges.push([pending[lo], d[0]]);
        b.edges.push([pending[hi], d[3]]);
        pending[lo] = d[1];
        pending[hi] = d[2];
    }

    // on C₁ the strand arrives from the west: [up, strand, down]
    let mut end = Vec::with_capacity(n);
    for k in 1..=n {
        let d = b.vertex(VertexRole::End(k), 3);
        b.rotations.push(vec![d[1], d[0], d[2]]);
        end.push(d);
    }
    for k in 0..n {
        b.edges.push([pending[k], end[k][0]]);
    }
    for k in 0..n {
        b.edges.push([end[k][1], end[(k + 1) % n][2]]);
    }

    RibbonGraph::from_parts(n, b.roles, b.rotations, b.edges).expect("construction is well formed")
}

/// Boundary cycles of the thickened graph: orbits of `h ↦ next_around(mate(h))`,
/// each starting at its least half-edge, sorted by that half-edge. Isolated
/// vertices contribute one empty cycle each, listed last.
pub fn boundary_components(rg: &RibbonGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; rg.half_edge_count()];
    let mut cycles = Vec::new();
    for start in 0..rg.half_edge_count() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            cycle.push(h);
            h = rg.next_around[rg.mate[h]];
        }
        cycles.push(cycle);
    }
    // an isolated vertex thickens to a disc with one rim and no corners
    cycles.extend(rg.rotations.iter().filter(|r| r.is_empty()).map(|_| Vec::new()));
    cycles
}

/// The boundary cycles running along the outer side of `C₀` and of `C₁`.
pub fn identify_distinguished(rg: &RibbonGraph) -> Result<(usize, usize)> {
    let cycles = boundary_components(rg);
    identify_in(rg, &cycles)
}

fn identify_in(rg: &RibbonGraph, cycles: &[Vec<usize>]) -> Result<(usize, usize)> {
    let cycle_of = |h: usize| {
        cycles
            .iter()
            .position(|c| c.contains(&h))
            .expect("every half-edge is on a cycle")
    };
    let marked = |want: fn(&VertexRole) -> bool| {
        rg.roles
            .iter()
            .position(want)
            .ok_or_else(|| Error::MalformedRotation("missing end circle".into()))
    };
    // the outer corner at a marked point sits between its two circle arcs;
    // the face entering that corner leaves along the dart after `up` (C₀) or
    // after `down` (C₁) in the rotation
    let v0 = marked(|r| matches!(r, VertexRole::Start(_)))?;
    let v1 = marked(|r| matches!(r, VertexRole::End(_)))?;
    let outer = |v: usize, strand_first: bool| {
        let rot = rg.rotation(v);
        if rot.len() != 3 {
            return Err(Error::MalformedRotation(format!(
                "marked vertex {v} has degree {}",
                rot.len()
            )));
        }
        // C₀ rotation is [strand, up, down]: corner (up, down), face through down
        // C₁ rotation is [up, strand, down]: corner (down, up), face through up
        Ok(if strand_first { rot[2] } else { rot[0] })
    };
    let c0 = cycle_of(outer(v0, true)?);
    let c1 = cycle_of(outer(v1, false)?);
    if c0 == c1 {
        return Err(Error::AmbiguousDistinguished);
    }
    Ok((c0, c1))
}

pub fn summarize(rg: &RibbonGraph) -> Result<SurfaceSummary> {
    let cycles = boundary_components(rg);
    let distinguished = identify_in(rg, &cycles)?;
    let (v, e, b) = (rg.vertex_count() as i64, rg.edge_count() as i64, cycles.len() as i64);
    // 2 - 2g - b = V - E, and capping b - 2 components leaves g unchanged
    let twice_genus = 2 - b - (v - e);
    if twice_genus < 0 || twice_genus % 2 != 0 || !rg.is_connected() {
        return Err(Error::MalformedRotation(format!("V={v} E={e} b={b} gives no surface")));
    }
    Ok(SurfaceSummary {
        vertices: rg.vertex_count(),
        edges: rg.edge_count(),
        boundary_count: cycles.len(),
        distinguished,
        genus: (twice_genus / 2) as usize,
    })
}

pub fn canonical_genus(w: &BraidWord) -> usize {
    summarize(&build_ribbon_graph(w))
        .expect("constructed graphs are surfaces")
        .genus
}
