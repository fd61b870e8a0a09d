//! Simple undirected graphs on at most 62 vertices.
//!
//! Adjacency is stored as one `u64` bitmask per vertex. Constructors and
//! parsers that can grow a graph take an explicit vertex limit; the plain
//! variants use [`DEFAULT_MAX_VERTICES`], which keeps the exact determinant
//! pipeline at desk-scale runtimes.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default vertex limit for graphs fed to the exact pipeline.
pub const DEFAULT_MAX_VERTICES: usize = 16;

/// Hard limit imposed by the single-byte graph6 header and the bitmask rows.
pub const GRAPH6_MAX_VERTICES: usize = 62;

/// Canonical forms are packed into a `u128`, which holds the upper triangle
/// of a graph on at most 16 vertices.
pub const CANONICAL_MAX_VERTICES: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("a graph needs at least one vertex".into()));
        }
        if n > GRAPH6_MAX_VERTICES {
            return Err(Error::TooLarge { n, max: GRAPH6_MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            g.adj[u] = g.full_mask() & !(1u64 << u);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::OutOfRange(format!("a cycle needs 3 vertices, got {n}")));
        }
        let mut g = Graph::path(n)?;
        g.add_edge(n - 1, 0);
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::OutOfRange(format!("edge ({u}, {v}) on {n} vertices")));
            }
            if u == v {
                return Err(Error::OutOfRange(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Disjoint union of cliques of the given sizes (the complement of the
    /// complete multipartite graph with the same parts).
    pub fn disjoint_cliques(sizes: &[usize], max_n: usize) -> Result<Self> {
        let mut g: Option<Graph> = None;
        for &s in sizes {
            let k = Graph::complete(s)?;
            g = Some(match g {
                None => k,
                Some(h) => h.disjoint_union(&k, max_n)?,
            });
        }
        let g = g.ok_or_else(|| Error::Signature("no parts".into()))?;
        check_limit(g.n, max_n)?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "invalid edge ({u}, {v})");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Bitmask of the neighbours of `u`.
    pub fn neighbors_mask(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|&m| m == 0)
    }

    pub fn complement(&self) -> Graph {
        let full = self.full_mask();
        let adj = (0..self.n).map(|u| !self.adj[u] & full & !(1u64 << u)).collect();
        Graph { n: self.n, adj }
    }

    /// Disjoint union; vertices of `self` come first.
    pub fn disjoint_union(&self, other: &Graph, max_n: usize) -> Result<Graph> {
        let n = self.n + other.n;
        check_limit(n, max_n)?;
        let mut g = Graph::empty(n)?;
        for u in 0..self.n {
            g.adj[u] = self.adj[u];
        }
        for u in 0..other.n {
            g.adj[self.n + u] = other.adj[u] << self.n;
        }
        Ok(g)
    }

    /// Join with the default vertex limit.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        self.join_limited(other, DEFAULT_MAX_VERTICES)
    }

    /// Disjoint union plus every edge between the two vertex sets.
    pub fn join_limited(&self, other: &Graph, max_n: usize) -> Result<Graph> {
        let mut g = self.disjoint_union(other, max_n)?;
        for u in 0..self.n {
            for v in 0..other.n {
                g.add_edge(u, self.n + v);
            }
        }
        Ok(g)
    }

    /// Subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph { n: vertices.len(), adj: vec![0; vertices.len()] };
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabel so that new vertex `i` is old vertex `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        assert_eq!(order.len(), self.n);
        self.induced(order)
    }

    /// Vertex sets of the connected components, each sorted ascending, the
    /// list sorted by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let u = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[u] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            seen |= comp;
            out.push(bits(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Vertex sets of the connected components of the complement.
    pub fn complement_component_vertices(&self) -> Vec<Vec<usize>> {
        self.complement().components()
    }

    /// The join factors of `self`: induced subgraphs on the components of the
    /// complement, ordered by smallest original vertex. Each factor has a
    /// connected complement, and joining them in order gives back `self` up to
    /// relabelling.
    pub fn complement_components(&self) -> Vec<Graph> {
        self.complement_component_vertices()
            .iter()
            .map(|vs| self.induced(vs))
            .collect()
    }

    /// True when every component is a clique.
    pub fn is_disjoint_clique_union(&self) -> bool {
        self.components().iter().all(|comp| {
            comp.iter().all(|&u| self.degree(u) == comp.len() - 1)
        })
    }

    /// True when the complement is a disjoint union of cliques.
    pub fn is_complete_multipartite(&self) -> bool {
        self.complement().is_disjoint_clique_union()
    }

    /// Degree/λ/μ test. Complete and edgeless graphs are excluded, as are the
    /// imprimitive cases (disconnected graph or disconnected complement).
    pub fn is_primitive_strongly_regular(&self) -> bool {
        if self.n < 3 || self.is_complete() || self.is_edgeless() {
            return false;
        }
        if !self.is_connected() || !self.complement().is_connected() {
            return false;
        }
        self.strongly_regular_parameters().is_some()
    }

    /// `(k, λ, μ)` when the graph is regular with constant common-neighbour
    /// counts on edges and on non-edges.
    pub fn strongly_regular_parameters(&self) -> Option<(usize, usize, usize)> {
        let k = self.degree(0);
        if (0..self.n).any(|u| self.degree(u) != k) {
            return None;
        }
        let mut lambda = None;
        let mut mu = None;
        for u in 0..self.n {
            for v in u + 1..self.n {
                let common = (self.adj[u] & self.adj[v]).count_ones() as usize;
                let slot = if self.has_edge(u, v) { &mut lambda } else { &mut mu };
                match *slot {
                    None => *slot = Some(common),
                    Some(c) if c != common => return None,
                    _ => {}
                }
            }
        }
        Some((k, lambda.unwrap_or(0), mu.unwrap_or(0)))
    }

    pub fn to_graph6(&self) -> String {
        let mut out = String::with_capacity(2 + self.n * self.n / 12);
        out.push((self.n as u8 + 63) as char);
        let mut byte = 0u8;
        let mut filled = 0;
        for j in 1..self.n {
            for i in 0..j {
                byte = byte << 1 | self.has_edge(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    out.push((byte + 63) as char);
                    byte = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(((byte << (6 - filled)) + 63) as char);
        }
        out
    }

    /// Packed upper triangle (pairs `(i, j)`, `i < j`, in column-major order).
    fn code(&self) -> u128 {
        let mut code = 0u128;
        for j in 1..self.n {
            for i in 0..j {
                code = code << 1 | self.has_edge(i, j) as u128;
            }
        }
        code
    }

    /// Canonical relabelling: isomorphic graphs map to identical graphs.
    ///
    /// Vertices are first split by iterated colour refinement (degree, then
    /// multiset of neighbour colours); the maximal adjacency code over all
    /// orderings that respect the ordered cells is the canonical form.
    pub fn canonical_form(&self) -> Graph {
        assert!(self.n <= CANONICAL_MAX_VERTICES, "canonical form limited to 16 vertices");
        let colors = self.refined_colors();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (colors[v], v));
        let mut cells: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for i in 1..=self.n {
            if i == self.n || colors[order[i]] != colors[order[start]] {
                cells.push((start, i));
                start = i;
            }
        }
        let mut best: Option<(u128, Vec<usize>)> = None;
        permute_cells(&mut order, &cells, 0, &mut |perm| {
            let code = self.permuted(perm).code();
            if best.as_ref().is_none_or(|(c, _)| code > *c) {
                best = Some((code, perm.to_vec()));
            }
        });
        let (_, perm) = best.expect("at least one ordering");
        self.permuted(&perm)
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.n == other.n
            && self.edge_count() == other.edge_count()
            && self.canonical_form() == other.canonical_form()
    }

    fn refined_colors(&self) -> Vec<usize> {
        let mut colors: Vec<usize> = (0..self.n).map(|u| self.degree(u)).collect();
        let mut classes = count_distinct(&colors);
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..self.n)
                .map(|u| {
                    let mut nb: Vec<usize> = self.neighbors(u).map(|v| colors[v]).collect();
                    nb.sort_unstable();
                    (colors[u], nb)
                })
                .collect();
            let mut distinct = sigs.clone();
            distinct.sort();
            distinct.dedup();
            let rank: HashMap<&(usize, Vec<usize>), usize> =
                distinct.iter().enumerate().map(|(i, s)| (s, i)).collect();
            colors = sigs.iter().map(|s| rank[s]).collect();
            let next = distinct.len();
            if next == classes {
                return colors;
            }
            classes = next;
        }
    }
}

fn count_distinct(xs: &[usize]) -> usize {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn permute_cells(
    order: &mut Vec<usize>,
    cells: &[(usize, usize)],
    cell: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    if cell == cells.len() {
        visit(order);
        return;
    }
    let (lo, hi) = cells[cell];
    permute_range(order, lo, hi, &mut |ord| permute_cells(ord, cells, cell + 1, visit));
}

fn permute_range(
    order: &mut Vec<usize>,
    pos: usize,
    hi: usize,
    visit: &mut dyn FnMut(&mut Vec<usize>),
) {
    if hi - pos <= 1 {
        visit(order);
        return;
    }
    for i in pos..hi {
        order.swap(pos, i);
        permute_range(order, pos + 1, hi, visit);
        order.swap(pos, i);
    }
}

fn bits(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

fn check_limit(n: usize, max_n: usize) -> Result<()> {
    if n > max_n.min(GRAPH6_MAX_VERTICES) {
        return Err(Error::TooLarge { n, max: max_n.min(GRAPH6_MAX_VERTICES) });
    }
    Ok(())
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    parse_graph6_limited(text, DEFAULT_MAX_VERTICES)
}

/// Parse a graph6 word. An optional `>>graph6<<` header and surrounding
/// whitespace are accepted; padding bits in the last byte are ignored.
pub fn parse_graph6_limited(text: &str, max_n: usize) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let (&head, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty input".into()))?;
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Graph6(format!(
            "byte {} at offset {pos} outside 63..=126",
            bytes[pos]
        )));
    }
    if head == 126 {
        return Err(Error::TooLarge { n: 63, max: max_n.min(GRAPH6_MAX_VERTICES) });
    }
    let n = (head - 63) as usize;
    if n == 0 {
        return Err(Error::Graph6("zero vertices".into()));
    }
    check_limit(n, max_n)?;
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "{} edge bytes for n = {n}, expected {expected}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    parse_edge_list_limited(text, DEFAULT_MAX_VERTICES)
}

/// Edge-list text: the first non-comment line holds `n`, each further line
/// `u v` with 0-based indices. `#` starts a comment.
pub fn parse_edge_list_limited(text: &str, max_n: usize) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |reason: String| Error::EdgeList { line: line_no, reason };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match graph.as_mut() {
            None => {
                if fields.len() != 1 {
                    return Err(err("expected the vertex count".into()));
                }
                let n: usize = fields[0]
                    .parse()
                    .map_err(|_| err(format!("invalid vertex count {:?}", fields[0])))?;
                if n == 0 {
                    return Err(err("vertex count must be positive".into()));
                }
                check_limit(n, max_n)?;
                graph = Some(Graph::empty(n)?);
            }
            Some(g) => {
                if fields.len() != 2 {
                    return Err(err("expected two vertex indices".into()));
                }
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| err(format!("invalid vertex index {s:?}")))
                };
                let (u, v) = (parse(fields[0])?, parse(fields[1])?);
                if u >= g.n || v >= g.n {
                    return Err(err(format!("vertex index out of range for n = {}", g.n)));
                }
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                g.add_edge(u, v);
            }
        }
    }
    graph.ok_or_else(|| Error::EdgeList { line: 0, reason: "no vertex count".into() })
}

/// A multiset of positive part sizes, stored in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultipartiteSignature {
    parts: Vec<usize>,
}

impl MultipartiteSignature {
    pub fn new(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Signature("at least one part is required".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Signature("parts must be positive".into()));
        }
        let mut parts = parts.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(MultipartiteSignature { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts equal to the largest part.
    pub fn max_multiplicity(&self) -> usize {
        self.parts.iter().filter(|&&p| p == self.parts[0]).count()
    }

    /// All signatures with the given total, parts in descending order.
    pub fn partitions(total: usize) -> Vec<MultipartiteSignature> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(total, total, &mut Vec::new(), &mut out);
        out.into_iter().map(|parts| MultipartiteSignature { parts }).collect()
    }
}

pub fn complete_multipartite(sig: &MultipartiteSignature) -> Result<Graph> {
    complete_multipartite_limited(sig, DEFAULT_MAX_VERTICES)
}

/// `K_{n1,...,nm}`: the iterated join of edgeless graphs on the parts.
pub fn complete_multipartite_limited(sig: &MultipartiteSignature, max_n: usize) -> Result<Graph> {
    check_limit(sig.total(), max_n)?;
    Ok(Graph::disjoint_cliques(sig.parts(), max_n)?.complement())
}

/// All graphs on `n` vertices up to isomorphism, in canonical form and
/// sorted by canonical code.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > CANONICAL_MAX_VERTICES {
        return Err(Error::OutOfRange(format!("enumeration supports 1..=16 vertices, got {n}")));
    }
    let mut layer = vec![Graph::empty(1)?];
    for m in 2..=n {
        let mut seen: HashMap<u128, Graph> = HashMap::new();
        for g in &layer {
            for mask in 0..(1u64 << (m - 1)) {
                let mut h = Graph::empty(m)?;
                for u in 0..m - 1 {
                    h.adj[u] = g.adj[u];
                }
                for u in bits(mask) {
                    h.add_edge(u, m - 1);
                }
                let canon = h.canonical_form();
                seen.entry(canon.code()).or_insert(canon);
            }
        }
        let mut next: Vec<(u128, Graph)> = seen.into_iter().collect();
        next.sort_by_key(|(c, _)| *c);
        layer = next.into_iter().map(|(_, g)| g).collect();
    }
    Ok(layer)
}
