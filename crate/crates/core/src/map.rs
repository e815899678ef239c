//! Combinatorial maps (rotation systems).
//!
//! A map is a dart set with a fixpoint-free involution `alpha` pairing darts
//! into edges and a permutation `tau` whose cycles are the vertex rotations.
//! Faces are the cycles of `tau ∘ alpha`.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::ops::Neg;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Dart = usize;
pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),
    #[error("map is not connected")]
    Disconnected,
    #[error("vertex {0} out of range")]
    NoSuchVertex(Vertex),
    #[error("malformed JSON map: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Sign per dart. An edge is directed from its `Minus` dart (tail) to its
/// `Plus` dart (tip).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation(Vec<Sign>);

impl Orientation {
    /// Validates `sign(d) * sign(alpha(d)) == -1` for every dart.
    pub fn new(map: &CombMap, signs: Vec<Sign>) -> Result<Self, MapError> {
        if signs.len() != map.num_darts() {
            return Err(MapError::InvalidOrientation(format!(
                "{} signs for {} darts",
                signs.len(),
                map.num_darts()
            )));
        }
        for d in 0..signs.len() {
            if signs[d] == signs[map.alpha(d)] {
                return Err(MapError::InvalidOrientation(format!(
                    "darts {d} and {} share a sign",
                    map.alpha(d)
                )));
            }
        }
        Ok(Orientation(signs))
    }

    pub(crate) fn from_signs_unchecked(signs: Vec<Sign>) -> Self {
        Orientation(signs)
    }

    /// Orients every edge from its smaller dart to its larger dart.
    pub fn by_dart_order(map: &CombMap) -> Self {
        Orientation(
            (0..map.num_darts())
                .map(|d| if d < map.alpha(d) { Sign::Minus } else { Sign::Plus })
                .collect(),
        )
    }

    /// The orientation selected by bit `k` of `mask` for the `k`-th edge (in
    /// [`CombMap::edges`] order): a set bit makes the smaller dart the tip.
    pub fn from_edge_mask(map: &CombMap, mask: u64) -> Self {
        let mut signs = vec![Sign::Minus; map.num_darts()];
        for (k, (a, b)) in map.edges().enumerate() {
            let flip = (mask >> k) & 1 == 1;
            signs[a] = if flip { Sign::Plus } else { Sign::Minus };
            signs[b] = -signs[a];
        }
        Orientation(signs)
    }

    pub fn sign(&self, d: Dart) -> Sign {
        self.0[d]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn reversed(&self) -> Self {
        Orientation(self.0.iter().map(|&s| -s).collect())
    }
}

/// A combinatorial map `(D; tau, alpha)`.
///
/// Vertices are numbered in the order their rotations were supplied.
/// Equality compares `alpha` and `tau` only, i.e. dart-labelled equality.
#[derive(Debug, Clone)]
pub struct CombMap {
    alpha: Vec<Dart>,
    tau: Vec<Dart>,
    tau_inv: Vec<Dart>,
    vertex_of: Vec<Vertex>,
    rotations: Vec<Vec<Dart>>,
}

impl PartialEq for CombMap {
    fn eq(&self, other: &Self) -> bool {
        self.alpha == other.alpha && self.tau == other.tau
    }
}

impl Eq for CombMap {}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapDoc {
    pub vertices: Vec<Vec<Dart>>,
    pub alpha: Vec<[Dart; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<i8>>,
}

impl CombMap {
    /// Builds a map from vertex rotations and edge pairs.
    pub fn new(vertex_cycles: Vec<Vec<Dart>>, alpha_pairs: &[(Dart, Dart)]) -> Result<Self, MapError> {
        let n: usize = vertex_cycles.iter().map(Vec::len).sum();
        let mut tau = vec![usize::MAX; n];
        let mut vertex_of = vec![usize::MAX; n];
        for (v, cyc) in vertex_cycles.iter().enumerate() {
            if cyc.is_empty() {
                return Err(MapError::InvalidMap(format!("vertex {v} has no darts")));
            }
            for (k, &d) in cyc.iter().enumerate() {
                if d >= n {
                    return Err(MapError::InvalidMap(format!("dart {d} out of range 0..{n}")));
                }
                if vertex_of[d] != usize::MAX {
                    return Err(MapError::InvalidMap(format!("dart {d} repeated in rotations")));
                }
                vertex_of[d] = v;
                tau[d] = cyc[(k + 1) % cyc.len()];
            }
        }
        let mut alpha = vec![usize::MAX; n];
        for &(a, b) in alpha_pairs {
            if a >= n || b >= n {
                return Err(MapError::InvalidMap(format!("pair ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(MapError::InvalidMap(format!("alpha fixes dart {a}")));
            }
            if alpha[a] != usize::MAX || alpha[b] != usize::MAX {
                return Err(MapError::InvalidMap(format!("dart in pair ({a}, {b}) repeated")));
            }
            alpha[a] = b;
            alpha[b] = a;
        }
        if let Some(d) = alpha.iter().position(|&x| x == usize::MAX) {
            return Err(MapError::InvalidMap(format!("dart {d} has no alpha partner")));
        }
        Ok(Self::assemble(alpha, tau, vertex_cycles, vertex_of))
    }

    /// Builds a map from permutation arrays; vertices are numbered by their
    /// least dart.
    pub fn from_permutations(tau: Vec<Dart>, alpha: Vec<Dart>) -> Result<Self, MapError> {
        let n = tau.len();
        if alpha.len() != n {
            return Err(MapError::InvalidMap("tau and alpha differ in length".into()));
        }
        let mut seen = vec![false; n];
        for &t in &tau {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return Err(MapError::InvalidMap("tau is not a permutation".into()));
            }
        }
        for d in 0..n {
            if alpha[d] >= n || alpha[d] == d || alpha[alpha[d]] != d {
                return Err(MapError::InvalidMap(format!("alpha is not a fixpoint-free involution at {d}")));
            }
        }
        Ok(Self::from_permutations_unchecked(tau, alpha))
    }

    pub(crate) fn from_permutations_unchecked(tau: Vec<Dart>, alpha: Vec<Dart>) -> Self {
        let n = tau.len();
        let mut vertex_of = vec![usize::MAX; n];
        let mut rotations = Vec::new();
        for start in 0..n {
            if vertex_of[start] != usize::MAX {
                continue;
            }
            let v = rotations.len();
            let mut cyc = Vec::new();
            let mut d = start;
            loop {
                vertex_of[d] = v;
                cyc.push(d);
                d = tau[d];
                if d == start {
                    break;
                }
            }
            rotations.push(cyc);
        }
        Self::assemble(alpha, tau, rotations, vertex_of)
    }

    fn assemble(alpha: Vec<Dart>, tau: Vec<Dart>, rotations: Vec<Vec<Dart>>, vertex_of: Vec<Vertex>) -> Self {
        let mut tau_inv = vec![0; tau.len()];
        for (d, &t) in tau.iter().enumerate() {
            tau_inv[t] = d;
        }
        CombMap { alpha, tau, tau_inv, vertex_of, rotations }
    }

    pub fn from_doc(doc: &MapDoc) -> Result<(Self, Option<Orientation>), MapError> {
        let pairs: Vec<(Dart, Dart)> = doc.alpha.iter().map(|p| (p[0], p[1])).collect();
        let map = CombMap::new(doc.vertices.clone(), &pairs)?;
        let orientation = match &doc.orientation {
            None => None,
            Some(vals) => {
                let signs = vals
                    .iter()
                    .map(|&v| {
                        Sign::from_value(v as i64)
                            .ok_or_else(|| MapError::InvalidOrientation(format!("sign {v} is not ±1")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Some(Orientation::new(&map, signs)?)
            }
        };
        Ok((map, orientation))
    }

    pub fn to_doc(&self, orientation: Option<&Orientation>) -> MapDoc {
        MapDoc {
            vertices: self.rotations.clone(),
            alpha: self.edges().map(|(a, b)| [a, b]).collect(),
            orientation: orientation.map(|o| o.signs().iter().map(|s| s.value()).collect()),
        }
    }

    pub fn from_json(text: &str) -> Result<(Self, Option<Orientation>), MapError> {
        let doc: MapDoc = serde_json::from_str(text).map_err(|e| MapError::Json(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn to_json(&self, orientation: Option<&Orientation>) -> String {
        serde_json::to_string(&self.to_doc(orientation)).expect("map documents serialize")
    }

    pub fn num_darts(&self) -> usize {
        self.alpha.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_edges(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d]
    }

    pub fn tau(&self, d: Dart) -> Dart {
        self.tau[d]
    }

    pub fn tau_inv(&self, d: Dart) -> Dart {
        self.tau_inv[d]
    }

    pub fn alpha_perm(&self) -> &[Dart] {
        &self.alpha
    }

    pub fn tau_perm(&self) -> &[Dart] {
        &self.tau
    }

    pub fn vertex_of(&self, d: Dart) -> Vertex {
        self.vertex_of[d]
    }

    /// Rotation of vertex `v`, starting at the dart it was built with.
    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotations
    }

    /// Edges as `(d, alpha(d))` with `d < alpha(d)`, ordered by `d`.
    pub fn edges(&self) -> impl Iterator<Item = (Dart, Dart)> + '_ {
        self.alpha.iter().enumerate().filter(|(d, a)| d < *a).map(|(d, &a)| (d, a))
    }

    /// Edge index of every dart, matching [`CombMap::edges`] order.
    pub fn edge_index(&self) -> Vec<EdgeId> {
        let mut idx = vec![0; self.num_darts()];
        for (k, (a, b)) in self.edges().enumerate() {
            idx[a] = k;
            idx[b] = k;
        }
        idx
    }

    pub fn is_loop(&self, d: Dart) -> bool {
        self.vertex_of[d] == self.vertex_of[self.alpha[d]]
    }

    /// Vertex at the other end of the edge of `d`.
    pub fn neighbor(&self, d: Dart) -> Vertex {
        self.vertex_of[self.alpha[d]]
    }

    /// Orbits of `tau ∘ alpha`, each starting at its least dart.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; self.num_darts()];
        let mut out = Vec::new();
        for start in 0..self.num_darts() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.tau[self.alpha[d]];
            }
            out.push(face);
        }
        out
    }

    pub fn num_faces(&self) -> usize {
        count_face_orbits(&self.tau, &self.alpha)
    }

    /// Connected components of the underlying graph, as sorted vertex lists
    /// ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let comp = self.component_of();
        let k = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); k];
        for (v, &c) in comp.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Component index per vertex, numbered by least vertex.
    pub fn component_of(&self) -> Vec<usize> {
        let nv = self.num_vertices();
        let mut comp = vec![usize::MAX; nv];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..nv {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &d in &self.rotations[v] {
                    let w = self.neighbor(d);
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn num_components(&self) -> usize {
        self.connected_components().len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    /// Orientable genus from Euler's relation `V - E + F = 2k - 2g`.
    pub fn genus(&self) -> usize {
        let k = self.num_components() as i64;
        let g = (2 * k - self.euler_characteristic()) / 2;
        debug_assert!(g >= 0 && (2 * k - self.euler_characteristic()) % 2 == 0);
        g as usize
    }

    /// Two-colours the underlying graph, or returns an odd closed walk.
    pub fn is_bipartite(&self) -> Bipartition {
        let nv = self.num_vertices();
        let mut color = vec![u8::MAX; nv];
        let mut parent = vec![usize::MAX; nv];
        let mut queue = VecDeque::new();
        for s in 0..nv {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &d in &self.rotations[v] {
                    let w = self.neighbor(d);
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        parent[w] = v;
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return Bipartition::OddWalk(odd_walk(&parent, v, w));
                    }
                }
            }
        }
        Bipartition::Colors(color)
    }

    /// Reverses every vertex rotation.
    pub fn mirror(&self) -> CombMap {
        let rotations = self
            .rotations
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r[1..].reverse();
                r
            })
            .collect::<Vec<_>>();
        let pairs: Vec<_> = self.edges().collect();
        CombMap::new(rotations, &pairs).expect("mirror of a valid map is valid")
    }

    /// DOT rendering of the underlying multigraph. With an orientation the
    /// edges are directed tail to tip.
    pub fn to_dot(&self, orientation: Option<&Orientation>, vertex_names: Option<&[String]>) -> String {
        let mut out = String::new();
        let (kind, arrow) = if orientation.is_some() { ("digraph", "->") } else { ("graph", "--") };
        let _ = writeln!(out, "{kind} map {{");
        for v in 0..self.num_vertices() {
            let name = vertex_names.map_or_else(|| format!("v{v}"), |n| n[v].clone());
            let _ = writeln!(out, "  {v} [label=\"{}\"];", name.replace('"', "\\\""));
        }
        for (a, b) in self.edges() {
            let (tail, tip) = match orientation {
                Some(o) if o.sign(a) == Sign::Plus => (b, a),
                _ => (a, b),
            };
            let _ = writeln!(
                out,
                "  {} {arrow} {} [label=\"{tail}/{tip}\"];",
                self.vertex_of(tail),
                self.vertex_of(tip)
            );
        }
        out.push_str("}\n");
        out
    }

    /// Blocks, cut vertices and block roots for a connected map.
    pub fn block_cut_tree(&self, root: Vertex) -> Result<BlockTree, MapError> {
        if root >= self.num_vertices() {
            return Err(MapError::NoSuchVertex(root));
        }
        if self.num_components() != 1 {
            return Err(MapError::Disconnected);
        }
        let bc = biconnected(self);
        let dist = bfs_distances(self, &[root]);
        Ok(BlockTree::from_parts(self, bc, &dist))
    }
}

pub(crate) fn count_face_orbits(tau: &[Dart], alpha: &[Dart]) -> usize {
    let mut seen = vec![false; tau.len()];
    let mut faces = 0;
    for start in 0..tau.len() {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = tau[alpha[d]];
        }
    }
    faces
}

fn odd_walk(parent: &[usize], v: Vertex, w: Vertex) -> Vec<Vertex> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pv = path(v);
    let pw = path(w);
    // strip the common ancestry above the lowest common ancestor
    let mut i = pv.len();
    let mut j = pw.len();
    while i > 1 && j > 1 && pv[i - 2] == pw[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut walk: Vec<Vertex> = pv[..i].to_vec();
    walk.extend(pw[..j - 1].iter().rev());
    walk
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    Colors(Vec<u8>),
    /// Closed walk `v0 .. vk` (implicitly closed by the edge `vk v0`) of odd
    /// length.
    OddWalk(Vec<Vertex>),
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Colors(_))
    }
}

/// Breadth-first distances from a set of sources; unreachable vertices get
/// `usize::MAX`.
pub(crate) fn bfs_distances(map: &CombMap, sources: &[Vertex]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; map.num_vertices()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = 0;
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        for &d in map.rotation(v) {
            let w = map.neighbor(d);
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Raw biconnected decomposition: block id per edge, and the cut vertices.
pub(crate) struct Biconnected {
    pub edge_block: Vec<usize>,
    pub num_blocks: usize,
    pub is_cut: Vec<bool>,
    pub loop_block: Vec<bool>,
}

/// Iterative Hopcroft–Tarjan over the underlying multigraph. Loops form their
/// own blocks; parallel edges are told apart by edge id.
pub(crate) fn biconnected(map: &CombMap) -> Biconnected {
    let nv = map.num_vertices();
    let edge_of = map.edge_index();
    let ne = map.num_edges();
    let mut edge_block = vec![usize::MAX; ne];
    let mut loop_block = Vec::new();
    let mut num_blocks = 0;
    let mut is_cut = vec![false; nv];
    let mut disc = vec![usize::MAX; nv];
    let mut low = vec![0usize; nv];
    let mut time = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    // frame: (vertex, parent edge, next rotation index)
    let mut stack: Vec<(Vertex, usize, usize)> = Vec::new();

    for (a, b) in map.edges() {
        if map.vertex_of(a) == map.vertex_of(b) {
            edge_block[edge_of[a]] = num_blocks;
            loop_block.push(true);
            num_blocks += 1;
        }
    }

    for s in 0..nv {
        if disc[s] != usize::MAX {
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        let mut root_children = 0;
        stack.push((s, usize::MAX, 0));
        while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
            let rot = map.rotation(v);
            if *idx < rot.len() {
                let d = rot[*idx];
                *idx += 1;
                let e = edge_of[d];
                let w = map.neighbor(d);
                if w == v || e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push(e);
                    if v == s {
                        root_children += 1;
                    }
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push(e);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        if u != s {
                            is_cut[u] = true;
                        }
                        while let Some(e) = edge_stack.pop() {
                            edge_block[e] = num_blocks;
                            if e == pe {
                                break;
                            }
                        }
                        loop_block.push(false);
                        num_blocks += 1;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[s] = true;
        }
    }
    Biconnected { edge_block, num_blocks, is_cut, loop_block }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<Vertex>,
    /// Vertex of the block closest to the map root.
    pub root: Vertex,
    pub is_loop: bool,
}

/// Tree of 2-connected blocks. Loops are single-edge blocks of their own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTree {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
    /// Block of each edge, in [`CombMap::edges`] order.
    pub edge_block: Vec<usize>,
    /// Parent block of each block (the block containing its root as a
    /// non-root vertex); `None` for blocks rooted at the map root.
    pub parent: Vec<Option<usize>>,
}

impl BlockTree {
    pub(crate) fn from_parts(map: &CombMap, bc: Biconnected, dist: &[usize]) -> BlockTree {
        let mut blocks: Vec<Block> = (0..bc.num_blocks)
            .map(|b| Block { edges: Vec::new(), vertices: Vec::new(), root: usize::MAX, is_loop: bc.loop_block[b] })
            .collect();
        let mut mark = vec![usize::MAX; map.num_vertices()];
        for (k, (a, b)) in map.edges().enumerate() {
            let blk = bc.edge_block[k];
            blocks[blk].edges.push(k);
            for v in [map.vertex_of(a), map.vertex_of(b)] {
                if mark[v] != blk {
                    mark[v] = blk;
                    blocks[blk].vertices.push(v);
                }
            }
        }
        for b in &mut blocks {
            b.vertices.sort_unstable();
            b.root = *b.vertices.iter().min_by_key(|&&v| (dist[v], v)).expect("blocks are non-empty");
        }
        // the block in which a vertex is not the root is unique; remember it
        let mut home = vec![usize::MAX; map.num_vertices()];
        for (i, b) in blocks.iter().enumerate() {
            for &v in &b.vertices {
                if v != b.root {
                    home[v] = i;
                }
            }
        }
        let parent = blocks.iter().map(|b| (home[b.root] != usize::MAX).then_some(home[b.root])).collect();
        let cut_vertices = (0..map.num_vertices()).filter(|&v| bc.is_cut[v]).collect();
        BlockTree { blocks, cut_vertices, edge_block: bc.edge_block, parent }
    }
}
