//! The orientation algorithm: labels every vertex 0/1 from inside/outside
//! decisions at cut vertices, then orients edges from the labels.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::map::{bfs_distances, biconnected, BlockTree, CombMap, Orientation, Sign, Vertex};
use crate::sv::{conflict_and_embed, SideAssignment, SvContext, SvGraph};

/// Free components to flip, keyed by vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Flips(BTreeSet<(Vertex, usize)>);

impl Flips {
    pub fn none() -> Self {
        Flips::default()
    }

    pub fn flip(&mut self, v: Vertex, component: usize) {
        self.0.insert((v, component));
    }

    pub fn is_flipped(&self, v: Vertex, component: usize) -> bool {
        self.0.contains(&(v, component))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, usize)> + '_ {
        self.0.iter().copied()
    }

    /// Parses `v:c,v:c,...`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut flips = Flips::none();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (v, c) = item.split_once(':').ok_or_else(|| format!("bad flip '{item}', expected v:c"))?;
            let v = v.trim().parse().map_err(|_| format!("bad vertex in '{item}'"))?;
            let c = c.trim().parse().map_err(|_| format!("bad component in '{item}'"))?;
            flips.flip(v, c);
        }
        Ok(flips)
    }

    /// Selects the choices in `mask` from the list of (vertex, component)
    /// slots returned by [`Diagnostics::choice_slots`].
    pub fn from_mask(slots: &[(Vertex, usize)], mask: u64) -> Self {
        let mut flips = Flips::none();
        for (i, &(v, c)) in slots.iter().enumerate() {
            if mask >> i & 1 == 1 {
                flips.flip(v, c);
            }
        }
        flips
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub bipartite: bool,
    pub sv_planar: bool,
    /// Number of free conflict components at every vertex whose `S_v` was
    /// built.
    pub free_choice_count: BTreeMap<Vertex, usize>,
    /// Root of each connected component.
    pub roots: Vec<Vertex>,
    #[serde(skip)]
    pub labels: Vec<u8>,
    #[serde(skip)]
    pub parent: Vec<Option<Vertex>>,
    #[serde(skip)]
    pub sides: BTreeMap<Vertex, SideAssignment>,
}

impl Diagnostics {
    /// Every independent choice, as (vertex, free component).
    pub fn choice_slots(&self) -> Vec<(Vertex, usize)> {
        self.free_choice_count.iter().flat_map(|(&v, &n)| (0..n).map(move |c| (v, c))).collect()
    }

    pub fn total_choices(&self) -> usize {
        self.free_choice_count.values().sum()
    }
}

/// Runs the algorithm with default choices.
pub fn alg(map: &CombMap) -> (Orientation, Diagnostics) {
    alg_with_flips(map, &Flips::none())
}

/// Runs the algorithm, flipping the listed free components.
pub fn alg_with_flips(map: &CombMap, flips: &Flips) -> (Orientation, Diagnostics) {
    let nv = map.num_vertices();
    let bc = biconnected(map);
    let is_cut = bc.is_cut.clone();

    // root of every component: its least non-cut vertex
    let comp = map.component_of();
    let mut has_root = vec![false; map.num_components()];
    let mut roots = Vec::new();
    let mut is_root = vec![false; nv];
    for v in 0..nv {
        if !is_cut[v] && !has_root[comp[v]] {
            has_root[comp[v]] = true;
            is_root[v] = true;
            roots.push(v);
        }
    }
    let dist = bfs_distances(map, &roots);
    let tree = BlockTree::from_parts(map, bc, &dist);
    let mut ctx = SvContext::new(map, tree);

    // side of each block at its root
    let mut block_inside = vec![false; ctx.tree.blocks.len()];
    let mut free_choice_count = BTreeMap::new();
    let mut sides = BTreeMap::new();
    let mut sv_planar = true;
    for v in 0..nv {
        let has_loop = map.rotation(v).iter().any(|&d| map.is_loop(d));
        if !(is_cut[v] || has_loop || is_root[v]) {
            continue;
        }
        let sv: SvGraph = ctx.build(map, v, is_root[v]);
        let assignment = conflict_and_embed(&sv, |c| flips.is_flipped(v, c));
        sv_planar &= assignment.planar;
        free_choice_count.insert(v, assignment.free_components);
        for (b, br) in sv.bridges.iter().enumerate() {
            match br.kind {
                crate::sv::BridgeKind::Block(blk) => block_inside[blk] = assignment.inside[b],
                crate::sv::BridgeKind::Base if is_root[v] => {
                    for &p in &br.attachments {
                        let e = ctx.edge_of[sv.cycle[p]];
                        block_inside[ctx.tree.edge_block[e]] = assignment.inside[b];
                    }
                }
                _ => {}
            }
        }
        sides.insert(v, assignment);
    }

    // home block of every non-root vertex
    let tree = &ctx.tree;
    let mut home = vec![usize::MAX; nv];
    for (i, b) in tree.blocks.iter().enumerate() {
        if b.is_loop {
            continue;
        }
        for &u in &b.vertices {
            if u != b.root {
                home[u] = i;
            }
        }
    }

    // vertices in order of distance (counting sort)
    let maxd = dist.iter().copied().max().unwrap_or(0);
    let mut bucket = vec![0usize; maxd + 2];
    for &d in &dist {
        bucket[d + 1] += 1;
    }
    for i in 1..bucket.len() {
        bucket[i] += bucket[i - 1];
    }
    let mut by_dist = vec![0; nv];
    for v in 0..nv {
        by_dist[bucket[dist[v]]] = v;
        bucket[dist[v]] += 1;
    }

    let mut labels = vec![0u8; nv];
    let mut parent = vec![None; nv];
    for &u in &by_dist {
        if is_root[u] {
            labels[u] = 1;
            continue;
        }
        let h = home[u];
        let r = tree.blocks[h].root;
        let inside = u8::from(block_inside[h]);
        labels[u] = ((labels[r] as usize + dist[u] - dist[r] + inside as usize) % 2) as u8;
        parent[u] = map
            .rotation(u)
            .iter()
            .map(|&d| map.neighbor(d))
            .filter(|&w| dist[w] < dist[u])
            .min();
    }

    let mut signs = vec![Sign::Plus; map.num_darts()];
    for (a, b) in map.edges() {
        let (x, y) = (map.vertex_of(a), map.vertex_of(b));
        // `tail` is the dart at the vertex the edge leaves
        let tail = if x == y {
            a
        } else if labels[x] != labels[y] {
            if labels[x] == 0 {
                a
            } else {
                b
            }
        } else {
            let x_is_parent = if parent[y] == Some(x) {
                true
            } else if parent[x] == Some(y) {
                false
            } else {
                (dist[x], x) < (dist[y], y)
            };
            let (p_dart, c_dart) = if x_is_parent { (a, b) } else { (b, a) };
            if labels[x] == 0 {
                c_dart
            } else {
                p_dart
            }
        };
        let head = map.alpha(tail);
        signs[tail] = Sign::Minus;
        signs[head] = Sign::Plus;
    }

    let diagnostics = Diagnostics {
        bipartite: map.is_bipartite().is_bipartite(),
        sv_planar,
        free_choice_count,
        roots,
        labels,
        parent,
        sides,
    };
    (Orientation::from_signs_unchecked(signs), diagnostics)
}
