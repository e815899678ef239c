//! The auxiliary graph `S_v` of a vertex and its inside/outside decisions.
//!
//! `S_v` is the cycle of darts around `v` together with one extra vertex per
//! bridge: the component of `M - v` containing the root, every other
//! component, and every loop at `v`. Each bridge is joined to the cycle
//! positions of the darts leading into it. Since the cycle has only
//! single-vertex bridges, `S_v` is planar exactly when the bridges can be
//! split into two sides with no two interleaving bridges on the same side.

use serde::Serialize;

use crate::map::{bfs_distances, biconnected, BlockTree, CombMap, Dart, EdgeId, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BridgeKind {
    /// The component containing the root.
    Base,
    /// A component of `M - v` hanging off `v`, named by its block at `v`.
    Block(usize),
    /// A loop at `v`, named by its edge.
    Loop(EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bridge {
    pub kind: BridgeKind,
    /// Sorted positions in the rotation of `v`.
    pub attachments: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SvGraph {
    pub vertex: Vertex,
    /// Rotation of `v`; position `i` is `cycle[i]`.
    pub cycle: Vec<Dart>,
    /// The base bridge, when present, comes first; the others are ordered by
    /// least attachment.
    pub bridges: Vec<Bridge>,
    /// Index of the base bridge.
    pub b0: Option<usize>,
    /// Whether the base bridge sits inside (true only at the root).
    pub b0_inside: bool,
}

impl SvGraph {
    pub fn num_bridges(&self) -> usize {
        self.bridges.len()
    }

    /// The literal graph: cycle vertices `0..t`, then one vertex per bridge.
    pub fn literal_edges(&self) -> Vec<(usize, usize)> {
        let t = self.cycle.len();
        let mut edges = Vec::new();
        if t >= 3 {
            edges.extend((0..t).map(|i| (i, (i + 1) % t)));
        } else if t == 2 {
            edges.push((0, 1));
        }
        for (b, br) in self.bridges.iter().enumerate() {
            edges.extend(br.attachments.iter().map(|&p| (p, t + b)));
        }
        edges
    }
}

/// Precomputed data shared by all `S_v` of one map.
pub(crate) struct SvContext {
    pub edge_of: Vec<EdgeId>,
    pub tree: BlockTree,
    bridge_of_block: Vec<usize>,
    bridge_of_loop: Vec<usize>,
}

impl SvContext {
    pub fn new(map: &CombMap, tree: BlockTree) -> Self {
        SvContext {
            edge_of: map.edge_index(),
            bridge_of_block: vec![usize::MAX; tree.blocks.len()],
            bridge_of_loop: vec![usize::MAX; map.num_edges()],
            tree,
        }
    }

    pub fn build(&mut self, map: &CombMap, v: Vertex, is_root: bool) -> SvGraph {
        let cycle = map.rotation(v).to_vec();
        let mut bridges: Vec<Bridge> = Vec::new();
        let has_base = !is_root || cycle.iter().any(|&d| !map.is_loop(d));
        if has_base {
            bridges.push(Bridge { kind: BridgeKind::Base, attachments: Vec::new() });
        }
        for (p, &d) in cycle.iter().enumerate() {
            let e = self.edge_of[d];
            let blk = self.tree.edge_block[e];
            let b = if map.is_loop(d) {
                if self.bridge_of_loop[e] == usize::MAX {
                    self.bridge_of_loop[e] = bridges.len();
                    bridges.push(Bridge { kind: BridgeKind::Loop(e), attachments: Vec::new() });
                }
                self.bridge_of_loop[e]
            } else if is_root || self.tree.blocks[blk].root != v {
                0
            } else {
                if self.bridge_of_block[blk] == usize::MAX {
                    self.bridge_of_block[blk] = bridges.len();
                    bridges.push(Bridge { kind: BridgeKind::Block(blk), attachments: Vec::new() });
                }
                self.bridge_of_block[blk]
            };
            bridges[b].attachments.push(p);
        }
        for br in &bridges {
            match br.kind {
                BridgeKind::Block(blk) => self.bridge_of_block[blk] = usize::MAX,
                BridgeKind::Loop(e) => self.bridge_of_loop[e] = usize::MAX,
                BridgeKind::Base => {}
            }
        }
        SvGraph { vertex: v, cycle, bridges, b0: has_base.then_some(0), b0_inside: is_root }
    }
}

/// Builds `S_v` for vertex `v` of a connected map rooted at `v0`.
pub fn build_sv(map: &CombMap, v: Vertex, v0: Vertex) -> SvGraph {
    let dist = bfs_distances(map, &[v0]);
    let tree = BlockTree::from_parts(map, biconnected(map), &dist);
    SvContext::new(map, tree).build(map, v, v == v0)
}

/// Inside/outside decision for every bridge of an `S_v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideAssignment {
    pub inside: Vec<bool>,
    /// Free component of each bridge; `None` for bridges whose side is forced
    /// by the base bridge.
    pub component: Vec<Option<usize>>,
    pub free_components: usize,
    pub planar: bool,
    /// Odd cycle of pairwise interleaving bridges when not planar.
    pub witness: Option<Vec<usize>>,
}

/// Whether two disjoint sorted attachment sets interleave around the cycle.
pub fn interleave(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    let mut changes = 0;
    let mut last: Option<bool> = None;
    let mut first: Option<bool> = None;
    while i < a.len() || j < b.len() {
        let from_a = j == b.len() || (i < a.len() && a[i] < b[j]);
        if from_a {
            i += 1;
        } else {
            j += 1;
        }
        if first.is_none() {
            first = Some(from_a);
        }
        if last.is_some_and(|l| l != from_a) {
            changes += 1;
        }
        last = Some(from_a);
    }
    if last.is_some() && last != first {
        changes += 1;
    }
    changes >= 4
}

/// Explicit conflict graph over the bridges of an `S_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    pub adjacency: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn new(sv: &SvGraph) -> Self {
        let k = sv.bridges.len();
        let mut adjacency = vec![Vec::new(); k];
        for a in 0..k {
            for b in a + 1..k {
                if interleave(&sv.bridges[a].attachments, &sv.bridges[b].attachments) {
                    adjacency[a].push(b);
                    adjacency[b].push(a);
                }
            }
        }
        ConflictGraph { adjacency }
    }
}

struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    rank: Vec<u8>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![false; n], rank: vec![0; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let mut root = x;
        let mut par = false;
        while self.parent[root] != root {
            par ^= self.parity[root];
            root = self.parent[root];
        }
        // compress, rewriting parities relative to the root
        let mut y = x;
        let mut p = par;
        while self.parent[y] != root && self.parent[y] != y {
            let next = self.parent[y];
            let next_p = p ^ self.parity[y];
            self.parent[y] = root;
            self.parity[y] = p;
            y = next;
            p = next_p;
        }
        (root, par)
    }

    /// Records `parity(x) ^ parity(y) == diff`; false on contradiction.
    fn union(&mut self, x: usize, y: usize, diff: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == diff;
        }
        let (rx, ry) = if self.rank[rx] < self.rank[ry] { (ry, rx) } else { (rx, ry) };
        self.parent[ry] = rx;
        self.parity[ry] = px ^ py ^ diff;
        if self.rank[rx] == self.rank[ry] {
            self.rank[rx] += 1;
        }
        true
    }
}

/// Two-colours the bridges in linear time, or reports the first conflict.
///
/// Every bridge becomes the polygon of chords through its attachments; two
/// bridges interleave exactly when one of their chords cross. Sweeping the
/// cycle positions, open chords are kept on a stack split into runs whose
/// members are known to share a colour, and each closing chord must take the
/// opposite colour of every run opened after it.
fn fast_parities(sv: &SvGraph) -> Option<(Vec<usize>, Vec<bool>)> {
    let t = sv.cycle.len();
    let k = sv.bridges.len();
    // chords as (start, end, bridge)
    let mut chords: Vec<(usize, usize, usize)> = Vec::new();
    for (b, br) in sv.bridges.iter().enumerate() {
        let a = &br.attachments;
        for w in a.windows(2) {
            chords.push((w[0], w[1], b));
        }
        if a.len() >= 3 {
            chords.push((a[0], a[a.len() - 1], b));
        }
    }
    let nc = chords.len();
    let mut opens: Vec<Vec<usize>> = vec![Vec::new(); t];
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); t];
    for (c, &(s, e, _)) in chords.iter().enumerate() {
        opens[s].push(c);
        closes[e].push(c);
    }
    let mut uf = ParityUnionFind::new(k);
    // runs: intrusive doubly linked lists over chords
    let mut next = vec![usize::MAX; nc];
    let mut prev = vec![usize::MAX; nc];
    let mut order = vec![0usize; nc];
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0;
    for pos in 0..t {
        closes[pos].sort_unstable_by(|&x, &y| chords[y].0.cmp(&chords[x].0));
        for &c in &closes[pos] {
            let mut merged: Option<(usize, usize)> = None;
            while let Some(&(head, _)) = runs.last() {
                if order[head] <= order[c] {
                    break;
                }
                let (head, tail) = runs.pop().expect("non-empty");
                if !uf.union(chords[c].2, chords[head].2, true) {
                    return None;
                }
                merged = Some(match merged {
                    None => (head, tail),
                    Some((h2, t2)) => {
                        next[tail] = h2;
                        prev[h2] = tail;
                        (head, t2)
                    }
                });
            }
            let (head, tail) = runs.pop().expect("a chord closes only while open");
            if tail != c {
                return None;
            }
            if head != c {
                let p = prev[c];
                next[p] = usize::MAX;
                runs.push((head, p));
            }
            if let Some(run) = merged {
                runs.push(run);
            }
        }
        opens[pos].sort_unstable_by(|&x, &y| chords[y].1.cmp(&chords[x].1));
        for &c in &opens[pos] {
            order[c] = counter;
            counter += 1;
            prev[c] = usize::MAX;
            next[c] = usize::MAX;
            runs.push((c, c));
        }
    }
    Some((0..k).map(|b| uf.find(b)).unzip())
}

/// Colours the explicit conflict graph by breadth-first search, ignoring
/// edges that cannot be satisfied; returns parities and an odd witness.
fn greedy_parities(sv: &SvGraph) -> (Vec<bool>, Vec<usize>, Option<Vec<usize>>) {
    let g = ConflictGraph::new(sv);
    let k = sv.bridges.len();
    let mut color: Vec<Option<bool>> = vec![None; k];
    let mut parent = vec![usize::MAX; k];
    let mut comp = vec![usize::MAX; k];
    let mut witness = None;
    let starts = sv.b0.into_iter().chain(0..k);
    let mut ncomp = 0;
    for s in starts {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        comp[s] = ncomp;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let cx = color[x].expect("queued vertices are coloured");
            for &y in &g.adjacency[x] {
                match color[y] {
                    None => {
                        color[y] = Some(!cx);
                        parent[y] = x;
                        comp[y] = ncomp;
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx && witness.is_none() => {
                        witness = Some(odd_cycle(&parent, x, y));
                    }
                    _ => {}
                }
            }
        }
        ncomp += 1;
    }
    (color.into_iter().map(|c| c.expect("all coloured")).collect(), comp, witness)
}

fn odd_cycle(parent: &[usize], x: usize, y: usize) -> Vec<usize> {
    let up = |mut v: usize| {
        let mut p = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            p.push(v);
        }
        p
    };
    let px = up(x);
    let py = up(y);
    let (mut i, mut j) = (px.len(), py.len());
    while i > 1 && j > 1 && px[i - 2] == py[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle = px[..i].to_vec();
    cycle.extend(py[..j - 1].iter().rev());
    cycle
}

/// Decides a side for every bridge. The base bridge's component is fixed
/// (outside, or inside at the root); every other component of the conflict
/// graph is free, numbered by least bridge, and placed with its least bridge
/// outside unless `flipped` says otherwise.
pub fn conflict_and_embed(sv: &SvGraph, flipped: impl Fn(usize) -> bool) -> SideAssignment {
    match fast_parities(sv) {
        Some((roots, parity)) => assign_sides(sv, &parity, &roots, true, None, flipped),
        None => {
            let (parity, comp, witness) = greedy_parities(sv);
            assign_sides(sv, &parity, &comp, false, witness, flipped)
        }
    }
}

fn assign_sides(
    sv: &SvGraph,
    parity: &[bool],
    class: &[usize],
    planar: bool,
    witness: Option<Vec<usize>>,
    flipped: impl Fn(usize) -> bool,
) -> SideAssignment {
    let k = sv.bridges.len();
    let base_class = sv.b0.map(|b| class[b]);
    let mut rep = vec![usize::MAX; k];
    let mut free_id = vec![usize::MAX; k];
    let mut free_components = 0;
    for (b, &c) in class.iter().enumerate().take(k) {
        if rep[c] == usize::MAX {
            rep[c] = b;
            if Some(c) != base_class {
                free_id[c] = free_components;
                free_components += 1;
            }
        }
    }
    let mut inside = vec![false; k];
    let mut component = vec![None; k];
    for b in 0..k {
        let c = class[b];
        let differs = parity[b] != parity[rep[c]];
        if Some(c) == base_class {
            inside[b] = sv.b0_inside ^ differs;
        } else {
            inside[b] = flipped(free_id[c]) ^ differs;
            component[b] = Some(free_id[c]);
        }
    }
    SideAssignment { inside, component, free_components, planar, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::{premap_from_paragraph, seifert_map};
    use crate::words::parse_paragraph;

    fn synthetic(t: usize, groups: &[&[usize]]) -> SvGraph {
        SvGraph {
            vertex: 0,
            cycle: (0..t).collect(),
            bridges: groups
                .iter()
                .enumerate()
                .map(|(i, g)| Bridge {
                    kind: if i == 0 { BridgeKind::Base } else { BridgeKind::Block(i) },
                    attachments: g.to_vec(),
                })
                .collect(),
            b0: Some(0),
            b0_inside: false,
        }
    }

    #[test]
    fn fig3_middle_vertex() {
        let p = premap_from_paragraph(&parse_paragraph("1 2 3 4 2 1 4 3").unwrap());
        let m = seifert_map(&p).map;
        let middle = (0..3).find(|&v| m.rotation(v).len() == 4).unwrap();
        let leaf = (0..3).find(|&v| v != middle).unwrap();
        let sv = build_sv(&m, middle, leaf);
        assert_eq!(sv.cycle.len(), 4);
        assert_eq!(sv.num_bridges(), 2);
        assert!(interleave(&sv.bridges[0].attachments, &sv.bridges[1].attachments));
        let sides = conflict_and_embed(&sv, |_| false);
        assert!(sides.planar);
        assert_eq!(sides.inside, vec![false, true]);
        assert_eq!(sides.free_components, 0);
    }

    #[test]
    fn consecutive_bridge_is_outside() {
        let sv = synthetic(4, &[&[0, 1], &[2, 3]]);
        let sides = conflict_and_embed(&sv, |_| false);
        assert!(sides.planar);
        assert_eq!(sides.inside, vec![false, false]);
        assert_eq!(sides.free_components, 1);
        let flipped = conflict_and_embed(&sv, |c| c == 0);
        assert_eq!(flipped.inside, vec![false, true]);
    }

    #[test]
    fn three_interleaving_bridges() {
        let sv = synthetic(6, &[&[0, 3], &[1, 4], &[2, 5]]);
        let sides = conflict_and_embed(&sv, |_| false);
        assert!(!sides.planar);
        let w = sides.witness.unwrap();
        assert_eq!(w.len() % 2, 1);
        let g = ConflictGraph::new(&sv);
        for i in 0..w.len() {
            assert!(g.adjacency[w[i]].contains(&w[(i + 1) % w.len()]));
        }
    }

    #[test]
    fn interleave_cases() {
        assert!(interleave(&[0, 2], &[1, 3]));
        assert!(!interleave(&[0, 1], &[2, 3]));
        assert!(!interleave(&[0, 3], &[1, 2]));
        assert!(!interleave(&[1], &[0, 2, 3]));
        assert!(interleave(&[0, 2, 4], &[1, 5]));
        assert!(!interleave(&[0, 4, 5], &[1, 2, 3]));
    }

    #[test]
    fn fast_agrees_with_explicit_colouring() {
        use rand::{rngs::StdRng, seq::SliceRandom, RngExt, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..3000 {
            let t = rng.random_range(1..14);
            let k = rng.random_range(1..=t.min(6));
            let mut owner: Vec<usize> = (0..t).map(|i| if i < k { i } else { rng.random_range(0..k) }).collect();
            owner.shuffle(&mut rng);
            let groups: Vec<Vec<usize>> = (0..k).map(|b| (0..t).filter(|&p| owner[p] == b).collect()).collect();
            let refs: Vec<&[usize]> = groups.iter().map(|g| g.as_slice()).collect();
            let sv = synthetic(t, &refs);
            let (_, _, witness) = greedy_parities(&sv);
            let sides = conflict_and_embed(&sv, |_| false);
            assert_eq!(sides.planar, witness.is_none(), "{groups:?}");
            if sides.planar {
                let g = ConflictGraph::new(&sv);
                for a in 0..k {
                    for &b in &g.adjacency[a] {
                        assert_ne!(sides.inside[a], sides.inside[b], "{groups:?}");
                    }
                }
            }
        }
    }
}
