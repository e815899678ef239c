//! Realizability of paragraphs: the linear pipeline, enumeration of all plane
//! embeddings, an exhaustive reference search and a generator of Gauss codes.

use std::collections::HashSet;

use rand::{rngs::StdRng, RngExt, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::map::{count_face_orbits, CombMap, Dart, Orientation, Sign};
use crate::medial::{trace_map, vertex_medial_map};
use crate::orient::{alg_with_flips, Diagnostics, Flips};
use crate::seifert::{premap_from_paragraph, seifert_map, SeifertMap, TwoTwoPremap};
use crate::words::{Character, Paragraph, WordError};

/// Largest premap the exhaustive search accepts, in vertices.
pub const ORACLE_MAX_VERTICES: usize = 20;
/// Largest number of independent choices `enumerate_embeddings` expands.
pub const ENUMERATION_MAX_CHOICES: usize = 16;
/// Genus-0 representatives kept by the exhaustive search.
pub const ORACLE_WITNESS_CAP: usize = 1 << 16;

#[derive(Debug, Error)]
pub enum RecognizeError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("not realizable in the plane: the constructed embedding has genus {genus}")]
    NotRealizable { genus: usize, diagnostics: Box<Diagnostics> },
    #[error("premap has {vertices} vertices; the exhaustive search is limited to {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("{choices} independent choices exceed the enumeration limit of {limit}")]
    TooMany { choices: usize, limit: usize },
}

/// Outcome of the pipeline on one premap.
#[derive(Debug, Clone)]
pub struct EmbedResult {
    pub premap: TwoTwoPremap,
    pub seifert: SeifertMap,
    /// Orientation of the Seifert map chosen by the algorithm.
    pub orientation: Orientation,
    /// The resulting 2/2-map, on the darts of `premap`.
    pub medial: CombMap,
    /// Which vertices of `medial` are reversed relative to `premap`.
    pub flips: Vec<bool>,
    pub genus: usize,
    pub traced: Paragraph,
    pub is_plane: bool,
    pub diagnostics: Diagnostics,
}

impl EmbedResult {
    /// The same embedding with every vertex rotation reversed.
    pub fn mirrored(&self) -> EmbedResult {
        let flips: Vec<bool> = self.flips.iter().map(|f| !f).collect();
        let medial = self.premap.representative(&flips);
        EmbedResult {
            medial,
            flips,
            orientation: self.orientation.reversed(),
            ..self.clone()
        }
    }

    /// Representative as a bit mask over premap vertices (bit set = reversed).
    pub fn mask(&self) -> u64 {
        flips_to_mask(&self.flips)
    }
}

fn flips_to_mask(flips: &[bool]) -> u64 {
    flips.iter().enumerate().filter(|(_, &f)| f).fold(0, |m, (i, _)| m | 1 << i)
}

/// Runs Seifert map, orientation, vertex-medial map and trace on a premap.
pub fn embed_premap(pm: &TwoTwoPremap, flips: &Flips) -> EmbedResult {
    let sf = seifert_map(pm);
    let (orientation, diagnostics) = alg_with_flips(&sf.map, flips);
    let (mv, _) = vertex_medial_map(&sf.map, &orientation);
    let phi = sf.medial_dart_bijection(pm);
    // carry the medial rotations over to the premap's darts
    let n = pm.num_darts();
    let mut tau = vec![0; n];
    for d in 0..n {
        tau[phi[d]] = phi[mv.tau(d)];
    }
    let medial = CombMap::from_permutations_unchecked(tau, pm.rep().alpha_perm().to_vec());
    let flips = pm.flips_of(&medial).expect("the medial map is a representative of the premap");
    let genus = medial.genus();
    let traced = match pm.labels() {
        Some(labels) => trace_map(&medial, pm.sign(), labels),
        None => {
            let labels: Vec<Character> = (1..=pm.num_vertices())
                .map(|i| Character::new(i.to_string()).expect("numeric label"))
                .collect();
            trace_map(&medial, pm.sign(), &labels)
        }
    };
    EmbedResult {
        premap: pm.clone(),
        seifert: sf,
        orientation,
        medial,
        flips,
        genus,
        traced,
        is_plane: genus == 0,
        diagnostics,
    }
}

/// Runs the pipeline on a paragraph.
pub fn embed_paragraph(p: &Paragraph, flips: &Flips) -> EmbedResult {
    embed_premap(&premap_from_paragraph(p), flips)
}

/// Whether the paragraph is realizable by closed curves in the plane.
pub fn is_gauss(p: &Paragraph) -> bool {
    embed_paragraph(p, &Flips::none()).is_plane
}

/// Every embedding reachable through the free choices of the algorithm,
/// without repeats.
pub fn enumerate_embeddings(p: &Paragraph) -> Result<Vec<EmbedResult>, RecognizeError> {
    let pm = premap_from_paragraph(p);
    let first = embed_premap(&pm, &Flips::none());
    if !first.is_plane {
        return Err(RecognizeError::NotRealizable { genus: first.genus, diagnostics: Box::new(first.diagnostics) });
    }
    let slots = first.diagnostics.choice_slots();
    if slots.len() > ENUMERATION_MAX_CHOICES {
        return Err(RecognizeError::TooMany { choices: slots.len(), limit: ENUMERATION_MAX_CHOICES });
    }
    log::debug!("enumerating {} choice combinations", 1u64 << slots.len());
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    seen.insert(first.flips.clone());
    out.push(first);
    for mask in 1..1u64 << slots.len() {
        let r = embed_premap(&pm, &Flips::from_mask(&slots, mask));
        if seen.insert(r.flips.clone()) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Summary of the exhaustive search over all representatives of a premap.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct OracleResult {
    pub vertices: usize,
    pub min_genus: usize,
    pub plane_count: u64,
    /// Genus-0 representatives as reversal masks, ascending, at most
    /// [`ORACLE_WITNESS_CAP`] of them.
    pub witnesses: Vec<u64>,
}

/// Genus of every representative of `pm`, computed in parallel.
pub fn oracle_min_genus(pm: &TwoTwoPremap) -> Result<OracleResult, RecognizeError> {
    let nv = pm.num_vertices();
    if nv > ORACLE_MAX_VERTICES {
        return Err(RecognizeError::TooLarge { vertices: nv, limit: ORACLE_MAX_VERTICES });
    }
    let rep = pm.rep();
    let n = rep.num_darts();
    let components = rep.num_components() as i64;
    let chi_base = nv as i64 - rep.num_edges() as i64;
    let cycles: Vec<[Dart; 4]> = (0..nv).map(|v| pm.cycle(v)).collect();
    let alpha = rep.alpha_perm();
    let genus_of = |mask: u64, tau: &mut Vec<Dart>| {
        for (v, &[d1, d2, d3, d4]) in cycles.iter().enumerate() {
            if mask >> v & 1 == 1 {
                tau[d2] = d1;
                tau[d1] = d4;
                tau[d4] = d3;
                tau[d3] = d2;
            } else {
                tau[d1] = d2;
                tau[d2] = d3;
                tau[d3] = d4;
                tau[d4] = d1;
            }
        }
        let chi = chi_base + count_face_orbits(tau, alpha) as i64;
        ((2 * components - chi) / 2) as usize
    };
    let (min_genus, plane_count, mut witnesses) = (0..1u64 << nv)
        .into_par_iter()
        .fold(
            || (usize::MAX, 0u64, Vec::new(), vec![0; n]),
            |(min, count, mut wit, mut tau), mask| {
                let g = genus_of(mask, &mut tau);
                let mut count = count;
                if g == 0 {
                    count += 1;
                    if wit.len() < ORACLE_WITNESS_CAP {
                        wit.push(mask);
                    }
                }
                (min.min(g), count, wit, tau)
            },
        )
        .map(|(min, count, wit, _)| (min, count, wit))
        .reduce(
            || (usize::MAX, 0, Vec::new()),
            |(m1, c1, mut w1), (m2, c2, w2)| {
                w1.extend(w2);
                (m1.min(m2), c1 + c2, w1)
            },
        );
    witnesses.sort_unstable();
    witnesses.truncate(ORACLE_WITNESS_CAP);
    Ok(OracleResult { vertices: nv, min_genus, plane_count, witnesses })
}

/// A random Gauss code with `n` characters, grown from `1 1` by kink
/// insertions and connected sums with independently grown codes.
pub fn random_gauss(n: usize, seed: u64) -> Paragraph {
    let n = n.max(1);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut arena = Arena::default();
    let (start, _) = arena.grow(n, &mut rng);
    // read off the cyclic list and relabel by first occurrence
    let mut letters = Vec::with_capacity(2 * n);
    let mut d = start;
    loop {
        letters.push(arena.label[d]);
        d = arena.next[d];
        if d == start {
            break;
        }
    }
    let mut name = vec![usize::MAX; n];
    let mut fresh = 0;
    let word: Vec<Character> = letters
        .iter()
        .map(|&l| {
            if name[l] == usize::MAX {
                fresh += 1;
                name[l] = fresh;
            }
            Character::new(name[l].to_string()).expect("numeric label")
        })
        .collect();
    Paragraph::new(vec![word]).expect("every label is used twice")
}

#[derive(Default)]
struct Arena {
    next: Vec<usize>,
    label: Vec<usize>,
    labels_used: usize,
}

impl Arena {
    fn node(&mut self, label: usize) -> usize {
        self.next.push(usize::MAX);
        self.label.push(label);
        self.next.len() - 1
    }

    fn insert_after(&mut self, at: usize, node: usize) {
        self.next[node] = self.next[at];
        self.next[at] = node;
    }

    /// Grows a cyclic list with `n` characters; returns one node and all
    /// nodes of the list.
    fn grow(&mut self, n: usize, rng: &mut StdRng) -> (usize, Vec<usize>) {
        let l = self.labels_used;
        self.labels_used += 1;
        let a = self.node(l);
        let b = self.node(l);
        self.next[a] = b;
        self.next[b] = a;
        let mut nodes = vec![a, b];
        let mut count = 1;
        while count < n {
            let remaining = n - count;
            let at = nodes[rng.random_range(0..nodes.len())];
            if remaining >= 2 && rng.random_bool(0.25) {
                let m = rng.random_range(1..=remaining / 2);
                let (_, sub) = self.grow(m, rng);
                // open the other curve at a random arc and splice it in
                let cut = sub[rng.random_range(0..sub.len())];
                let after_cut = self.next[cut];
                let old = self.next[at];
                self.next[at] = after_cut;
                self.next[cut] = old;
                nodes.extend(sub);
                count += m;
            } else {
                let l = self.labels_used;
                self.labels_used += 1;
                let x = self.node(l);
                let y = self.node(l);
                self.insert_after(at, x);
                self.insert_after(x, y);
                nodes.push(x);
                nodes.push(y);
                count += 1;
            }
        }
        (a, nodes)
    }
}

/// One failed check of the local crossing chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartViolation {
    /// Premap vertex (crossing).
    pub vertex: usize,
    pub reason: String,
}

/// Checks every crossing of a plane result against the local chart relating
/// the two Seifert cycles at a crossing, their labels, the rotation and the
/// edge direction in the Seifert map.
///
/// The chart is stated for the opposite orientation of the plane from the
/// one used by the Seifert orientation here, so rotations are compared after
/// reversal. Labels are the algorithm's: equal labels mean one cycle lies
/// inside the other (the child inside its parent), different labels mean
/// neither contains the other.
pub fn chart_violations(r: &EmbedResult) -> Vec<ChartViolation> {
    let pm = &r.premap;
    let sf = &r.seifert;
    let labels = &r.diagnostics.labels;
    let parent = &r.diagnostics.parent;
    let mut out = Vec::new();
    for (e, (a, b)) in sf.map.edges().enumerate() {
        let v = sf.edge_vertex[e];
        let mut fail = |reason: String| out.push(ChartViolation { vertex: v, reason });
        let (ca, cb) = (sf.map.vertex_of(a), sf.map.vertex_of(b));
        // positive dart of each cycle at this crossing and its leaving dart
        let plus = |k: usize| sf.positive[k];
        let minus = |k: usize| {
            let p = plus(k);
            let s = pm.straight_ahead(p);
            let rot = pm.cycle(v);
            *rot.iter().find(|&&d| pm.sign().sign(d) == Sign::Minus && d != s).expect("two leaving darts")
        };
        // the Seifert cycles do not cross: each cycle's pair is consecutive
        for k in [a, b] {
            let (p, m) = (plus(k), minus(k));
            if r.medial.tau(p) != m && r.medial.tau(m) != p {
                fail(format!("Seifert cycle darts {p}, {m} are not consecutive"));
            }
        }
        // (c1, c2) by the chart's roles; `inner_first` selects the row shape
        let (c1, c2, shape_first_c1, direction_to_c1) = if labels[ca] == labels[cb] {
            let a_is_child = if parent[ca] == Some(cb) {
                true
            } else if parent[cb] == Some(ca) {
                false
            } else {
                fail("equal labels on an edge that is not parent-child".into());
                continue;
            };
            let (inner, outer) = if a_is_child { (a, b) } else { (b, a) };
            if labels[ca] == 1 {
                // inner counter-clockwise inside outer: (c1+, c2+, c2-, c1-), from c2 to c1
                (inner, outer, true, true)
            } else {
                // inner clockwise inside outer: (c2+, c1+, c1-, c2-), from c1 to c2
                (inner, outer, false, false)
            }
        } else {
            let (ccw, cw) = if labels[ca] == 1 { (a, b) } else { (b, a) };
            // outside of each other, c1 counter-clockwise: (c1+, c2+, c2-, c1-), from c2 to c1
            (ccw, cw, true, true)
        };
        let expected = if shape_first_c1 {
            [plus(c1), plus(c2), minus(c2), minus(c1)]
        } else {
            [plus(c2), plus(c1), minus(c1), minus(c2)]
        };
        // compare with the reversed rotation
        let x = expected[0];
        let mut actual = [x; 4];
        for i in 1..4 {
            actual[i] = r.medial.tau_inv(actual[i - 1]);
        }
        if actual != expected {
            fail(format!("rotation {actual:?} does not match chart row {expected:?}"));
        }
        // edge direction: the tail dart is negative in the Seifert orientation
        let tail = if r.orientation.sign(c1) == Sign::Minus { c1 } else { c2 };
        let expected_tail = if direction_to_c1 { c2 } else { c1 };
        if tail != expected_tail {
            fail("edge direction does not match the chart".into());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{cyclic_equal, parity_precheck, parse_paragraph};

    fn para(s: &str) -> Paragraph {
        parse_paragraph(s).unwrap()
    }

    #[test]
    fn named_instances() {
        let p = para("1 2 3 4 2 1 4 3");
        let r = embed_paragraph(&p, &Flips::none());
        assert!(r.is_plane);
        assert!(cyclic_equal(&r.traced, &p));
        assert!(!is_gauss(&para("1 2 3 4 5 3 4 1 2 5")));
        assert!(is_gauss(&para("1 1")));
        assert!(is_gauss(&para("1 2 3 1 2 3")));
        assert!(!is_gauss(&para("1 2 1 2")));
    }

    #[test]
    fn oracle_examples() {
        let o = oracle_min_genus(&premap_from_paragraph(&para("1 2 3 4 2 1 4 3"))).unwrap();
        assert_eq!(o.min_genus, 0);
        assert!(o.plane_count >= 2);
        let o = oracle_min_genus(&premap_from_paragraph(&para("1 2 3 4 5 3 4 1 2 5"))).unwrap();
        assert!(o.min_genus >= 1);
        assert_eq!(o.plane_count, 0);
        let o = oracle_min_genus(&premap_from_paragraph(&para("1 1"))).unwrap();
        assert_eq!((o.min_genus, o.plane_count), (0, 2));
        let o = oracle_min_genus(&premap_from_paragraph(&para("1 2 1 2"))).unwrap();
        assert_eq!(o.min_genus, 1);
        let big: Vec<String> = (1..=21).chain(1..=21).map(|i| i.to_string()).collect();
        assert!(matches!(
            oracle_min_genus(&premap_from_paragraph(&para(&big.join(" ")))),
            Err(RecognizeError::TooLarge { vertices: 21, .. })
        ));
    }

    #[test]
    fn enumeration_fig5() {
        let p = para("1 2 3 4 2 1 4 3");
        let all = enumerate_embeddings(&p).unwrap();
        assert!(all.iter().all(|r| r.is_plane && cyclic_equal(&r.traced, &p)));
        let oracle = oracle_min_genus(&premap_from_paragraph(&p)).unwrap();
        let mut masks: Vec<u64> = all.iter().flat_map(|r| [r.mask(), r.mirrored().mask()]).collect();
        masks.sort_unstable();
        masks.dedup();
        assert_eq!(masks, oracle.witnesses);
        assert!(matches!(enumerate_embeddings(&para("1 2 1 2")), Err(RecognizeError::NotRealizable { .. })));
    }

    #[test]
    fn generator() {
        assert_eq!(random_gauss(1, 5).to_string(), "1 1");
        for seed in 0..200 {
            let n = 1 + seed as usize % 12;
            let p = random_gauss(n, seed);
            assert_eq!(p.alphabet().len(), n);
            assert!(parity_precheck(&p));
            assert!(is_gauss(&p), "{p}");
        }
        assert_eq!(random_gauss(30, 9).to_string(), random_gauss(30, 9).to_string());
    }

    #[test]
    fn chart_holds_on_examples() {
        for s in ["1 2 3 4 2 1 4 3", "1 1", "1 2 3 1 2 3", "1 2 / 1 2"] {
            for r in enumerate_embeddings(&para(s)).unwrap() {
                assert_eq!(chart_violations(&r), vec![], "{s}");
            }
        }
    }
}
