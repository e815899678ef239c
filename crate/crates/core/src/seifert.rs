//! 2/2-premaps, Seifert cycles and the Seifert map.

use thiserror::Error;

use crate::map::{CombMap, Dart, MapError, Orientation, Sign, Vertex};
use crate::words::{Character, Paragraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PremapError {
    #[error("not a 2/2-map: {0}")]
    NotTwoTwo(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A 2/2-map considered up to independent reversal of each vertex rotation.
///
/// The stored representative has every rotation normalised to
/// `(d1, d2, d3, d4)` with `d1, d2` positive and `d3, d4` negative; the other
/// admissible rotation of that vertex is `(d2, d1, d4, d3)`.
#[derive(Debug, Clone)]
pub struct TwoTwoPremap {
    rep: CombMap,
    sign: Orientation,
    labels: Option<Vec<Character>>,
}

impl TwoTwoPremap {
    /// Checks that `(rep, sign)` is a 2/2-map and stores it as a premap.
    pub fn new(rep: &CombMap, sign: &Orientation) -> Result<Self, PremapError> {
        let mut rotations = Vec::with_capacity(rep.num_vertices());
        for v in 0..rep.num_vertices() {
            let rot = rep.rotation(v);
            if rot.len() != 4 {
                return Err(PremapError::NotTwoTwo(format!("vertex {v} has degree {}", rot.len())));
            }
            let plus = rot.iter().filter(|&&d| sign.sign(d) == Sign::Plus).count();
            let start = (0..4).find(|&k| {
                sign.sign(rot[k]) == Sign::Plus
                    && sign.sign(rot[(k + 1) % 4]) == Sign::Plus
                    && sign.sign(rot[(k + 2) % 4]) == Sign::Minus
            });
            match (plus, start) {
                (2, Some(k)) => rotations.push((0..4).map(|i| rot[(k + i) % 4]).collect::<Vec<_>>()),
                _ => {
                    return Err(PremapError::NotTwoTwo(format!(
                        "vertex {v} does not have two consecutive positive darts"
                    )))
                }
            }
        }
        let pairs: Vec<_> = rep.edges().collect();
        let rep = CombMap::new(rotations, &pairs)?;
        Ok(TwoTwoPremap { rep, sign: sign.clone(), labels: None })
    }

    pub(crate) fn from_normalized(rep: CombMap, sign: Orientation, labels: Option<Vec<Character>>) -> Self {
        TwoTwoPremap { rep, sign, labels }
    }

    /// Attaches one character per vertex.
    pub fn with_labels(mut self, labels: Vec<Character>) -> Result<Self, PremapError> {
        if labels.len() != self.rep.num_vertices() {
            return Err(PremapError::NotTwoTwo(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.rep.num_vertices()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn rep(&self) -> &CombMap {
        &self.rep
    }

    pub fn sign(&self) -> &Orientation {
        &self.sign
    }

    pub fn labels(&self) -> Option<&[Character]> {
        self.labels.as_deref()
    }

    pub fn num_vertices(&self) -> usize {
        self.rep.num_vertices()
    }

    pub fn num_darts(&self) -> usize {
        self.rep.num_darts()
    }

    /// Normalised rotation `(d1, d2, d3, d4)` of vertex `v`.
    pub fn cycle(&self, v: Vertex) -> [Dart; 4] {
        let r = self.rep.rotation(v);
        [r[0], r[1], r[2], r[3]]
    }

    /// The representative with vertex `v` reversed whenever `flipped(v)`.
    pub fn representative_with(&self, flipped: impl Fn(Vertex) -> bool) -> CombMap {
        let mut tau = self.rep.tau_perm().to_vec();
        for v in 0..self.num_vertices() {
            if flipped(v) {
                let [d1, d2, d3, d4] = self.cycle(v);
                tau[d2] = d1;
                tau[d1] = d4;
                tau[d4] = d3;
                tau[d3] = d2;
            }
        }
        CombMap::from_permutations_unchecked(tau, self.rep.alpha_perm().to_vec())
    }

    pub fn representative(&self, flips: &[bool]) -> CombMap {
        self.representative_with(|v| flips[v])
    }

    /// Which vertices of `m` are reversed relative to the stored
    /// representative, or `None` if `m` is not a representative.
    pub fn flips_of(&self, m: &CombMap) -> Option<Vec<bool>> {
        if m.num_darts() != self.num_darts() || m.alpha_perm() != self.rep.alpha_perm() {
            return None;
        }
        (0..self.num_vertices())
            .map(|v| {
                let [d1, d2, d3, d4] = self.cycle(v);
                if m.tau(d1) == d2 && m.tau(d2) == d3 && m.tau(d3) == d4 && m.tau(d4) == d1 {
                    Some(false)
                } else if m.tau(d2) == d1 && m.tau(d1) == d4 && m.tau(d4) == d3 && m.tau(d3) == d2 {
                    Some(true)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Seifert successor `rho(d)`: the unique rotation neighbour of `d` with
    /// the same sign, carried across its edge.
    pub fn rho(&self, d: Dart) -> Dart {
        rho_in(&self.rep, &self.sign, d)
    }

    /// The dart opposite `d` in its vertex rotation.
    pub fn straight_ahead(&self, d: Dart) -> Dart {
        self.rep.tau(self.rep.tau(d))
    }

    /// Orbits of `rho` on positive darts, each starting at its least dart,
    /// ordered by least dart.
    pub fn seifert_cycles(&self) -> Vec<SeifertCycle> {
        let n = self.num_darts();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.sign.sign(start) != Sign::Plus {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                darts.push(d);
                d = self.rho(d);
            }
            out.push(SeifertCycle { darts });
        }
        out
    }

    /// Relabels darts: dart `d` becomes `new_of_old[d]`.
    pub fn relabel(&self, new_of_old: &[Dart]) -> TwoTwoPremap {
        let n = self.num_darts();
        let mut alpha = vec![0; n];
        let mut signs = vec![Sign::Plus; n];
        for d in 0..n {
            alpha[new_of_old[d]] = new_of_old[self.rep.alpha(d)];
            signs[new_of_old[d]] = self.sign.sign(d);
        }
        let rotations: Vec<Vec<Dart>> = self
            .rep
            .rotations()
            .iter()
            .map(|r| r.iter().map(|&d| new_of_old[d]).collect())
            .collect();
        let pairs: Vec<_> = (0..n).filter(|&d| d < alpha[d]).map(|d| (d, alpha[d])).collect();
        let rep = CombMap::new(rotations, &pairs).expect("relabelling preserves validity");
        TwoTwoPremap { rep, sign: Orientation::from_signs_unchecked(signs), labels: self.labels.clone() }
    }

    /// Reverses every vertex.
    pub fn mirror_flips(flips: &[bool]) -> Vec<bool> {
        flips.iter().map(|f| !f).collect()
    }

    /// Equality as premaps: same darts, signs, `alpha`, and the same set of
    /// vertex rotations up to the admissible reversal.
    pub fn same_premap(&self, other: &TwoTwoPremap) -> bool {
        if self.num_darts() != other.num_darts()
            || self.rep.alpha_perm() != other.rep.alpha_perm()
            || self.sign != other.sign
        {
            return false;
        }
        let keys = |p: &TwoTwoPremap| {
            let mut k: Vec<[Dart; 4]> = (0..p.num_vertices())
                .map(|v| {
                    let [a, b, c, d] = p.cycle(v);
                    [a, b, c, d].min([b, a, d, c])
                })
                .collect();
            k.sort_unstable();
            k
        };
        keys(self) == keys(other)
    }
}

pub(crate) fn rho_in(tau: &CombMap, sign: &Orientation, d: Dart) -> Dart {
    let s = |x| sign.sign(x);
    if s(d) == Sign::Plus {
        if s(tau.tau(d)) == Sign::Minus {
            tau.alpha(tau.tau(d))
        } else {
            tau.alpha(tau.tau_inv(d))
        }
    } else {
        let a = tau.alpha(d);
        if s(tau.tau(a)) == Sign::Minus {
            tau.tau(a)
        } else {
            tau.tau_inv(a)
        }
    }
}

/// Cyclic sequence of equally signed darts linked by `rho`, starting at its
/// least dart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertCycle {
    pub darts: Vec<Dart>,
}

impl SeifertCycle {
    /// Characters of the vertices met along the cycle, closing back on the
    /// first one, e.g. `[1, 2, 1]`.
    pub fn trace(&self, pm: &TwoTwoPremap) -> Option<Vec<Character>> {
        let labels = pm.labels()?;
        let mut out: Vec<Character> =
            self.darts.iter().map(|&d| labels[pm.rep().vertex_of(d)].clone()).collect();
        out.push(out[0].clone());
        Some(out)
    }
}

/// Builds the 2/2-premap of a paragraph.
///
/// Position `i` contributes the darts `2i` (arriving, positive) and `2i + 1`
/// (leaving, negative). The leaving dart of `i` is paired with the arriving
/// dart of the next position in the same word. The character at positions
/// `i < j` becomes the vertex `(2i, 2j, 2i+1, 2j+1)`; vertices are numbered in
/// order of first occurrence.
pub fn premap_from_paragraph(p: &Paragraph) -> TwoTwoPremap {
    let n = p.len();
    let next = p.next_table();
    let mut tau = vec![0; 2 * n];
    let mut alpha = vec![0; 2 * n];
    for i in 0..n {
        let j = p.partner(i);
        if i < j {
            let (a, b, c, d) = (2 * i, 2 * j, 2 * i + 1, 2 * j + 1);
            tau[a] = b;
            tau[b] = c;
            tau[c] = d;
            tau[d] = a;
        }
        alpha[2 * i + 1] = 2 * next[i];
        alpha[2 * next[i]] = 2 * i + 1;
    }
    let sign = Orientation::from_signs_unchecked(
        (0..2 * n).map(|d| if d % 2 == 0 { Sign::Plus } else { Sign::Minus }).collect(),
    );
    let rep = CombMap::from_permutations_unchecked(tau, alpha);
    TwoTwoPremap::from_normalized(rep, sign, Some(p.alphabet().to_vec()))
}

/// Seifert map of a premap together with its correspondence to the premap.
#[derive(Debug, Clone)]
pub struct SeifertMap {
    pub map: CombMap,
    /// Premap dart of each Seifert-map dart (the positive darts, ascending).
    pub positive: Vec<Dart>,
    /// Premap vertex of each Seifert-map edge, in [`CombMap::edges`] order.
    pub edge_vertex: Vec<Vertex>,
}

impl SeifertMap {
    /// The character carried by each edge, when the premap is labelled.
    pub fn edge_labels(&self, pm: &TwoTwoPremap) -> Option<Vec<Character>> {
        let labels = pm.labels()?;
        Some(self.edge_vertex.iter().map(|&v| labels[v].clone()).collect())
    }

    /// For the vertex-medial map of this Seifert map: the premap dart that
    /// corresponds to each medial dart. `d+ = 2d` is the positive dart it came
    /// from; `d- = 2d + 1` is the dart straight ahead of `alpha(d)+`.
    pub fn medial_dart_bijection(&self, pm: &TwoTwoPremap) -> Vec<Dart> {
        let mut phi = Vec::with_capacity(2 * self.positive.len());
        for d in 0..self.positive.len() {
            phi.push(self.positive[d]);
            phi.push(pm.straight_ahead(self.positive[self.map.alpha(d)]));
        }
        phi
    }
}

/// The Seifert map: vertices are Seifert cycles, darts are the positive
/// darts of the premap, and the two positive darts of each premap vertex form
/// an edge.
pub fn seifert_map(pm: &TwoTwoPremap) -> SeifertMap {
    let n = pm.num_darts();
    let mut index = vec![usize::MAX; n];
    let positive: Vec<Dart> = (0..n).filter(|&d| pm.sign().sign(d) == Sign::Plus).collect();
    for (k, &d) in positive.iter().enumerate() {
        index[d] = k;
    }
    let m = positive.len();
    let mut tau = vec![0; m];
    let mut alpha = vec![0; m];
    for v in 0..pm.num_vertices() {
        let [d1, d2, _, _] = pm.cycle(v);
        alpha[index[d1]] = index[d2];
        alpha[index[d2]] = index[d1];
    }
    for (k, &d) in positive.iter().enumerate() {
        tau[k] = index[pm.rho(d)];
    }
    let map = CombMap::from_permutations_unchecked(tau, alpha);
    let edge_vertex = map.edges().map(|(a, _)| pm.rep().vertex_of(positive[a])).collect();
    SeifertMap { map, positive, edge_vertex }
}

/// Seifert oriented map of a 2/2-map: a Seifert-map dart `d` is positive iff
/// `tau(d)` is negative in the 2/2-map.
pub fn seifert_oriented(m: &CombMap, sign: &Orientation) -> Result<(SeifertMap, Orientation), PremapError> {
    let pm = TwoTwoPremap::new(m, sign)?;
    let sf = seifert_map(&pm);
    let signs = sf
        .positive
        .iter()
        .map(|&d| if sign.sign(m.tau(d)) == Sign::Minus { Sign::Plus } else { Sign::Minus })
        .collect();
    Ok((sf, Orientation::from_signs_unchecked(signs)))
}
