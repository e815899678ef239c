//! Vertex-medial maps and straight-ahead traces.

use crate::map::{CombMap, Dart, Orientation, Sign};
use crate::seifert::TwoTwoPremap;
use crate::words::{Character, Paragraph};

/// Vertex-medial premap of a map.
///
/// Dart `d` of `m` yields `d+ = 2d` and `d- = 2d + 1`, with
/// `alpha(d-) = tau(d)+`. Each edge `{d, alpha(d)}` of `m` becomes a vertex;
/// vertex `e` is labelled `e + 1`.
pub fn vertex_medial_premap(m: &CombMap) -> TwoTwoPremap {
    let n = m.num_darts();
    let mut alpha = vec![0; 2 * n];
    for d in 0..n {
        alpha[2 * d + 1] = 2 * m.tau(d);
        alpha[2 * m.tau(d)] = 2 * d + 1;
    }
    let mut tau = vec![0; 2 * n];
    let mut labels = Vec::with_capacity(m.num_edges());
    for (e, (d, a)) in m.edges().enumerate() {
        let cycle = [2 * d, 2 * a, 2 * a + 1, 2 * d + 1];
        for k in 0..4 {
            tau[cycle[k]] = cycle[(k + 1) % 4];
        }
        labels.push(Character::new((e + 1).to_string()).expect("numeric label"));
    }
    let sign = Orientation::from_signs_unchecked(
        (0..2 * n).map(|d| if d % 2 == 0 { Sign::Plus } else { Sign::Minus }).collect(),
    );
    let rep = CombMap::from_permutations_unchecked(tau, alpha);
    TwoTwoPremap::from_normalized(rep, sign, Some(labels))
}

/// Vertex-medial map of an oriented map: the edge `{d, alpha(d)}` becomes the
/// rotation `(d+, d-, alpha(d)-, alpha(d)+)` when `d` is positive.
pub fn vertex_medial_map(m: &CombMap, sigma: &Orientation) -> (CombMap, Orientation) {
    let pm = vertex_medial_premap(m);
    let rep = pm.representative_with(|e| {
        let d = pm.cycle(e)[0] / 2;
        sigma.sign(d) == Sign::Plus
    });
    (rep, pm.sign().clone())
}

/// Straight-ahead successor in a map whose vertices all have degree 4.
pub fn straight_ahead(m: &CombMap, d: Dart) -> Dart {
    m.tau(m.tau(d))
}

/// Walks straight ahead through a labelled premap and returns the words met.
///
/// Each walk enters a vertex by a positive dart, leaves by the opposite dart
/// and follows its edge. Walks are ordered by least positive dart and each
/// starts at its least positive dart.
pub fn trace_paragraph(pm: &TwoTwoPremap) -> Paragraph {
    let labels = pm.labels().expect("trace needs a labelled premap");
    trace_map(pm.rep(), pm.sign(), labels)
}

/// Straight-ahead trace of a 2/2-map with one label per vertex.
pub fn trace_map(m: &CombMap, sign: &Orientation, labels: &[Character]) -> Paragraph {
    let n = m.num_darts();
    let mut seen = vec![false; n];
    let mut words = Vec::new();
    for start in 0..n {
        if seen[start] || sign.sign(start) != Sign::Plus {
            continue;
        }
        let mut word = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            word.push(labels[m.vertex_of(d)].clone());
            d = m.alpha(straight_ahead(m, d));
        }
        words.push(word);
    }
    Paragraph::new(words).expect("every vertex is met twice")
}

/// The paragraph traced by the medial of `m`, with edges labelled `1..`.
pub fn medial_paragraph(m: &CombMap) -> Paragraph {
    trace_paragraph(&vertex_medial_premap(m))
}
