//! Shared generators for integration tests.
#![allow(dead_code)]

use gauss_core::{CombMap, Orientation, Paragraph, Sign};
use rand::{rngs::StdRng, seq::SliceRandom, RngExt};
use std::collections::HashSet;

/// All double occurrence words on `n` characters, one per rotation class,
/// as label sequences in first-occurrence normal form.
pub fn double_occurrence_words(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut word = Vec::with_capacity(2 * n);
    let mut count = vec![0u8; n];
    extend(n, &mut word, &mut count, 0, &mut |w| {
        let key = canonical(w);
        if seen.insert(key.clone()) {
            out.push(key);
        }
    });
    out
}

fn extend(n: usize, word: &mut Vec<u8>, count: &mut [u8], used: usize, emit: &mut impl FnMut(&[u8])) {
    if word.len() == 2 * n {
        emit(word);
        return;
    }
    // reuse an open character, or open the next fresh one
    for c in 0..used {
        if count[c] == 1 {
            count[c] = 2;
            word.push(c as u8);
            extend(n, word, count, used, emit);
            word.pop();
            count[c] = 1;
        }
    }
    if used < n {
        count[used] = 1;
        word.push(used as u8);
        extend(n, word, count, used + 1, emit);
        word.pop();
        count[used] = 0;
    }
}

fn normal_form(w: &[u8]) -> Vec<u8> {
    let mut name = [u8::MAX; 256];
    let mut next = 0;
    w.iter()
        .map(|&c| {
            if name[c as usize] == u8::MAX {
                name[c as usize] = next;
                next += 1;
            }
            name[c as usize]
        })
        .collect()
}

/// Least first-occurrence normal form over all rotations.
pub fn canonical(w: &[u8]) -> Vec<u8> {
    (0..w.len())
        .map(|r| {
            let rotated: Vec<u8> = w[r..].iter().chain(&w[..r]).copied().collect();
            normal_form(&rotated)
        })
        .min()
        .expect("non-empty word")
}

pub fn to_paragraph(words: &[Vec<u8>]) -> Paragraph {
    let slices: Vec<Vec<usize>> = words.iter().map(|w| w.iter().map(|&c| c as usize + 1).collect()).collect();
    let refs: Vec<&[usize]> = slices.iter().map(|w| w.as_slice()).collect();
    Paragraph::from_labels(&refs).expect("valid double occurrence paragraph")
}

pub fn word_paragraph(w: &[u8]) -> Paragraph {
    to_paragraph(&[w.to_vec()])
}

/// A random double occurrence word on `n` characters.
pub fn random_word(n: usize, rng: &mut StdRng) -> Vec<u8> {
    let mut w: Vec<u8> = (0..n as u8).flat_map(|c| [c, c]).collect();
    w.shuffle(rng);
    w
}

/// A random double occurrence paragraph on `n` characters split into up to
/// `max_words` non-empty words.
pub fn random_paragraph(n: usize, max_words: usize, rng: &mut StdRng) -> Vec<Vec<u8>> {
    let w = random_word(n, rng);
    let k = rng.random_range(1..=max_words.min(w.len()));
    let mut cuts: Vec<usize> = (1..w.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
    cuts.sort_unstable();
    let mut out = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain([w.len()]) {
        out.push(w[start..c].to_vec());
        start = c;
    }
    out
}

/// A random map with `edges` edges: random edge pairing and random rotations.
pub fn random_map(edges: usize, rng: &mut StdRng) -> CombMap {
    let n = 2 * edges;
    let mut darts: Vec<usize> = (0..n).collect();
    darts.shuffle(rng);
    let mut cycles = Vec::new();
    let mut i = 0;
    while i < n {
        let len = rng.random_range(1..=(n - i).min(5));
        cycles.push(darts[i..i + len].to_vec());
        i += len;
    }
    let pairs: Vec<(usize, usize)> = (0..edges).map(|e| (2 * e, 2 * e + 1)).collect();
    CombMap::new(cycles, &pairs).expect("valid random map")
}

pub fn random_orientation(m: &CombMap, rng: &mut StdRng) -> Orientation {
    let mut signs = vec![Sign::Plus; m.num_darts()];
    for (a, b) in m.edges() {
        let s = if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus };
        signs[a] = s;
        signs[b] = -s;
    }
    Orientation::new(m, signs).expect("valid orientation")
}
