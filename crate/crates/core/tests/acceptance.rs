//! Acceptance suite. Runs every criterion in order and prints one PASS/FAIL
//! line per criterion; exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{double_occurrence_words, random_map, random_orientation, random_paragraph, random_word, to_paragraph, word_paragraph};
use gauss_core::orient::Flips;
use gauss_core::sv::{build_sv, conflict_and_embed};
use gauss_core::{
    alg, alg_with_flips, chart_violations, cyclic_equal, embed_paragraph, enumerate_embeddings, oracle_min_genus,
    parse_paragraph, premap_from_paragraph, random_gauss, seifert_map, seifert_oriented, vertex_medial_map,
    vertex_medial_premap, CombMap, Orientation, Paragraph, RecognizeError, TwoTwoPremap,
};
use rand::{rngs::StdRng, seq::SliceRandom, RngExt, SeedableRng};
use rustworkx_core::petgraph::graph::UnGraph;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The oracle corpus: every word on at most 6 characters up to rotation and
/// 500 random words on 7 to 10 characters.
fn corpus() -> Vec<Vec<u8>> {
    let mut words: Vec<Vec<u8>> = (1..=6).flat_map(double_occurrence_words).collect();
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..500 {
        let n = rng.random_range(7..=10);
        words.push(random_word(n, &mut rng));
    }
    words
}

fn criterion_1() -> Outcome {
    let gauss = parse_paragraph("1 2 3 4 2 1 4 3").map_err(|e| e.to_string())?;
    let not_gauss = parse_paragraph("1 2 3 4 5 3 4 1 2 5").map_err(|e| e.to_string())?;
    // warm up once, then time
    embed_paragraph(&gauss, &Flips::none());
    let t = Instant::now();
    let r = embed_paragraph(&gauss, &Flips::none());
    let t1 = t.elapsed();
    let t = Instant::now();
    let s = embed_paragraph(&not_gauss, &Flips::none());
    let t2 = t.elapsed();
    ensure(r.is_plane && r.genus == 0, || "12342143 not embedded in the plane".into())?;
    ensure(cyclic_equal(&r.traced, &gauss), || format!("trace {} differs from input", r.traced))?;
    ensure(!s.is_plane, || "1234534125 accepted".into())?;
    let limit = Duration::from_millis(10);
    ensure(t1 < limit && t2 < limit, || format!("too slow: {t1:?}, {t2:?}"))?;
    Ok(format!("12342143 plane ({t1:?}), 1234534125 rejected with genus {} ({t2:?})", s.genus))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let words = corpus();
    let mut mismatches = Vec::new();
    let mut gauss = 0;
    for w in &words {
        let p = word_paragraph(w);
        let fast = embed_paragraph(&p, &Flips::none()).is_plane;
        let oracle = oracle_min_genus(&premap_from_paragraph(&p)).map_err(|e| e.to_string())?;
        gauss += usize::from(fast);
        if fast != (oracle.min_genus == 0) {
            mismatches.push(p.to_string());
        }
    }
    let elapsed = start.elapsed();
    ensure(mismatches.is_empty(), || format!("{} mismatches, e.g. {:?}", mismatches.len(), &mismatches[..mismatches.len().min(5)]))?;
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
    Ok(format!("{} words ({} Gauss), 0 mismatches, {:?}", words.len(), gauss, elapsed))
}

fn criterion_3() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    for i in 0..1000 {
        let m = random_map(rng.random_range(1..=12), &mut rng);
        let sigma = random_orientation(&m, &mut rng);
        let (mv, sign) = vertex_medial_map(&m, &sigma);
        let (sf, back) = seifert_oriented(&mv, &sign).map_err(|e| e.to_string())?;
        // Seifert darts are the positive medial darts 2d, compacted to d
        ensure(sf.positive == (0..m.num_darts()).map(|d| 2 * d).collect::<Vec<_>>(), || {
            format!("map {i}: unexpected dart correspondence")
        })?;
        ensure(sf.map == m && back == sigma, || format!("map {i}: Sf(Mv(m, s)) != (m, s)"))?;
    }
    for i in 0..1000 {
        let n = rng.random_range(1..=8);
        let p = to_paragraph(&random_paragraph(n, 3, &mut rng));
        let base = premap_from_paragraph(&p);
        // an arbitrary dart numbering, so the premap is not in paragraph form
        let mut perm: Vec<usize> = (0..base.num_darts()).collect();
        perm.shuffle(&mut rng);
        for pm in [base.clone(), base.relabel(&perm)] {
            let sf = seifert_map(&pm);
            let phi = sf.medial_dart_bijection(&pm);
            let mv = vertex_medial_premap(&sf.map).relabel(&phi);
            ensure(mv.same_premap(&pm), || format!("premap {i} ({p}): Mv(Sf(P)) != P"))?;
        }
    }
    Ok("1000 oriented maps and 1000 premaps (2000 numberings) round-trip exactly".into())
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut total = 0u64;
    for i in 0..50 {
        let m = random_map(rng.random_range(1..=10), &mut rng);
        let e = m.num_edges();
        let pm = vertex_medial_premap(&m);
        ensure(pm.num_vertices() == e, || format!("map {i}: medial has {} vertices", pm.num_vertices()))?;
        let mut reps = BTreeSet::new();
        for mask in 0..1u64 << e {
            let sigma = Orientation::from_edge_mask(&m, mask);
            let (rep, _) = vertex_medial_map(&m, &sigma);
            let flips = pm.flips_of(&rep).ok_or_else(|| format!("map {i}: not a representative"))?;
            reps.insert(flips);
        }
        ensure(reps.len() == 1 << e, || format!("map {i}: {} distinct of {}", reps.len(), 1u64 << e))?;
        total += 1 << e;
    }
    Ok(format!("50 maps, {total} orientations, each map bijective onto its 2^|V(Mv)| representatives"))
}

fn all_flip_genera(p: &Paragraph) -> Vec<usize> {
    let m = seifert_map(&premap_from_paragraph(p)).map;
    let (_, diag) = alg(&m);
    let slots = diag.choice_slots();
    (0..1u64 << slots.len())
        .map(|mask| {
            let (o, _) = alg_with_flips(&m, &Flips::from_mask(&slots, mask));
            vertex_medial_map(&m, &o).0.genus()
        })
        .collect()
}

fn criterion_5() -> Outcome {
    let (mut g, mut ng, mut combos) = (0, 0, 0);
    for n in 1..=7 {
        for w in double_occurrence_words(n) {
            let p = word_paragraph(&w);
            let oracle = oracle_min_genus(&premap_from_paragraph(&p)).map_err(|e| e.to_string())?;
            let genera = all_flip_genera(&p);
            combos += genera.len();
            if oracle.min_genus == 0 {
                g += 1;
                ensure(genera.iter().all(|&x| x == 0), || format!("Gauss word {p}: genera {genera:?}"))?;
            } else {
                ng += 1;
                ensure(genera.iter().all(|&x| x >= 1), || format!("non-Gauss word {p}: genera {genera:?}"))?;
            }
        }
    }
    Ok(format!("{g} Gauss and {ng} non-Gauss words, {combos} flip combinations"))
}

fn literal_planar(edges: &[(usize, usize)]) -> bool {
    let g = UnGraph::<(), ()>::from_edges(edges.iter().map(|&(a, b)| (a as u32, b as u32)));
    rustworkx_core::planar::is_planar(&g)
}

fn criterion_6() -> Outcome {
    let (mut gauss, mut instances, mut nonplanar) = (0, 0, 0);
    for w in corpus() {
        let p = word_paragraph(&w);
        let m = seifert_map(&premap_from_paragraph(&p)).map;
        let (o, diag) = alg(&m);
        let plane = vertex_medial_map(&m, &o).0.genus() == 0;
        if plane {
            gauss += 1;
            ensure(diag.bipartite, || format!("{p}: Seifert map not bipartite"))?;
            ensure(diag.sv_planar, || format!("{p}: some S_v not planar"))?;
        }
        let root = diag.roots[0];
        for &v in diag.free_choice_count.keys() {
            let sv = build_sv(&m, v, root);
            let fast = conflict_and_embed(&sv, |_| false).planar;
            let reference = literal_planar(&sv.literal_edges());
            instances += 1;
            nonplanar += usize::from(!reference);
            ensure(fast == reference, || format!("{p}: S_v of vertex {v} planar={reference}, conflict test={fast}"))?;
        }
    }
    Ok(format!("{gauss} Gauss words satisfy both conditions; {instances} S_v instances ({nonplanar} non-planar) agree with the planarity oracle"))
}

fn criterion_7() -> Outcome {
    let mut embeddings = 0;
    let mut crossings = 0;
    let mut check = |p: &Paragraph| -> Result<(), String> {
        let all = match enumerate_embeddings(p) {
            Ok(all) => all,
            Err(RecognizeError::NotRealizable { .. }) => return Ok(()),
            Err(e) => return Err(format!("{p}: {e}")),
        };
        for r in all {
            let v = chart_violations(&r);
            ensure(v.is_empty(), || format!("{p}: {v:?}"))?;
            embeddings += 1;
            crossings += r.premap.num_vertices();
        }
        Ok(())
    };
    for n in 1..=7 {
        for w in double_occurrence_words(n) {
            check(&word_paragraph(&w))?;
        }
    }
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..300 {
        let n = rng.random_range(1..=8);
        check(&to_paragraph(&random_paragraph(n, 3, &mut rng)))?;
    }
    // generated codes, kept small enough to expand every choice
    let mut generated = 0;
    for seed in 0.. {
        if generated == 100 {
            break;
        }
        let p = random_gauss(8 + seed as usize % 25, seed);
        let slots = embed_paragraph(&p, &Flips::none()).diagnostics.total_choices();
        if slots <= 12 {
            check(&p)?;
            generated += 1;
        }
    }
    Ok(format!("{embeddings} plane embeddings, {crossings} crossings, 0 violations"))
}

fn time_embed(p: &Paragraph) -> Duration {
    let mut best = Duration::MAX;
    let budget = Instant::now();
    let mut runs = 0;
    while runs < 5 || budget.elapsed() < Duration::from_millis(300) {
        let t = Instant::now();
        let r = embed_paragraph(p, &Flips::none());
        best = best.min(t.elapsed());
        assert!(r.is_plane);
        runs += 1;
    }
    best
}

fn criterion_8() -> Outcome {
    let sizes = [1000, 2000, 4000, 8000, 16000];
    let codes: Vec<Paragraph> = sizes.iter().map(|&n| random_gauss(n, 8)).collect();
    for p in &codes {
        embed_paragraph(p, &Flips::none());
    }
    let times: Vec<Duration> = codes.iter().map(time_embed).collect();
    let ratios: Vec<f64> = times.windows(2).map(|w| w[1].as_secs_f64() / w[0].as_secs_f64()).collect();
    let table = sizes
        .iter()
        .zip(&times)
        .map(|(n, t)| format!("{n}:{:.2}ms", t.as_secs_f64() * 1e3))
        .collect::<Vec<_>>()
        .join(" ");
    let ratio_text = ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>().join(", ");
    ensure(ratios.iter().all(|r| (1.6..=2.6).contains(r)), || format!("ratios {ratio_text} ({table})"))?;
    ensure(times[4] < Duration::from_secs(1), || format!("16k took {:?}", times[4]))?;
    Ok(format!("{table}; ratios {ratio_text}"))
}

fn criterion_9() -> Outcome {
    let m = CombMap::new(vec![vec![0, 1]], &[(0, 1)]).map_err(|e| e.to_string())?;
    for mask in 0..2 {
        let sigma = Orientation::from_edge_mask(&m, mask);
        let (mv, _) = vertex_medial_map(&m, &sigma);
        ensure(mv.genus() == 1, || format!("genus {}", mv.genus()))?;
    }
    let premap: TwoTwoPremap = vertex_medial_premap(&m);
    Ok(format!("medial of the single-loop map has genus 1 ({} vertex, {} edges)", premap.num_vertices(), premap.rep().num_edges()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("named instances", criterion_1),
        ("oracle equivalence", criterion_2),
        ("invertibility", criterion_3),
        ("orientation bijection", criterion_4),
        ("flip independence", criterion_5),
        ("necessary conditions", criterion_6),
        ("chart conformance", criterion_7),
        ("linear scaling", criterion_8),
        ("torus witness", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("PASS criterion {} ({name}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
