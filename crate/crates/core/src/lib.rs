//! Gauss code and Gauss paragraph realizability through Seifert maps.
//!
//! A paragraph is realizable as a plane curve family exactly when some
//! representative of its 2/2-premap has genus zero. The [`orient`] module
//! finds such a representative in linear time by orienting the Seifert map;
//! [`recognize`] wraps it together with an exhaustive reference search.

pub mod map;
pub mod medial;
pub mod orient;
pub mod recognize;
pub mod seifert;
pub mod sv;
pub mod words;

pub use map::{Bipartition, Block, BlockTree, CombMap, Dart, MapDoc, MapError, Orientation, Sign, Vertex};
pub use medial::{medial_paragraph, straight_ahead, trace_map, trace_paragraph, vertex_medial_map, vertex_medial_premap};
pub use orient::{alg, alg_with_flips, Diagnostics, Flips};
pub use recognize::{
    chart_violations, embed_paragraph, embed_premap, enumerate_embeddings, is_gauss, oracle_min_genus, random_gauss,
    ChartViolation, EmbedResult, OracleResult,
    RecognizeError,
};
pub use seifert::{premap_from_paragraph, seifert_map, seifert_oriented, PremapError, SeifertCycle, SeifertMap, TwoTwoPremap};
pub use words::{cyclic_equal, parity_precheck, parse_paragraph, Character, Paragraph, Word, WordError};
