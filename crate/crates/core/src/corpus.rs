//! Built-in group corpora, embedded at compile time.

use crate::error::{Error, Result};
use crate::io::{parse_corpus, CorpusEntry};

const BUILTIN: &str = include_str!("../corpus/builtin.json");
const APPENDIX: &str = include_str!("../corpus/appendix.json");

/// Reducible, scalar, Borel, SL_2, GL_2, dihedral-induced and `G_n` examples
/// with `n <= 3` over `GF(l)`, `l` in `{3, 5, 7, 11, 13}`.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    parse_corpus(BUILTIN).expect("embedded corpus parses")
}

/// Absolutely irreducible entries with `l >= 2(n + 1)`, all expected adequate.
pub fn appendix_corpus() -> Vec<CorpusEntry> {
    parse_corpus(APPENDIX).expect("embedded corpus parses")
}

/// Looks up a built-in entry by name.
pub fn builtin(name: &str) -> Result<CorpusEntry> {
    builtin_corpus()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Invalid(format!("no built-in group named {name}")))
}
