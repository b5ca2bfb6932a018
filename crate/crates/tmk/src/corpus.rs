//! The bundled corpus: named matroids and the example cycle files shipped
//! in `corpus/`.

use tmk_core::cycles::FanCycle;
use tmk_core::matroid::Matroid;

use crate::formats::{cycle_from_json, named_matroid, parse_json, ParseError};

/// A cycle file compiled into the binary.
#[derive(Debug, Clone, Copy)]
pub struct CorpusFile {
    /// File name, usable wherever a cycle path is expected.
    pub name: &'static str,
    /// Matroid whose fan contains the cycle.
    pub matroid: &'static str,
    /// The JSON text.
    pub text: &'static str,
}

/// Every bundled cycle file.
pub const CYCLE_FILES: &[CorpusFile] = &[
    CorpusFile { name: "exampleA.json", matroid: "uniform:3,4", text: include_str!("../corpus/exampleA.json") },
    CorpusFile { name: "exampleB_d2.json", matroid: "uniform:3,4", text: include_str!("../corpus/exampleB_d2.json") },
    CorpusFile { name: "exampleB_d3.json", matroid: "uniform:3,4", text: include_str!("../corpus/exampleB_d3.json") },
    CorpusFile { name: "exampleB_d5.json", matroid: "uniform:3,4", text: include_str!("../corpus/exampleB_d5.json") },
];

/// The concrete matroids the test suites iterate over, by builder name.
pub const CORPUS_MATROIDS: &[&str] =
    &["uniform:2,3", "uniform:2,4", "uniform:3,4", "uniform:3,5", "uniform:4,5", "graphic:K4", "fano", "nonfano"];

/// The bundled file with this name.
pub fn cycle_file(name: &str) -> Option<&'static CorpusFile> {
    CYCLE_FILES.iter().find(|f| f.name == name)
}

/// Parses a bundled cycle file.
pub fn load_cycle(name: &str) -> Result<FanCycle, ParseError> {
    let f = cycle_file(name).ok_or_else(|| ParseError::new(name, "no bundled cycle of this name"))?;
    cycle_from_json(f.name, &parse_json(f.name, f.text)?)
}

/// The corpus matroids, paired with their names.
pub fn matroids() -> Vec<(&'static str, Matroid)> {
    CORPUS_MATROIDS
        .iter()
        .map(|&name| (name, named_matroid(name).expect("corpus names are builders").expect("corpus builders are valid")))
        .collect()
}
