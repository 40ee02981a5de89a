//! The process-model genome: a binary causality relation matrix, its
//! dependency-seeded random initialization, and exports to Petri-net
//! formats for inspection.
//!
//! The exported net uses a place-per-causal-arc mapping with synthetic
//! source/sink places. It exists for visualization only; every quality
//! metric operates on the matrix directly, so display semantics never
//! affect fitness.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::QualityVector;

/// An n-by-n binary matrix; entry (t1, t2) = 1 asserts "t1 causes t2".
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CausalityMatrix {
    n: usize,
    bits: Vec<u8>,
}

impl CausalityMatrix {
    pub fn zeros(n: usize) -> CausalityMatrix {
        CausalityMatrix {
            n,
            bits: vec![0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_set(&self, t1: usize, t2: usize) -> bool {
        self.bits[t1 * self.n + t2] != 0
    }

    #[inline]
    pub fn bit(&self, t1: usize, t2: usize) -> u8 {
        self.bits[t1 * self.n + t2]
    }

    #[inline]
    pub fn set(&mut self, t1: usize, t2: usize, value: bool) {
        self.bits[t1 * self.n + t2] = value as u8;
    }

    /// Row-major 0/1 entries.
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b != 0).count()
    }

    pub fn row_degree(&self, t1: usize) -> usize {
        (0..self.n).filter(|&t2| self.is_set(t1, t2)).count()
    }

    pub fn col_degree(&self, t2: usize) -> usize {
        (0..self.n).filter(|&t1| self.is_set(t1, t2)).count()
    }

    /// Set bits in row-major order.
    pub fn set_bits(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(move |(i, _)| (i / n, i % n))
    }

    pub fn from_bits(n: usize, bits: Vec<u8>) -> CausalityMatrix {
        assert_eq!(bits.len(), n * n);
        debug_assert!(bits.iter().all(|&b| b <= 1));
        CausalityMatrix { n, bits }
    }
}

/// A population member: the model plus bookkeeping filled in during
/// evaluation and environmental selection.
#[derive(Debug, Clone)]
pub struct Individual {
    pub model: CausalityMatrix,
    pub fitness: Option<QualityVector>,
    pub rank: Option<usize>,
    pub crowding: Option<f64>,
}

impl Individual {
    pub fn new(model: CausalityMatrix) -> Individual {
        Individual {
            model,
            fitness: None,
            rank: None,
            crowding: None,
        }
    }
}

/// Draws `pop_size` individuals; each bit is set independently iff a
/// fresh uniform r in [0, 1) falls below the corresponding dependency
/// entry. Deterministic given the RNG state.
pub fn init_population(
    n: usize,
    pop_size: usize,
    dependency: &[f64],
    rng: &mut impl Rng,
) -> Result<Vec<Individual>> {
    if pop_size < 4 {
        return Err(Error::PopulationTooSmall(pop_size));
    }
    assert_eq!(dependency.len(), n * n, "dependency matrix dimension");
    let mut pop = Vec::with_capacity(pop_size);
    for _ in 0..pop_size {
        let mut m = CausalityMatrix::zeros(n);
        for t1 in 0..n {
            for t2 in 0..n {
                let r: f64 = rng.random();
                if r < dependency[t1 * n + t2] {
                    m.set(t1, t2, true);
                }
            }
        }
        pop.push(Individual::new(m));
    }
    Ok(pop)
}

/// A bipartite place/transition net, ready for DOT or PNML export.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriNet {
    pub places: Vec<String>,
    /// (id, label) pairs, one transition per task.
    pub transitions: Vec<(String, String)>,
    /// (source id, target id) pairs.
    pub arcs: Vec<(String, String)>,
}

/// Maps a causality matrix to a Petri net: one transition per task, one
/// place per set bit with arcs t1 -> place -> t2, a source place feeding
/// every task with zero in-degree and a sink place fed by every task with
/// zero out-degree. Tasks without any arc still appear as disconnected
/// transitions.
pub fn to_petri_net(model: &CausalityMatrix, tasks: &[String]) -> PetriNet {
    let n = model.n();
    assert_eq!(tasks.len(), n, "task list dimension");

    let transitions: Vec<(String, String)> = (0..n)
        .map(|t| (format!("t{t}"), tasks[t].clone()))
        .collect();

    let mut places = vec!["source".to_string()];
    let mut arcs: Vec<(String, String)> = (0..n)
        .filter(|&t| model.col_degree(t) == 0)
        .map(|t| ("source".to_string(), format!("t{t}")))
        .collect();

    for (t1, t2) in model.set_bits() {
        let p = format!("p_{t1}_{t2}");
        arcs.push((format!("t{t1}"), p.clone()));
        arcs.push((p.clone(), format!("t{t2}")));
        places.push(p);
    }

    for t in (0..n).filter(|&t| model.row_degree(t) == 0) {
        arcs.push((format!("t{t}"), "sink".to_string()));
    }
    places.push("sink".to_string());

    PetriNet {
        places,
        transitions,
        arcs,
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders the net as a Graphviz digraph: places as circles, transitions
/// as boxes.
pub fn export_dot(net: &PetriNet) -> String {
    let mut out = String::from("digraph model {\n  rankdir=LR;\n");
    for p in &net.places {
        out.push_str(&format!(
            "  \"{}\" [shape=circle, label=\"\", xlabel=\"{}\"];\n",
            dot_escape(p),
            dot_escape(p)
        ));
    }
    for (id, label) in &net.transitions {
        out.push_str(&format!(
            "  \"{}\" [shape=box, label=\"{}\"];\n",
            dot_escape(id),
            dot_escape(label)
        ));
    }
    for (from, to) in &net.arcs {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            dot_escape(from),
            dot_escape(to)
        ));
    }
    out.push_str("}\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the net as minimal PNML: net/page/place/transition/arc
/// elements with ids, nothing else.
pub fn export_pnml(net: &PetriNet) -> String {
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <pnml xmlns=\"http://www.pnml.org/version-2009/grammar/pnml\">\n\
         \x20 <net id=\"net1\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n\
         \x20   <page id=\"page1\">\n",
    );
    for p in &net.places {
        out.push_str(&format!("      <place id=\"{}\"/>\n", xml_escape(p)));
    }
    for (id, label) in &net.transitions {
        out.push_str(&format!(
            "      <transition id=\"{}\"><name><text>{}</text></name></transition>\n",
            xml_escape(id),
            xml_escape(label)
        ));
    }
    for (i, (from, to)) in net.arcs.iter().enumerate() {
        out.push_str(&format!(
            "      <arc id=\"a{}\" source=\"{}\" target=\"{}\"/>\n",
            i,
            xml_escape(from),
            xml_escape(to)
        ));
    }
    out.push_str("    </page>\n  </net>\n</pnml>\n");
    out
}

/// Writes the matrix as CSV: a header row of task names, then n rows of
/// n comma-separated 0/1 entries.
pub fn export_matrix_csv(model: &CausalityMatrix, tasks: &[String]) -> String {
    let n = model.n();
    assert_eq!(tasks.len(), n, "task list dimension");
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(tasks).expect("csv write");
    for t1 in 0..n {
        let row: Vec<String> = (0..n).map(|t2| model.bit(t1, t2).to_string()).collect();
        writer.write_record(&row).expect("csv write");
    }
    String::from_utf8(writer.into_inner().expect("csv flush")).expect("csv utf8")
}

/// Inverse of [`export_matrix_csv`]: returns the task names from the
/// header and the matrix. Rejects non-square or non-binary grids.
pub fn parse_matrix_csv(input: &[u8]) -> Result<(Vec<String>, CausalityMatrix)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(input);
    let tasks: Vec<String> = reader
        .headers()
        .map_err(|e| Error::BadMatrixFile(e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    let n = tasks.len();
    if n == 0 {
        return Err(Error::BadMatrixFile("empty header".into()));
    }
    let mut bits = Vec::with_capacity(n * n);
    let mut rows = 0usize;
    for record in reader.records() {
        let record = record.map_err(|e| Error::BadMatrixFile(e.to_string()))?;
        rows += 1;
        if record.len() != n {
            return Err(Error::BadMatrixFile(format!(
                "row {} has {} entries, expected {}",
                rows,
                record.len(),
                n
            )));
        }
        for field in record.iter() {
            match field.trim() {
                "0" => bits.push(0),
                "1" => bits.push(1),
                other => {
                    return Err(Error::BadMatrixFile(format!(
                        "non-binary entry {other:?} in row {rows}"
                    )))
                }
            }
        }
    }
    if rows != n {
        return Err(Error::BadMatrixFile(format!("{rows} rows for {n} tasks")));
    }
    Ok((tasks, CausalityMatrix::from_bits(n, bits)))
}
