//! Rendering of run and Grover results as text, CSV or JSON.
//!
//! CSV and JSON print probabilities with 12 significant digits; the text
//! format rounds to 4 decimals and adds a bar histogram. All renderers are
//! deterministic: the same report always yields the same bytes.

use std::fmt::Write;

use phaseprobe_core::numfmt::significant;
use phaseprobe_core::{BasisIndex, InterpretationModel};
use serde::Serialize;

const BAR_WIDTH: usize = 40;
const DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    MonteCarlo,
}

/// One model's predicted (exact) or observed (Monte Carlo) distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelResult {
    pub model: InterpretationModel,
    /// `None` in exact mode.
    pub counts: Option<Vec<u64>>,
    /// Exact probabilities or empirical frequencies.
    pub frequencies: Vec<f64>,
    pub trials: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub source: String,
    pub qubits: u32,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub results: Vec<ModelResult>,
    /// Present when two models were compared.
    pub total_variation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroverReport {
    pub qubits: u32,
    pub marked: BasisIndex,
    pub iterations: u32,
    pub diffusion: &'static str,
    pub success_probability: f64,
    pub probabilities: Vec<f64>,
}

fn rounded(x: f64) -> f64 {
    significant(x, DIGITS)
        .parse()
        .expect("formatted float parses")
}

fn bar(p: f64) -> String {
    "#".repeat((p.clamp(0.0, 1.0) * BAR_WIDTH as f64).round() as usize)
}

fn write_table(out: &mut String, qubits: u32, counts: Option<&[u64]>, freqs: &[f64]) {
    let label_width = (qubits as usize + 2).max(7);
    match counts {
        Some(_) => {
            let _ = writeln!(
                out,
                "{:<label_width$}  {:>10}  {:>9}  histogram",
                "outcome", "count", "frequency"
            );
        }
        None => {
            let _ = writeln!(
                out,
                "{:<label_width$}  {:>11}  histogram",
                "outcome", "probability"
            );
        }
    }
    for (i, p) in freqs.iter().enumerate() {
        let ket = format!("|{}>", BasisIndex(i).to_bitstring(qubits));
        let _ = match counts {
            Some(c) => writeln!(
                out,
                "{ket:<label_width$}  {:>10}  {:>9.4}  {}",
                c[i],
                p,
                bar(*p)
            ),
            None => writeln!(out, "{ket:<label_width$}  {:>11.4}  {}", p, bar(*p)),
        };
    }
}

impl RunReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "source: {}", self.source);
        let _ = writeln!(out, "qubits: {}", self.qubits);
        match (self.mode, self.seed) {
            (Mode::Exact, _) => {
                let _ = writeln!(out, "mode: exact");
            }
            (Mode::MonteCarlo, seed) => {
                let trials = self.results.first().map_or(0, |r| r.trials);
                let _ = writeln!(
                    out,
                    "mode: monte carlo ({trials} trials, seed {})",
                    seed.unwrap_or_default()
                );
            }
        }
        for r in &self.results {
            let _ = writeln!(out, "\nmodel: {}", r.model);
            write_table(&mut out, self.qubits, r.counts.as_deref(), &r.frequencies);
        }
        if let Some(tv) = self.total_variation {
            let _ = writeln!(out, "\ntotal variation distance: {tv:.4}");
        }
        out
    }

    /// Single model: `outcome,bitstring,count,frequency`. Several models get
    /// a leading `model` column. `count` is empty in exact mode.
    fn render_csv(&self) -> String {
        let multi = self.results.len() > 1;
        let mut out = String::new();
        if multi {
            out.push_str("model,");
        }
        out.push_str("outcome,bitstring,count,frequency\n");
        for r in &self.results {
            for (i, p) in r.frequencies.iter().enumerate() {
                if multi {
                    let _ = write!(out, "{},", r.model);
                }
                let count = r
                    .counts
                    .as_ref()
                    .map(|c| c[i].to_string())
                    .unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{i},{},{count},{}",
                    BasisIndex(i).to_bitstring(self.qubits),
                    significant(*p, DIGITS)
                );
            }
        }
        out
    }

    fn render_json(&self) -> String {
        #[derive(Serialize)]
        struct Result<'a> {
            model: &'static str,
            qubits: u32,
            trials: u64,
            counts: Option<&'a [u64]>,
            frequencies: Vec<f64>,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            source: &'a str,
            qubits: u32,
            mode: Mode,
            seed: Option<u64>,
            trials: u64,
            bitstrings: Vec<String>,
            results: Vec<Result<'a>>,
            total_variation: Option<f64>,
        }
        let doc = Doc {
            source: &self.source,
            qubits: self.qubits,
            mode: self.mode,
            seed: self.seed,
            trials: self.results.first().map_or(0, |r| r.trials),
            bitstrings: (0..1usize << self.qubits)
                .map(|i| BasisIndex(i).to_bitstring(self.qubits))
                .collect(),
            results: self
                .results
                .iter()
                .map(|r| Result {
                    model: r.model.name(),
                    qubits: self.qubits,
                    trials: r.trials,
                    counts: r.counts.as_deref(),
                    frequencies: r.frequencies.iter().map(|p| rounded(*p)).collect(),
                })
                .collect(),
            total_variation: self.total_variation.map(rounded),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }
}

impl GroverReport {
    pub fn render(&self, format: Format) -> String {
        let marked = self.marked.to_bitstring(self.qubits);
        match format {
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "qubits: {}", self.qubits);
                let _ = writeln!(out, "marked: {marked}");
                let _ = writeln!(out, "iterations: {}", self.iterations);
                let _ = writeln!(out, "diffusion: {}", self.diffusion);
                let _ = writeln!(
                    out,
                    "success probability: {:.4}\n",
                    self.success_probability
                );
                write_table(&mut out, self.qubits, None, &self.probabilities);
                out
            }
            Format::Csv => {
                let mut out = String::from("outcome,bitstring,count,frequency\n");
                for (i, p) in self.probabilities.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "{i},{},,{}",
                        BasisIndex(i).to_bitstring(self.qubits),
                        significant(*p, DIGITS)
                    );
                }
                out
            }
            Format::Json => {
                #[derive(Serialize)]
                struct Doc<'a> {
                    qubits: u32,
                    marked: &'a str,
                    iterations: u32,
                    diffusion: &'a str,
                    success_probability: f64,
                    probabilities: Vec<f64>,
                }
                let doc = Doc {
                    qubits: self.qubits,
                    marked: &marked,
                    iterations: self.iterations,
                    diffusion: self.diffusion,
                    success_probability: rounded(self.success_probability),
                    probabilities: self.probabilities.iter().map(|p| rounded(*p)).collect(),
                };
                let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }
}
