//! Graph sources and output helpers shared by the subcommands.

use std::io::{ErrorKind, Read, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args;
use qwzeta_core::graph::parse_edge_list;
use qwzeta_core::{Graph, GraphFamily, NumericValue};
use serde_json::{json, Value};

use crate::Format;

#[derive(Args, Debug)]
pub struct GraphArgs {
    /// Family spec such as `cycle:5`, `star:4`, `complete:4`, `bipartite:2,3`
    #[arg(long)]
    pub family: Option<GraphFamily>,
    /// Edge-list file, `-` for stdin
    #[arg(long)]
    pub input: Option<PathBuf>,
}

/// A loaded graph with the label it was requested by.
pub struct Loaded {
    pub label: String,
    pub family: Option<GraphFamily>,
    pub graph: Graph,
}

impl Loaded {
    pub fn summary(&self) -> Value {
        json!({
            "label": self.label,
            "n": self.graph.vertex_count(),
            "m": self.graph.edge_count(),
        })
    }

    pub fn heading(&self) -> String {
        format!(
            "{} (n = {}, m = {})",
            self.label,
            self.graph.vertex_count(),
            self.graph.edge_count()
        )
    }
}

pub fn read_edge_list(path: &PathBuf) -> anyhow::Result<Graph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_edge_list(&text).with_context(|| format!("in {}", path.display()))
}

impl GraphArgs {
    pub fn is_given(&self) -> bool {
        self.family.is_some() || self.input.is_some()
    }

    pub fn load(&self) -> anyhow::Result<Loaded> {
        match (&self.family, &self.input) {
            (Some(f), None) => Ok(Loaded {
                label: f.to_string(),
                family: Some(*f),
                graph: f.generate()?,
            }),
            (None, Some(path)) => Ok(Loaded {
                label: path.display().to_string(),
                family: None,
                graph: read_edge_list(path)?,
            }),
            _ => bail!("give exactly one of --family and --input"),
        }
    }
}

/// Writes to stdout, treating a closed pipe as success.
pub fn write_stdout(text: &str) -> anyhow::Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

pub fn print_json(value: &Value) -> anyhow::Result<()> {
    write_stdout(&format!("{}\n", serde_json::to_string_pretty(value)?))
}

/// Prints `json` or the text produced by `text`, depending on the format.
pub fn emit(format: Format, json: Value, text: impl FnOnce() -> String) -> anyhow::Result<()> {
    match format {
        Format::Json => print_json(&json),
        Format::Text => write_stdout(&text()),
    }
}

pub fn numeric_text(v: &NumericValue) -> String {
    let z = v.value;
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!(
        "{:.15e} {sign} {:.15e} i  (abs_err {:.1e})",
        z.re,
        z.im.abs(),
        v.abs_err
    )
}

pub fn numeric_json(v: &NumericValue) -> Value {
    serde_json::to_value(v).expect("plain numbers")
}
