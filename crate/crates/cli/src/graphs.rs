//! `gen`, `zeta`, `ihara`, `spectrum` and `verify`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use qwzeta_core::graph::{random_connected, symmetric_digraph};
use qwzeta_core::matrix::grover_matrix;
use qwzeta_core::poly::factor_unit_basis;
use qwzeta_core::spectrum::grover_spectrum;
use qwzeta_core::zeta::{grover_determinant, grover_zeta, ihara_zeta, verify_graph, IharaMethod};
use qwzeta_core::{Graph, GraphFamily, RationalFunction};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::input::{emit, print_json, read_edge_list, write_stdout, GraphArgs, Loaded};
use crate::{Format, Status};

fn matrix_dump(g: &Graph) -> qwzeta_core::matrix::MatrixJson {
    grover_matrix(g, &symmetric_digraph(g)).to_json()
}

fn matrix_text(g: &Graph) -> String {
    format!(
        "grover matrix:\n{}",
        grover_matrix(g, &symmetric_digraph(g))
    )
}

pub fn gen(
    family: Option<GraphFamily>,
    random: Option<usize>,
    seed: u64,
    p: f64,
    output: Option<PathBuf>,
    dump_matrix: bool,
    format: Format,
) -> anyhow::Result<Status> {
    let (label, graph) = match (family, random) {
        (Some(f), None) => (f.to_string(), f.generate()?),
        (None, Some(n)) => {
            if !(0.0..=1.0).contains(&p) {
                bail!("--p must lie in [0, 1], got {p}");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (
                format!("random:{n} seed {seed} p {p}"),
                random_connected(&mut rng, n, p)?,
            )
        }
        _ => bail!("give exactly one of --family and --random"),
    };
    let edge_list = graph.to_edge_list();
    if let Some(path) = &output {
        std::fs::write(path, &edge_list).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut value = json!({
        "label": label,
        "n": graph.vertex_count(),
        "m": graph.edge_count(),
        "edges": graph.edges(),
    });
    if dump_matrix {
        value["grover_matrix"] = serde_json::to_value(matrix_dump(&graph))?;
    }
    emit(format, value, || {
        let mut out = if output.is_some() {
            String::new()
        } else {
            edge_list.clone()
        };
        if dump_matrix {
            out.push_str(&matrix_text(&graph));
        }
        out
    })?;
    Ok(Status::Ok)
}

fn factor_bound(f: &RationalFunction) -> usize {
    let d = f
        .numerator()
        .degree()
        .unwrap_or(0)
        .max(f.denominator().degree().unwrap_or(0));
    d.max(1)
}

pub fn zeta(
    args: &GraphArgs,
    kmax: Option<usize>,
    dump_matrix: bool,
    format: Format,
) -> anyhow::Result<Status> {
    let g = args.load()?;
    let det = grover_determinant(&g.graph);
    let z = grover_zeta(&g.graph);
    let form = factor_unit_basis(&z, kmax.unwrap_or_else(|| factor_bound(&z)));
    let mut value = json!({
        "graph": g.summary(),
        "zeta": form.to_string(),
        "raw": z.to_string(),
        "determinant": det.to_string(),
        "factored": form,
        "rational_function": z,
    });
    if dump_matrix {
        value["grover_matrix"] = serde_json::to_value(matrix_dump(&g.graph))?;
    }
    emit(format, value, || {
        let mut out = format!("graph: {}\nzeta: {form}\nraw: 1/({det})\n", g.heading());
        if dump_matrix {
            out.push_str(&matrix_text(&g.graph));
        }
        out
    })?;
    Ok(Status::Ok)
}

pub fn ihara(args: &GraphArgs, format: Format) -> anyhow::Result<Status> {
    let g = args.load()?;
    let expression = ihara_zeta(&g.graph, IharaMethod::IharaExpression);
    let support = ihara_zeta(&g.graph, IharaMethod::PositiveSupport);
    let equal = expression == support;
    let value = json!({
        "graph": g.summary(),
        "ihara_expression": expression.to_string(),
        "positive_support": support.to_string(),
        "equal": equal,
    });
    emit(format, value, || {
        format!(
            "graph: {}\nihara expression: {expression}\npositive support: {support}\nequal: {equal}\n",
            g.heading()
        )
    })?;
    Ok(Status::Ok)
}

pub fn spectrum(args: &GraphArgs, format: Format) -> anyhow::Result<Status> {
    let g = args.load()?;
    let spec = grover_spectrum(&g.graph)?;
    let entries: Vec<Value> = spec
        .entries
        .iter()
        .map(|e| {
            json!({
                "re": e.eigenvalue.re_text(),
                "im": e.eigenvalue.im_text(),
                "multiplicity": e.multiplicity,
                "part": e.part,
            })
        })
        .collect();
    let transition: Vec<Value> = spec
        .transition
        .iter()
        .map(|(c, k)| json!({ "eigenvalue": c.to_string(), "multiplicity": k }))
        .collect();
    let value = json!({
        "graph": g.summary(),
        "entries": entries,
        "transition": transition,
        "total_multiplicity": spec.total_multiplicity(),
        "product_sign": spec.product_sign(),
        "multiset": spec,
    });
    emit(format, value, || {
        let mut out = format!("graph: {}\n", g.heading());
        let cells: Vec<(String, usize, String)> = spec
            .entries
            .iter()
            .map(|e| {
                let part = serde_json::to_value(e.part)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from));
                (
                    e.eigenvalue.to_string(),
                    e.multiplicity,
                    part.unwrap_or_default(),
                )
            })
            .collect();
        let width = cells.iter().map(|c| c.0.chars().count()).max().unwrap_or(0);
        for (ev, k, part) in &cells {
            let pad = width - ev.chars().count();
            let _ = writeln!(out, "{ev}{}  x{k:<3} {part}", " ".repeat(pad));
        }
        let _ = writeln!(
            out,
            "total multiplicity {} (2m = {}), product of eigenvalues {}",
            spec.total_multiplicity(),
            2 * g.graph.edge_count(),
            spec.product_sign()
        );
        out
    })?;
    Ok(Status::Ok)
}

fn failed_checks(v: &qwzeta_core::zeta::GraphVerification) -> Vec<&'static str> {
    let mut failed = Vec::new();
    if !v.determinant_identity.holds {
        failed.push("determinant_identity");
    }
    if !v.weight_holds {
        failed.push("weight");
    }
    if !v.ihara_holds {
        failed.push("ihara");
    }
    failed
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "MISMATCH"
    }
}

pub fn verify(args: &GraphArgs, format: Format) -> anyhow::Result<Status> {
    let g: Loaded = args.load()?;
    let v = verify_graph(&g.graph);
    let ok = v.all_hold();
    let expected = json!({ "sign": v.det_u, "weight": -2 * g.graph.edge_count() as i64 });
    let value = json!({
        "graph": g.summary(),
        "all_hold": ok,
        "failed": failed_checks(&v),
        "expected_weight": expected,
        "report": v,
    });
    emit(format, value, || {
        let mut out = format!("graph: {}\n", g.heading());
        let _ = writeln!(out, "determinant identity: {}", holds(v.determinant_identity.holds));
        let _ = writeln!(out, "  det(I - uU) = {}", v.determinant_identity.lhs);
        let _ = writeln!(
            out,
            "  (1 - u^2)^(m-n) det((1 + u^2) I - 2u P) = {}",
            v.determinant_identity.rhs
        );
        let weight = match &v.weight {
            Some(w) => format!("({}, {})", w.sign, w.weight),
            None => "none".into(),
        };
        let _ = writeln!(
            out,
            "weight: {} {weight}, expected ({}, {})",
            holds(v.weight_holds),
            v.det_u,
            -2 * g.graph.edge_count() as i64
        );
        let _ = writeln!(out, "ihara: {}", holds(v.ihara_holds));
        let _ = writeln!(out, "  ihara expression = {}", v.ihara_expression);
        let _ = writeln!(out, "  positive support = {}", v.ihara_positive_support);
        if !v.ihara_holds && g.graph.min_degree() == 1 {
            let _ = writeln!(out, "  note: the graph has a vertex of degree 1");
        }
        let _ = writeln!(out, "result: {}", if ok { "ok" } else { "mismatch" });
        out
    })?;
    Ok(if ok { Status::Ok } else { Status::Mismatch })
}

fn batch_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let path = entry?.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn verify_batch(dir: &Path, format: Format) -> anyhow::Result<Status> {
    let files = batch_files(dir)?;
    if files.is_empty() {
        bail!("no files in {}", dir.display());
    }
    let results: Vec<(
        PathBuf,
        anyhow::Result<qwzeta_core::zeta::GraphVerification>,
    )> = files
        .into_par_iter()
        .map(|path| {
            let r = read_edge_list(&path).map(|g| verify_graph(&g));
            (path, r)
        })
        .collect();
    let mismatches = results
        .iter()
        .filter(|(_, r)| matches!(r, Ok(v) if !v.all_hold()))
        .count();
    let errors = results.iter().filter(|(_, r)| r.is_err()).count();
    match format {
        Format::Json => {
            let rows: Vec<Value> = results
                .iter()
                .map(|(path, r)| match r {
                    Ok(v) => json!({
                        "file": path.display().to_string(),
                        "all_hold": v.all_hold(),
                        "failed": failed_checks(v),
                    }),
                    Err(e) => {
                        json!({ "file": path.display().to_string(), "error": format!("{e:#}") })
                    }
                })
                .collect();
            print_json(&json!({ "results": rows, "mismatches": mismatches, "errors": errors }))?;
        }
        Format::Text => {
            let mut out = String::new();
            for (path, r) in &results {
                let _ = match r {
                    Ok(v) if v.all_hold() => writeln!(out, "{}: ok", path.display()),
                    Ok(v) => writeln!(
                        out,
                        "{}: mismatch ({})",
                        path.display(),
                        failed_checks(v).join(", ")
                    ),
                    Err(e) => writeln!(out, "{}: error: {e:#}", path.display()),
                };
            }
            let _ = writeln!(
                out,
                "{} graphs, {mismatches} mismatches, {errors} errors",
                results.len()
            );
            write_stdout(&out)?;
        }
    }
    if mismatches > 0 {
        Ok(Status::Mismatch)
    } else if errors > 0 {
        bail!("{errors} files could not be read")
    } else {
        Ok(Status::Ok)
    }
}
