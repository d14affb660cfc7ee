//! `abszeta`, `eval` and `series`.

use std::fmt::Write as _;

use anyhow::{anyhow, bail};
use num_complex::Complex64;
use qwzeta_core::absolute::kurokawa::{
    functional_equation_check, kurokawa_decompose, to_cyclotomic_form,
};
use qwzeta_core::absolute::mellin::mellin_z;
use qwzeta_core::absolute::multiple::{
    log_multiple_gamma_estimate, log_multiple_sine_estimate, multiple_hurwitz_zeta_estimate,
};
use qwzeta_core::absolute::special::{hurwitz_error_scale, hurwitz_zeta};
use qwzeta_core::complete::{formal_product_kn, p_coefficients, truncated_z_kn};
use qwzeta_core::zeta::grover_zeta;
use qwzeta_core::{
    rational, AbsoluteZetaExpression, CompleteGraphParams, Error, GraphFamily, NumericValue,
};
use serde_json::{json, Map, Value};

use crate::input::{emit, numeric_json, numeric_text, print_json, GraphArgs};
use crate::{EvalKind, Format, Status};

const SERIES_HINT: &str = "for complete graphs use `qwzeta series --family complete:N`";

fn z_text(expr: &AbsoluteZetaExpression) -> String {
    let mut out = String::new();
    for (i, t) in expr.collected().iter().enumerate() {
        let shift = if t.shift < rational::zero() {
            format!("s - {}", rational::format(&-&t.shift))
        } else {
            format!("s + {}", rational::format(&t.shift))
        };
        let mag = t.exponent.unsigned_abs();
        let sign = match (i, t.exponent < 0) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let coeff = if mag == 1 {
            String::new()
        } else {
            format!("{mag}·")
        };
        let _ = write!(out, "{sign}{coeff}ζ_{}(w, {shift}, {:?})", t.order, t.omega);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn abszeta(
    args: &GraphArgs,
    w: Option<Complex64>,
    s: Option<f64>,
    format: Format,
) -> anyhow::Result<Status> {
    let g = args.load()?;
    let z = grover_zeta(&g.graph);
    let cf = match to_cyclotomic_form(&z) {
        Ok(cf) => cf,
        Err(e @ Error::NotRepresentable { .. }) => {
            let residual = match &e {
                Error::NotRepresentable { residual } => residual.clone(),
                _ => unreachable!(),
            };
            if format == Format::Json {
                print_json(&json!({
                    "graph": g.summary(),
                    "error": "not_representable",
                    "residual": residual,
                    "hint": SERIES_HINT,
                }))?;
            }
            eprintln!("hint: {SERIES_HINT}");
            return Err(e.into());
        }
        Err(e) => return Err(e.into()),
    };
    let expr = kurokawa_decompose(&cf);
    let (point, parity) = expr.reflection();
    let mut value = serde_json::to_value(&expr)?;
    let extra = json!({
        "graph": g.summary(),
        "form": cf,
        "collected": expr.collected(),
        "z": z_text(&expr),
        "gamma_product": expr.gamma_product_text(),
        "reflection": { "point": point, "parity": parity },
    });
    merge(&mut value, extra);
    let mut text = format!(
        "graph: {}\nform: {cf}\nZ_f(w, s) = {}\nzeta_f(s) = {}\nfunctional equation: zeta_f({} - s)^({parity}) = eps(s) zeta_f(s)\n",
        g.heading(),
        z_text(&expr),
        expr.gamma_product_text(),
        point,
    );
    if let Some(s) = s {
        let log_zeta = expr.log_zeta(s)?;
        let residual = functional_equation_check(&expr, s)?;
        value["log_zeta"] = json!({ "re": log_zeta.re, "im": log_zeta.im });
        value["functional_equation_residual"] = json!(residual);
        let _ = writeln!(
            text,
            "log zeta_f({s}) = {} + {} i",
            log_zeta.re, log_zeta.im
        );
        let _ = writeln!(
            text,
            "functional equation residual at s = {s}: {residual:.3e}"
        );
        if let Some(w) = w {
            let v = expr.hurwitz_estimate(w, s)?;
            value["value"] = numeric_json(&v);
            let _ = writeln!(text, "Z_f({w}, {s}) = {}", numeric_text(&v));
        }
    }
    emit(format, value, || text)?;
    Ok(Status::Ok)
}

fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        t.extend(e);
    }
}

fn need<T>(v: Option<T>, flag: &str, kind: &str) -> anyhow::Result<T> {
    v.ok_or_else(|| anyhow!("--kind {kind} needs --{flag}"))
}

fn kind_name(kind: EvalKind) -> String {
    format!("{kind:?}").to_lowercase()
}

fn exp_estimate(log: NumericValue) -> NumericValue {
    let v = log.value.exp();
    NumericValue::new(v, v.norm() * log.abs_err)
}

/// Every route to `Z_f(w, s)` that applies, in order of preference.
fn absolute_routes(
    args: &GraphArgs,
    w: Complex64,
    s: Complex64,
) -> anyhow::Result<Vec<(&'static str, Result<NumericValue, Error>)>> {
    let g = args.load()?;
    let z = grover_zeta(&g.graph);
    let mut routes = Vec::new();
    let decomposition = if s.im != 0.0 {
        Err(Error::Domain("the decomposition takes real s".into()))
    } else {
        to_cyclotomic_form(&z).and_then(|cf| kurokawa_decompose(&cf).hurwitz_estimate(w, s.re))
    };
    routes.push(("decomposition", decomposition));
    routes.push(("mellin", mellin_z(&z, w, s)));
    if let Some(GraphFamily::Complete { n }) = g.family {
        let series = truncated_z_kn(n, w, s, DEFAULT_TRUNC)
            .map(|t| NumericValue::new(t.value.value, t.abs_err()));
        routes.push(("series", series));
    }
    Ok(routes)
}

const DEFAULT_TRUNC: usize = 400;

fn eval_absolute(
    args: &GraphArgs,
    w: Complex64,
    s: Complex64,
    format: Format,
) -> anyhow::Result<Status> {
    let routes = absolute_routes(args, w, s)?;
    let best = routes
        .iter()
        .find_map(|(name, r)| r.as_ref().ok().map(|v| (*name, *v)));
    let Some((route, v)) = best else {
        let err = routes
            .iter()
            .find_map(|(_, r)| match r {
                Err(e @ Error::Convergence(_)) => Some(e.clone()),
                _ => None,
            })
            .or_else(|| routes.iter().find_map(|(_, r)| r.clone().err()))
            .expect("at least one route");
        return Err(err.into());
    };
    let mut table = Map::new();
    let mut text = String::new();
    let mut spread: f64 = 0.0;
    for (name, r) in &routes {
        match r {
            Ok(x) => {
                spread = spread.max((x.value - v.value).norm());
                table.insert((*name).into(), numeric_json(x));
                let _ = writeln!(text, "{name}: {}", numeric_text(x));
            }
            Err(e) => {
                table.insert((*name).into(), json!({ "error": e.to_string() }));
                let _ = writeln!(text, "{name}: {e}");
            }
        }
    }
    let mut value = numeric_json(&v);
    merge(
        &mut value,
        json!({ "kind": "absolute", "route": route, "routes": table, "route_spread": spread }),
    );
    emit(format, value, || {
        format!(
            "Z_f({w}, {s}) = {}  [{route}]\n{text}route spread: {spread:.3e}\n",
            numeric_text(&v)
        )
    })?;
    Ok(Status::Ok)
}

pub fn eval(
    kind: EvalKind,
    args: &GraphArgs,
    w: Option<Complex64>,
    s: Option<Complex64>,
    x: Option<f64>,
    omega: Option<Vec<u64>>,
    format: Format,
) -> anyhow::Result<Status> {
    let unused: &[(&str, bool)] = match kind {
        EvalKind::Absolute => &[("x", x.is_some()), ("omega", omega.is_some())],
        EvalKind::Hurwitz => &[
            ("s", s.is_some()),
            ("omega", omega.is_some()),
            ("family/--input", args.is_given()),
        ],
        EvalKind::Multizeta => &[("s", s.is_some()), ("family/--input", args.is_given())],
        EvalKind::Gamma | EvalKind::Sine => &[
            ("w", w.is_some()),
            ("s", s.is_some()),
            ("family/--input", args.is_given()),
        ],
    };
    if let Some((flag, _)) = unused.iter().find(|(_, given)| *given) {
        bail!("--{flag} does not apply to --kind {}", kind_name(kind));
    }
    let (label, v) = match kind {
        EvalKind::Absolute => {
            let w = need(w, "w", "absolute")?;
            let s = need(s, "s", "absolute")?;
            return eval_absolute(args, w, s, format);
        }
        EvalKind::Hurwitz => {
            let w = need(w, "w", "hurwitz")?;
            let a = need(x, "x", "hurwitz")?;
            let value = hurwitz_zeta(w, a)?;
            let err = hurwitz_error_scale(w, a) + 16.0 * f64::EPSILON * value.norm();
            (format!("zeta({w}, {a})"), NumericValue::new(value, err))
        }
        EvalKind::Multizeta => {
            let w = need(w, "w", "multizeta")?;
            let x = need(x, "x", "multizeta")?;
            let omega = need(omega, "omega", "multizeta")?;
            let v = multiple_hurwitz_zeta_estimate(w, x, &omega)?;
            (format!("zeta_{}({w}, {x}, {omega:?})", omega.len()), v)
        }
        EvalKind::Gamma => {
            let x = need(x, "x", "gamma")?;
            let omega = need(omega, "omega", "gamma")?;
            let v = exp_estimate(log_multiple_gamma_estimate(x, &omega)?);
            (format!("Gamma_{}({x}, {omega:?})", omega.len()), v)
        }
        EvalKind::Sine => {
            let x = need(x, "x", "sine")?;
            let omega = need(omega, "omega", "sine")?;
            let v = exp_estimate(log_multiple_sine_estimate(x, &omega)?);
            (format!("S_{}({x}, {omega:?})", omega.len()), v)
        }
    };
    let mut value = numeric_json(&v);
    merge(
        &mut value,
        json!({ "kind": kind_name(kind), "expression": label }),
    );
    emit(format, value, || {
        format!("{label} = {}\n", numeric_text(&v))
    })?;
    Ok(Status::Ok)
}

pub fn series(
    args: &GraphArgs,
    lmax: usize,
    point: Option<(Complex64, Complex64)>,
    trunc: usize,
    formal: bool,
    format: Format,
) -> anyhow::Result<Status> {
    let n = match args.family {
        Some(GraphFamily::Complete { n }) if args.input.is_none() => n,
        _ => bail!("series needs --family complete:N"),
    };
    let mut value = json!({ "n": n });
    let mut text = String::new();
    if n >= 4 {
        let params = CompleteGraphParams::new(n)?;
        let p = p_coefficients(n, lmax)?;
        let _ = writeln!(
            text,
            "K_{n}: L = {}, M = {}, 2m = {}, (-1)^L = {}",
            params.l,
            params.index_count,
            params.offset(),
            params.sign()
        );
        let _ = writeln!(
            text,
            "|P_l| <= {:.12} (max over table {:.12})",
            params.p_bound(),
            p.max_abs()
        );
        for (l, c) in p.coeffs.iter().enumerate() {
            let _ = writeln!(
                text,
                "P_{l:<4} {:<24} {:+.12e}",
                rational::format(c),
                rational::to_f64(c)
            );
        }
        value["params"] = serde_json::to_value(&params)?;
        value["p_bound"] = json!(params.p_bound());
        value["p_max_abs"] = json!(p.max_abs());
        value["p"] = serde_json::to_value(&p)?;
    }
    if let Some((w, s)) = point {
        let t = truncated_z_kn(n, w, s, trunc)?;
        let bound = match t.tail_bound {
            Some(b) => format!("{b:.3e}"),
            None => "none".into(),
        };
        let _ = writeln!(
            text,
            "Z({w}, {s}) = {}\n  {} terms, tail estimate {:.3e}, rigorous tail bound {bound}",
            numeric_text(&t.value),
            t.terms,
            t.tail_estimate
        );
        value["truncated"] = serde_json::to_value(&t)?;
    }
    if formal {
        let fp = formal_product_kn(n)?;
        let _ = writeln!(text, "{fp}");
        value["formal_product"] = serde_json::to_value(&fp)?;
    }
    emit(format, value, || text)?;
    Ok(Status::Ok)
}
