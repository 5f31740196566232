//! The five subcommands, each assembling one deterministic report.

use std::path::{Path, PathBuf};

use dtqw_core::drg::{array_bounds, family_sweep, graph_bounds, BoundCheck};
use dtqw_core::graph::intersection_array_of;
use dtqw_core::spectral::{closed_form_average, sym_eig, walk_eigenphases, DEFAULT_TOL};
use dtqw_core::walk::WalkOperators;
use dtqw_core::{Error, IntersectionArray};

use crate::input::{resolve_graph, resolve_graph_only, resolve_sweep_family};
use crate::render::{g12, line_chart, opt_g12, write_out, Table};
use crate::{AverageArgs, BoundsArgs, CheckDrArgs, Failure, SpectrumArgs, SweepArgs};

/// Tolerance for matching an augmented eigenvalue against one of the
/// deleted graph; matching within it marks the row in the spectrum CSV.
const MATCH_TOL: f64 = 1e-8;

/// A deleted-graph eigenvalue counts as main when its projection applied
/// to the all-ones vector clears this norm.
const MAIN_TOL: f64 = 1e-6;

pub fn average(args: &AverageArgs) -> Result<(), Failure> {
    if args.steps == 0 {
        return Err(Failure::Usage("--T must be at least 1".into()));
    }
    if args.tol <= 0.0 {
        return Err(Failure::Usage("--tol must be positive".into()));
    }
    let gi = resolve_graph(&args.input)?;
    let report = closed_form_average(&gi.graph, gi.vertex, DEFAULT_TOL)?;
    let ops = WalkOperators::new(&gi.graph, gi.vertex)?;
    let empirical = ops.empirical_average_search_probability(args.steps)?;
    let total = report.total();
    let deviation = (total - empirical).abs();

    let mut t = Table::new("average-v1");
    t.comment(&format!("graph: {}", report.graph));
    t.comment(&format!(
        "n: {} k: {} marked: {} witness_neighbour: {} T: {}",
        report.n, report.k, report.marked, report.witness_neighbour, args.steps
    ));
    t.row(&[
        "kind",
        "lambda",
        "multiplicity",
        "weight",
        "s1_term",
        "s1",
        "s2",
        "total",
        "empirical",
        "deviation",
    ]);
    for row in &report.rows {
        t.row(&[
            "eigenvalue".to_string(),
            g12(row.lambda),
            row.multiplicity.to_string(),
            g12(row.weight),
            g12(row.s1_term),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
        ]);
    }
    t.row(&[
        "summary".to_string(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        g12(report.s1),
        g12(report.s2),
        g12(total),
        g12(empirical),
        g12(deviation),
    ]);
    write_out(args.out.as_deref(), &t.finish())?;

    if args.check && deviation > args.tol {
        return Err(Failure::Breach(format!(
            "closed form {} vs simulated {} differ by {}, over --tol {}",
            g12(total),
            g12(empirical),
            g12(deviation),
            g12(args.tol)
        )));
    }
    Ok(())
}

pub fn spectrum(args: &SpectrumArgs) -> Result<(), Failure> {
    let gi = resolve_graph(&args.input)?;
    let k = gi.graph.regular_degree().map_err(Failure::Core)? as f64;
    let phases = walk_eigenphases(&gi.graph, gi.vertex, DEFAULT_TOL)?;

    let (deleted, _) = gi.graph.vertex_deleted(gi.vertex);
    let decomp = sym_eig(&deleted.adjacency_matrix(), DEFAULT_TOL)?;
    let deleted_values: Vec<(f64, bool)> = decomp
        .pairs()
        .iter()
        .map(|p| {
            let dim = decomp.dim();
            let mut norm2 = 0.0;
            for r in 0..dim {
                let row_sum: f64 = (0..dim).map(|c| p.projection[[r, c]]).sum();
                norm2 += row_sum * row_sum;
            }
            (p.value, norm2.sqrt() > MAIN_TOL)
        })
        .collect();

    struct Row {
        kind: &'static str,
        lambda: f64,
        multiplicity: usize,
        theta: Option<f64>,
    }
    let mut rows: Vec<Row> = phases
        .interior
        .iter()
        .map(|p| Row {
            kind: "interior",
            lambda: p.lambda,
            multiplicity: p.multiplicity,
            theta: Some(p.theta),
        })
        .chain(phases.boundary.iter().map(|b| Row {
            kind: "boundary",
            lambda: b.lambda,
            multiplicity: b.multiplicity,
            theta: None,
        }))
        .collect();
    rows.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));

    let mut t = Table::new("spectrum-v1");
    t.comment(&format!("graph: {}", gi.graph.name()));
    t.comment(&format!(
        "n: {} k: {} marked: {} augmented_dim: {}",
        gi.graph.n(),
        k as usize,
        gi.vertex,
        gi.graph.n() + k as usize - 2
    ));
    t.row(&[
        "kind",
        "lambda",
        "multiplicity",
        "theta",
        "k_cos_theta",
        "matched_deleted_lambda",
        "main",
    ]);
    for row in &rows {
        let matched = deleted_values
            .iter()
            .find(|(value, _)| (value - row.lambda).abs() <= MATCH_TOL);
        t.row(&[
            row.kind.to_string(),
            g12(row.lambda),
            row.multiplicity.to_string(),
            row.theta.map(g12).unwrap_or_default(),
            row.theta.map(|th| g12(k * th.cos())).unwrap_or_default(),
            matched.map(|(value, _)| g12(*value)).unwrap_or_default(),
            matched
                .map(|(_, main)| main.to_string())
                .unwrap_or_default(),
        ]);
    }
    write_out(args.out.as_deref(), &t.finish())?;
    Ok(())
}

pub fn sweep(args: &SweepArgs) -> Result<(), Failure> {
    let family = resolve_sweep_family(&args.family, args.param)?;
    if args.params.is_empty() {
        return Err(Failure::Usage(
            "--params must list at least one sweep value".into(),
        ));
    }
    let table = family_sweep(family, &args.params)?;

    let mut t = Table::new("sweep-v1");
    t.comment(&format!("family: {}", family.label()));
    let trend = |flag: Option<bool>| flag.map_or("n/a".to_string(), |b| b.to_string());
    t.comment(&format!(
        "decreasing_overall: {}",
        trend(table.decreasing_overall())
    ));
    t.comment(&format!(
        "strictly_decreasing: {}",
        trend(table.strictly_decreasing())
    ));
    t.row(&[
        "param",
        "n",
        "k",
        "total",
        "gap",
        "criterion_general",
        "criterion_special",
        "status",
    ]);
    for row in &table.rows {
        match &row.result {
            Some(p) => t.row(&[
                row.param.to_string(),
                p.n.to_string(),
                p.k.to_string(),
                g12(p.total),
                g12(p.gap),
                g12(p.criterion_general),
                g12(p.criterion_special),
                "ok".to_string(),
            ]),
            None => t.row(&[
                row.param.to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                "skipped".to_string(),
            ]),
        }
    }
    write_out(args.out.as_deref(), &t.finish())?;

    if args.svg {
        let out = args.out.as_ref().expect("clap enforces --svg requires --out");
        let points: Vec<(f64, f64)> = table
            .rows
            .iter()
            .filter_map(|r| r.result.as_ref().map(|p| (p.k as f64, p.gap)))
            .collect();
        let svg = line_chart(
            &format!("{} sweep", family.label()),
            "k",
            "|total - 1/4|",
            &points,
        );
        std::fs::write(sibling_svg(out), svg)?;
    }
    Ok(())
}

/// `x.csv` gets its chart at `x.svg`; an output already named `*.svg`
/// gets `.svg` appended so the CSV is never overwritten.
fn sibling_svg(out: &Path) -> PathBuf {
    let candidate = out.with_extension("svg");
    if candidate == out {
        let mut name = out.as_os_str().to_owned();
        name.push(".svg");
        PathBuf::from(name)
    } else {
        candidate
    }
}

pub fn bounds(args: &BoundsArgs) -> Result<(), Failure> {
    if let Some(text) = &args.input.array {
        if args.input.family.is_some() || args.input.edges.is_some() {
            return Err(Failure::Usage("choose exactly one input source".into()));
        }
        let arr: IntersectionArray = text.parse()?;
        let rows = array_bounds(&arr)?;
        let mut t = Table::new("bounds-v1");
        t.comment(&format!("array: {arr}"));
        t.comment(&format!(
            "n: {} k: {} diameter: {}",
            arr.vertex_count(),
            arr.degree(),
            arr.diameter()
        ));
        push_bound_rows(&mut t, &rows);
        write_out(args.out.as_deref(), &t.finish())?;
    } else {
        let gi = resolve_graph(&args.input)?;
        let (arr, report, rows) = graph_bounds(&gi.graph, gi.vertex, DEFAULT_TOL)?;
        let mut t = Table::new("bounds-v1");
        t.comment(&format!("graph: {}", report.graph));
        t.comment(&format!("array: {arr}"));
        t.comment(&format!(
            "n: {} k: {} marked: {}",
            report.n, report.k, report.marked
        ));
        t.comment(&format!(
            "s1: {} s2: {} total: {}",
            g12(report.s1),
            g12(report.s2),
            g12(report.total())
        ));
        push_bound_rows(&mut t, &rows);
        write_out(args.out.as_deref(), &t.finish())?;
    }
    Ok(())
}

fn push_bound_rows(t: &mut Table, rows: &[BoundCheck]) {
    t.row(&["name", "bound", "actual", "slack"]);
    for r in rows {
        t.row(&[
            r.name.to_string(),
            g12(r.bound),
            opt_g12(r.actual),
            opt_g12(r.slack),
        ]);
    }
}

pub fn check_dr(args: &CheckDrArgs) -> Result<(), Failure> {
    let graph = resolve_graph_only(&args.input)?;
    match intersection_array_of(&graph) {
        Ok(arr) => {
            write_out(args.out.as_deref(), &format!("{arr}\n"))?;
            Ok(())
        }
        Err(e) if matches!(e, Error::NotRegular { .. } | Error::NotDistanceRegular { .. }) => {
            Err(Failure::Refusal(format!("not distance regular: {e}")))
        }
        Err(e) => Err(Failure::Core(e)),
    }
}
