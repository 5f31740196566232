//! Turns the command-line input flags into graphs and arrays.

use std::fs;

use dtqw_core::drg::SweepFamily;
use dtqw_core::graph::build_family;
use dtqw_core::Graph;

use crate::{Failure, InputArgs};

/// A resolved graph together with the marked vertex.
pub struct GraphInput {
    pub graph: Graph,
    pub vertex: usize,
}

fn family_params(input: &InputArgs) -> Result<Vec<usize>, Failure> {
    match (input.param, input.params.is_empty()) {
        (Some(_), false) => Err(Failure::Usage(
            "give either --param or --params, not both".into(),
        )),
        (Some(p), true) => Ok(vec![p]),
        (None, _) => Ok(input.params.clone()),
    }
}

/// Builds the graph named by the flags, without touching --vertex.
pub fn resolve_graph_only(input: &InputArgs) -> Result<Graph, Failure> {
    if input.array.is_some() {
        return Err(Failure::Usage(
            "--array carries no graph; this command needs --family or --edges".into(),
        ));
    }
    match (&input.family, &input.edges) {
        (Some(name), None) => Ok(build_family(name, &family_params(input)?)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            Ok(Graph::from_edge_list(&text)?)
        }
        (None, None) => Err(Failure::Usage(
            "choose an input: --family NAME [--param P | --params P,..] or --edges FILE".into(),
        )),
        (Some(_), Some(_)) => Err(Failure::Usage("choose exactly one input source".into())),
    }
}

/// Resolves a graph plus marked vertex. Families default the vertex to 0
/// (they are vertex transitive); an edge list has no canonical vertex, so
/// --vertex is required there.
pub fn resolve_graph(input: &InputArgs) -> Result<GraphInput, Failure> {
    let graph = resolve_graph_only(input)?;
    let vertex = match (input.vertex, input.edges.is_some()) {
        (Some(v), _) => v,
        (None, false) => 0,
        (None, true) => {
            return Err(Failure::Usage(
                "--edges input needs an explicit --vertex; user graphs have no canonical marked vertex".into(),
            ))
        }
    };
    if vertex >= graph.n() {
        return Err(Failure::Usage(format!(
            "--vertex {vertex} is out of range for a graph on {} vertices",
            graph.n()
        )));
    }
    Ok(GraphInput { graph, vertex })
}

/// Maps a sweep family name plus optional fixed parameter to the sweep
/// description.
pub fn resolve_sweep_family(name: &str, fixed: Option<usize>) -> Result<SweepFamily, Failure> {
    let reject_fixed = |family: SweepFamily| match fixed {
        Some(_) => Err(Failure::Usage(format!(
            "--param is not used when sweeping {name}; give the sweep values via --params"
        ))),
        None => Ok(family),
    };
    match name {
        "complete" => reject_fixed(SweepFamily::Complete),
        "cycle" => reject_fixed(SweepFamily::Cycle),
        "paley" => reject_fixed(SweepFamily::Paley),
        "hypercube" => reject_fixed(SweepFamily::Hypercube),
        "hamming" => fixed.map(|d| SweepFamily::Hamming { d }).ok_or_else(|| {
            Failure::Usage("sweeping hamming needs --param D (the word length)".into())
        }),
        "johnson" => fixed.map(|m| SweepFamily::Johnson { m }).ok_or_else(|| {
            Failure::Usage("sweeping johnson needs --param M (the subset size)".into())
        }),
        other => Err(Failure::Usage(format!(
            "unknown sweep family {other:?}; choose complete, cycle, paley, hypercube, hamming or johnson"
        ))),
    }
}
