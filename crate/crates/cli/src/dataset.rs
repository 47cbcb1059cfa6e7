//! `--graph` parsing and graph construction.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use graphfx_core::graph::{
    assign_random_weights, generate_rgg, generate_rmat, load_graph, rgg_default_threshold, BuildOptions,
    RmatParams,
};
use graphfx_core::CsrGraph;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Weights drawn for unweighted inputs when a primitive needs them.
pub const WEIGHT_RANGE: (u32, u32) = (1, 64);

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSpec {
    File(PathBuf),
    Rmat { scale: u32, edge_factor: usize },
    Rgg { scale: u32 },
}

impl FromStr for GraphSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix("rmat:") {
            let (scale, ef) = rest
                .split_once(',')
                .ok_or_else(|| format!("expected rmat:SCALE,EDGE_FACTOR, got `{s}`"))?;
            let scale = scale.trim().parse().map_err(|_| format!("bad R-MAT scale `{scale}`"))?;
            let edge_factor = ef.trim().parse().map_err(|_| format!("bad R-MAT edge factor `{ef}`"))?;
            return Ok(GraphSpec::Rmat { scale, edge_factor });
        }
        if let Some(rest) = s.strip_prefix("rgg:") {
            let scale = rest.trim().parse().map_err(|_| format!("bad RGG scale `{rest}`"))?;
            return Ok(GraphSpec::Rgg { scale });
        }
        if s.is_empty() {
            return Err("empty graph spec".into());
        }
        Ok(GraphSpec::File(PathBuf::from(s)))
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::File(p) => write!(f, "{}", p.display()),
            GraphSpec::Rmat { scale, edge_factor } => write!(f, "rmat:{scale},{edge_factor}"),
            GraphSpec::Rgg { scale } => write!(f, "rgg:{scale}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub undirected: bool,
    pub weighted: bool,
}

impl GraphInfo {
    pub fn of(name: &str, g: &CsrGraph) -> Self {
        Self {
            name: name.to_string(),
            vertices: g.num_vertices(),
            edges: g.num_edges(),
            undirected: g.is_undirected(),
            weighted: g.is_weighted(),
        }
    }
}

/// Builds the graph; generated graphs are a pure function of `seed`.
pub fn build(spec: &GraphSpec, directed: bool, seed: u64) -> Result<CsrGraph, CliError> {
    let opts = if directed {
        BuildOptions::directed()
    } else {
        BuildOptions::undirected()
    };
    let g = match spec {
        GraphSpec::File(path) => load_graph(path, !directed)?,
        GraphSpec::Rmat { scale, edge_factor } => {
            generate_rmat(*scale, *edge_factor, RmatParams::graph500(), seed)?.to_csr(opts)?
        }
        GraphSpec::Rgg { scale } => generate_rgg(*scale, rgg_default_threshold(*scale), seed)?.to_csr(opts)?,
    };
    Ok(g)
}

/// `g` itself when weighted, otherwise a copy with seeded random weights.
pub fn ensure_weighted(g: CsrGraph, seed: u64) -> Result<CsrGraph, CliError> {
    if g.is_weighted() {
        return Ok(g);
    }
    Ok(assign_random_weights(&g, WEIGHT_RANGE.0, WEIGHT_RANGE.1, seed)?)
}
