//! Graph primitives composed from the operators.

mod bc;
mod bfs;
mod cc;
mod pagerank;
mod sssp;
mod tc;

pub use bc::{bc, bc_sources, BcOptions, BcResult};
pub use bfs::{bfs, BfsOptions, BfsResult};
pub use cc::{cc, CcOptions, CcResult};
pub use pagerank::{pagerank, PagerankOptions, PagerankResult};
pub use sssp::{default_delta, sssp, SsspOptions, SsspResult};
pub use tc::{orient_edges, tc, TcOptions, TcResult};

use std::sync::atomic::{AtomicU32, Ordering};

use crate::error::PrimitiveError;
use crate::graph::{CsrGraph, VertexId};
use crate::par;

fn check_source(g: &CsrGraph, source: VertexId) -> Result<(), PrimitiveError> {
    if source as usize >= g.num_vertices() {
        return Err(PrimitiveError::InvalidSource {
            source_vertex: source as u64,
            num_vertices: g.num_vertices(),
        });
    }
    Ok(())
}

fn atomic_vec(n: usize, init: u32) -> Vec<AtomicU32> {
    par::map_index(n, |_| AtomicU32::new(init))
}

fn snapshot(cells: &[AtomicU32]) -> Vec<u32> {
    par::map_slice(cells, |c| c.load(Ordering::Relaxed))
}

/// Out-degree sum over vertices whose label is set.
fn reached_edges(g: &CsrGraph, labels: &[u32]) -> u64 {
    par::sum_index(labels.len(), |v| {
        if labels[v] == crate::frontier::UNVISITED {
            0
        } else {
            g.degree(v as VertexId) as u64
        }
    })
}
