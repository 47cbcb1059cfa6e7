//! Run statistics and throughput figures.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::operators::Direction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitive {
    Bfs,
    Sssp,
    Bc,
    Cc,
    Pagerank,
    Tc,
}

impl Primitive {
    pub const ALL: [Primitive; 6] = [
        Primitive::Bfs,
        Primitive::Sssp,
        Primitive::Bc,
        Primitive::Cc,
        Primitive::Pagerank,
        Primitive::Tc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Primitive::Bfs => "bfs",
            Primitive::Sssp => "sssp",
            Primitive::Bc => "bc",
            Primitive::Cc => "cc",
            Primitive::Pagerank => "pagerank",
            Primitive::Tc => "tc",
        }
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Primitive {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Primitive::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown primitive `{s}`"))
    }
}

/// Millions of traversed edges per second. BC counts both passes, so its
/// edge count is doubled. SSSP has no meaningful figure and returns `None`,
/// as does a zero or negative runtime.
pub fn compute_mteps(primitive: Primitive, edges: u64, runtime_ms: f64) -> Option<f64> {
    if runtime_ms.is_nan() || runtime_ms <= 0.0 {
        return None;
    }
    let edges = match primitive {
        Primitive::Sssp => return None,
        Primitive::Bc => 2.0 * edges as f64,
        _ => edges as f64,
    };
    Some(edges / (runtime_ms * 1000.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationStats {
    pub iteration: usize,
    pub frontier_in: usize,
    pub frontier_out: usize,
    pub mode: Direction,
    pub runtime_ms: f64,
    /// Unvisited-vertex estimate used for the direction decision, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unvisited: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub primitive: Primitive,
    pub total_runtime_ms: f64,
    /// Reverse-adjacency build, orientation and similar one-off setup.
    pub preprocessing_ms: f64,
    pub per_iteration: Vec<IterationStats>,
    pub edges_traversed: u64,
    pub mteps: Option<f64>,
    pub iterations: usize,
    pub direction_switches: usize,
}

impl RunStats {
    pub fn new(primitive: Primitive) -> Self {
        Self {
            primitive,
            total_runtime_ms: 0.0,
            preprocessing_ms: 0.0,
            per_iteration: Vec::new(),
            edges_traversed: 0,
            mteps: None,
            iterations: 0,
            direction_switches: 0,
        }
    }

    pub fn record(&mut self, it: IterationStats) {
        if let Some(prev) = self.per_iteration.last() {
            if prev.mode != it.mode {
                self.direction_switches += 1;
            }
        }
        self.per_iteration.push(it);
        self.iterations = self.per_iteration.len();
    }

    /// Sets the total runtime and derives MTEPS from `edges_traversed`.
    pub fn finish(&mut self, runtime_ms: f64) {
        self.total_runtime_ms = runtime_ms;
        self.mteps = compute_mteps(self.primitive, self.edges_traversed, runtime_ms);
    }
}

pub(crate) fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mteps_examples() {
        assert_eq!(compute_mteps(Primitive::Bfs, 1_000_000, 2.0), Some(500.0));
        assert_eq!(compute_mteps(Primitive::Bc, 1_000_000, 2.0), Some(1000.0));
        assert_eq!(compute_mteps(Primitive::Sssp, 1_000_000, 2.0), None);
        assert_eq!(compute_mteps(Primitive::Bfs, 10, 0.0), None);
    }

    #[test]
    fn switches_counted() {
        let mut s = RunStats::new(Primitive::Bfs);
        for (i, mode) in [Direction::Push, Direction::Pull, Direction::Pull, Direction::Push].into_iter().enumerate() {
            s.record(IterationStats {
                iteration: i,
                frontier_in: 1,
                frontier_out: 1,
                mode,
                runtime_ms: 0.1,
                unvisited: None,
            });
        }
        assert_eq!(s.direction_switches, 2);
        assert_eq!(s.iterations, 4);
    }

    #[test]
    fn json_round_trip() {
        let mut s = RunStats::new(Primitive::Sssp);
        s.finish(3.0);
        let back: RunStats = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
