//! Push/pull direction selection for traversal primitives.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::OperatorError;
use crate::frontier::Frontier;
use crate::graph::CsrGraph;
use crate::operators::{advance_pull, AdvanceConfig, Functor};

pub use crate::operators::Direction;

pub const DEFAULT_DO_A: f64 = 0.001;
pub const DEFAULT_DO_B: f64 = 0.2;

/// Requested traversal direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectionPolicy {
    #[default]
    Push,
    /// Push for the first iteration, pull for every later one.
    Pull,
    /// Switch by the `do_a` / `do_b` rule each iteration.
    Auto,
}

impl DirectionPolicy {
    pub fn name(self) -> &'static str {
        match self {
            DirectionPolicy::Push => "push",
            DirectionPolicy::Pull => "pull",
            DirectionPolicy::Auto => "auto",
        }
    }
}

impl fmt::Display for DirectionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DirectionPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "push" => Ok(DirectionPolicy::Push),
            "pull" => Ok(DirectionPolicy::Pull),
            "auto" => Ok(DirectionPolicy::Auto),
            other => Err(format!("unknown direction `{other}` (expected push, pull or auto)")),
        }
    }
}

/// Formula for the unvisited-side edge estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuEstimate {
    /// `n_u * n / (n - n_u)`.
    #[default]
    Verbatim,
    /// `n_u * m / n`.
    EdgeScaled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionState {
    pub mode: Direction,
    /// Unvisited vertices.
    pub n_u: u64,
    /// Current frontier size.
    pub n_f: u64,
    pub m: u64,
    pub n: u64,
    pub do_a: f64,
    pub do_b: f64,
    pub estimate: MuEstimate,
}

impl DirectionState {
    pub fn new(n: usize, m: usize, do_a: f64, do_b: f64) -> Self {
        Self {
            mode: Direction::Push,
            n_u: n as u64,
            n_f: 0,
            m: m as u64,
            n: n as u64,
            do_a,
            do_b,
            estimate: MuEstimate::Verbatim,
        }
    }

    /// Records a new frontier of `n_f` vertices, all of which leave the
    /// unvisited set.
    pub fn observe(&mut self, n_f: usize) {
        self.n_f = n_f as u64;
        self.n_u = self.n_u.saturating_sub(n_f as u64);
    }

    /// Re-evaluates and stores the mode; returns it.
    pub fn step(&mut self) -> Direction {
        self.mode = decide_direction(self);
        self.mode
    }
}

/// `(m_f, m_u)` for the current state. `m_u` is `+inf` when nothing has been
/// visited yet under the verbatim formula.
pub fn estimate_mf_mu(state: &DirectionState) -> (f64, f64) {
    let n = state.n as f64;
    let m_f = if state.n == 0 {
        0.0
    } else {
        state.n_f as f64 * state.m as f64 / n
    };
    let m_u = match state.estimate {
        MuEstimate::Verbatim => {
            if state.n_u >= state.n {
                f64::INFINITY
            } else {
                state.n_u as f64 * n / (state.n - state.n_u) as f64
            }
        }
        MuEstimate::EdgeScaled => {
            if state.n == 0 {
                0.0
            } else {
                state.n_u as f64 * state.m as f64 / n
            }
        }
    };
    (m_f, m_u)
}

/// Push goes to pull when `m_f > m_u * do_a`; pull goes back to push when
/// `m_f < m_u * do_b`.
pub fn decide_direction(state: &DirectionState) -> Direction {
    let (m_f, m_u) = estimate_mf_mu(state);
    decide_from(state.mode, m_f, m_u, state.do_a, state.do_b)
}

pub fn decide_from(mode: Direction, m_f: f64, m_u: f64, do_a: f64, do_b: f64) -> Direction {
    match mode {
        Direction::Push if m_f > m_u * do_a => Direction::Pull,
        Direction::Pull if m_f < m_u * do_b => Direction::Push,
        keep => keep,
    }
}

/// One pull iteration: splits `unvisited` into the vertices with an in-neighbor
/// accepted by `cond_edge` and the rest.
pub fn pull_step<F: Functor + ?Sized>(
    g: &CsrGraph,
    unvisited: &Frontier,
    cfg: &AdvanceConfig,
    f: &F,
) -> Result<(Frontier, Frontier), OperatorError> {
    advance_pull(g, unvisited, cfg, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BuildOptions;
    use crate::operators::EdgeCond;

    fn state(n: u64, m: u64, n_f: u64, n_u: u64) -> DirectionState {
        DirectionState {
            mode: Direction::Push,
            n_u,
            n_f,
            m,
            n,
            do_a: 1.0,
            do_b: 1.0,
            estimate: MuEstimate::Verbatim,
        }
    }

    #[test]
    fn estimates() {
        assert_eq!(estimate_mf_mu(&state(10, 40, 4, 5)), (16.0, 10.0));
        assert_eq!(estimate_mf_mu(&state(10, 40, 4, 0)).1, 0.0);
        assert_eq!(estimate_mf_mu(&state(10, 40, 4, 10)).1, f64::INFINITY);
        let mut s = state(10, 40, 4, 5);
        s.estimate = MuEstimate::EdgeScaled;
        assert_eq!(estimate_mf_mu(&s).1, 20.0);
    }

    #[test]
    fn switching() {
        assert_eq!(decide_from(Direction::Push, 16.0, 10.0, 1.0, 0.5), Direction::Pull);
        assert_eq!(decide_from(Direction::Pull, 1.0, 10.0, 1.0, 0.5), Direction::Push);
        assert_eq!(decide_from(Direction::Push, 16.0, 10.0, 1e300, 0.5), Direction::Push);
        assert_eq!(decide_from(Direction::Pull, 6.0, 10.0, 1.0, 0.5), Direction::Pull);
    }

    #[test]
    fn first_iteration_never_pulls() {
        let mut s = DirectionState::new(10, 40, 1e-9, 0.2);
        s.n_f = 1;
        assert_eq!(s.step(), Direction::Push);
        s.observe(1);
        assert_eq!(s.n_u, 9);
        assert_eq!(s.step(), Direction::Pull);
    }

    #[test]
    fn pull_step_on_path() {
        let g = CsrGraph::from_edges(3, &[(0, 1), (1, 2)], BuildOptions::undirected()).unwrap();
        let visited = [true, false, false];
        let (a, u) = pull_step(
            &g,
            &Frontier::vertices(vec![1, 2]),
            &AdvanceConfig::default(),
            &EdgeCond(|s, _, _| visited[s as usize]),
        )
        .unwrap();
        assert_eq!((a.items(), u.items()), (&[1][..], &[2][..]));
    }

    #[test]
    fn policy_parse() {
        for p in [DirectionPolicy::Push, DirectionPolicy::Pull, DirectionPolicy::Auto] {
            assert_eq!(p.name().parse::<DirectionPolicy>().unwrap(), p);
        }
        assert!("sideways".parse::<DirectionPolicy>().is_err());
    }
}
