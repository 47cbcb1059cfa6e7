//! Filter: compaction of a frontier by an item condition.
//!
//! Exact mode removes every duplicate using an atomic test-and-set bitmap.
//! Inexact mode only applies cheap culling heuristics (a racy global bitmask,
//! a per-team history table and a per-lane history table), so duplicates may
//! survive, but every distinct item that passes the condition is kept at
//! least once.

use serde::{Deserialize, Serialize};

use super::Functor;
use crate::frontier::{Frontier, StatusBitmap};
use crate::graph::INVALID_ID;
use crate::par;

/// Heuristics used by inexact filtering. A table size of zero disables it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CullConfig {
    pub global_bitmask: bool,
    /// Direct-mapped history entries per team.
    pub team_history: usize,
    /// Direct-mapped history entries per lane.
    pub local_history: usize,
    /// Items handled by one team.
    pub team_size: usize,
    /// Items handled by one lane; the lane table is cleared between lanes.
    pub lane_size: usize,
}

impl Default for CullConfig {
    fn default() -> Self {
        Self {
            global_bitmask: true,
            team_history: 256,
            local_history: 32,
            team_size: 256,
            lane_size: 32,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum FilterMode {
    #[default]
    Exact,
    Inexact(CullConfig),
}

#[inline]
fn slot(id: u32, size: usize) -> usize {
    (id.wrapping_mul(0x9E37_79B1) >> 7) as usize % size
}

/// Per-worker culling state for inexact filtering.
pub(crate) struct Culler<'a> {
    cfg: CullConfig,
    bitmask: Option<&'a StatusBitmap>,
    team: Vec<u32>,
    lane: Vec<u32>,
    seen_in_lane: usize,
    seen_in_team: usize,
}

impl<'a> Culler<'a> {
    pub(crate) fn new(cfg: CullConfig, bitmask: Option<&'a StatusBitmap>) -> Self {
        Self {
            cfg,
            bitmask: if cfg.global_bitmask { bitmask } else { None },
            team: vec![INVALID_ID; cfg.team_history],
            lane: vec![INVALID_ID; cfg.local_history],
            seen_in_lane: 0,
            seen_in_team: 0,
        }
    }

    /// Clears history tables; called at team boundaries.
    pub(crate) fn new_team(&mut self) {
        self.team.fill(INVALID_ID);
        self.lane.fill(INVALID_ID);
        self.seen_in_lane = 0;
        self.seen_in_team = 0;
    }

    /// True if `id` should be dropped as a probable duplicate.
    ///
    /// A dropped id was always recorded earlier by an occurrence that itself
    /// was kept or was dropped for the same reason, which is what guarantees
    /// at least one survivor per distinct id.
    #[inline]
    pub(crate) fn cull(&mut self, id: u32) -> bool {
        if self.cfg.team_size > 0 && self.seen_in_team == self.cfg.team_size {
            self.new_team();
        }
        self.seen_in_team += 1;
        if self.cfg.lane_size > 0 && self.seen_in_lane == self.cfg.lane_size {
            self.lane.fill(INVALID_ID);
            self.seen_in_lane = 0;
        }
        self.seen_in_lane += 1;

        if !self.lane.is_empty() {
            let s = slot(id, self.lane.len());
            if self.lane[s] == id {
                return true;
            }
            self.lane[s] = id;
        }
        if !self.team.is_empty() {
            let s = slot(id, self.team.len());
            if self.team[s] == id {
                return true;
            }
            self.team[s] = id;
        }
        if let Some(mask) = self.bitmask {
            // Check-then-set without a read-modify-write, as on the GPU:
            // concurrent first sightings may both pass.
            if mask.get(id) {
                return true;
            }
            mask.set(id);
        }
        false
    }
}

fn id_bound(items: &[u32]) -> usize {
    items.iter().copied().max().map_or(0, |m| m as usize + 1)
}

/// Keeps the items of `input` for which `cond_item` holds, then runs
/// `apply_item` on each survivor. Output order is unspecified.
pub fn filter<F: Functor + ?Sized>(input: &Frontier, mode: &FilterMode, f: &F) -> Frontier {
    let items = input.items();
    let out = match mode {
        FilterMode::Exact => {
            let seen = StatusBitmap::new(id_bound(items));
            par::compact(items, |_, &x| f.cond_item(x) && seen.set(x))
        }
        FilterMode::Inexact(cfg) => {
            let mask = StatusBitmap::new(if cfg.global_bitmask { id_bound(items) } else { 0 });
            let team = cfg.team_size.max(1);
            let blocks: Vec<&[u32]> = items.chunks(team).collect();
            let parts = par::map_slice(&blocks, |block| {
                let mut culler = Culler::new(*cfg, Some(&mask));
                block
                    .iter()
                    .copied()
                    .filter(|&x| f.cond_item(x) && !culler.cull(x))
                    .collect::<Vec<u32>>()
            });
            par::concat(parts)
        }
    };
    par::for_each_index(out.len(), |i| f.apply_item(out[i]));
    Frontier::from_vec(input.kind(), out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::ItemCond;
    use std::collections::HashSet;

    #[test]
    fn exact_dedups() {
        let f = filter(
            &Frontier::vertices(vec![1, 2, 2, 3]),
            &FilterMode::Exact,
            &ItemCond(|_| true),
        );
        assert_eq!(f.sorted(), vec![1, 2, 3]);
    }

    #[test]
    fn exact_applies_condition() {
        let f = filter(
            &Frontier::vertices(vec![1, 2, 3]),
            &FilterMode::Exact,
            &ItemCond(|x| x % 2 == 0),
        );
        assert_eq!(f.items(), &[2]);
    }

    #[test]
    fn inexact_keeps_every_distinct_item() {
        let input: Vec<u32> = (0..5000).map(|i| (i * 37) % 700).collect();
        for cfg in [
            CullConfig::default(),
            CullConfig {
                global_bitmask: false,
                ..CullConfig::default()
            },
            CullConfig {
                team_history: 0,
                local_history: 0,
                global_bitmask: false,
                ..CullConfig::default()
            },
        ] {
            let out = filter(
                &Frontier::vertices(input.clone()),
                &FilterMode::Inexact(cfg),
                &ItemCond(|x| x % 3 != 0),
            );
            let distinct: HashSet<u32> = input.iter().copied().filter(|x| x % 3 != 0).collect();
            let got: HashSet<u32> = out.items().iter().copied().collect();
            assert_eq!(got, distinct);
            assert!(out.len() <= input.iter().filter(|x| *x % 3 != 0).count());
        }
    }

    #[test]
    fn lane_table_culls_adjacent_repeats() {
        let cfg = CullConfig {
            global_bitmask: false,
            team_history: 0,
            ..CullConfig::default()
        };
        let out = filter(
            &Frontier::vertices(vec![4, 4, 4, 5, 5]),
            &FilterMode::Inexact(cfg),
            &ItemCond(|_| true),
        );
        assert_eq!(out.items(), &[4, 5]);
    }

    #[test]
    fn empty_input() {
        let out = filter(&Frontier::vertices(vec![]), &FilterMode::Exact, &ItemCond(|_| true));
        assert!(out.is_empty());
    }
}
