//! Two-slice near/far priority queue for delta-stepping.

use crate::error::OperatorError;
use crate::frontier::Frontier;
use crate::par;

/// Splits `input` by `key(item) < threshold`.
pub fn split<K>(input: &Frontier, key: K, threshold: u64) -> (Frontier, Frontier)
where
    K: Fn(u32) -> u64 + Sync + Send,
{
    let items = input.items();
    let near_flags: Vec<bool> = par::map_slice(items, |&x| key(x) < threshold);
    let near = par::compact(items, |i, _| near_flags[i]);
    let far = par::compact(items, |i, _| !near_flags[i]);
    (Frontier::from_vec(input.kind(), near), Frontier::from_vec(input.kind(), far))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearFarPile {
    pub near: Frontier,
    pub far: Frontier,
    /// Keys below this are near.
    pub threshold: u64,
    pub delta: u64,
}

impl NearFarPile {
    pub fn new(near: Frontier, delta: u64) -> Self {
        let kind = near.kind();
        Self {
            near,
            far: Frontier::new(kind),
            threshold: delta,
            delta,
        }
    }

    /// Splits a freshly produced frontier against the current threshold;
    /// near items replace `self.near`, far items join the far pile.
    pub fn push_split<K>(&mut self, input: &Frontier, key: K)
    where
        K: Fn(u32) -> u64 + Sync + Send,
    {
        let (near, far) = split(input, key, self.threshold);
        self.near = near;
        self.far.extend_from_slice(far.items());
    }

    /// Raises the threshold by one `delta` and re-splits the far pile. Items
    /// for which `keep` fails are dropped as stale.
    pub fn advance_bucket<K, P>(&mut self, key: K, keep: P) -> Result<(), OperatorError>
    where
        K: Fn(u32) -> u64 + Sync + Send,
        P: Fn(u32) -> bool + Sync + Send,
    {
        if !self.near.is_empty() {
            return Err(OperatorError::NearNotEmpty);
        }
        self.threshold = self.threshold.saturating_add(self.delta);
        let live = Frontier::from_vec(self.far.kind(), par::compact(self.far.items(), |_, &x| keep(x)));
        let (near, far) = split(&live, key, self.threshold);
        self.near = near;
        self.far = far;
        Ok(())
    }

    pub fn is_exhausted(&self) -> bool {
        self.near.is_empty() && self.far.is_empty()
    }
}
