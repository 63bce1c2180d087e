use crate::error::{Error, Result};

/// The explicit parameter `k` together with the bound `kmax` fixed at
/// initialisation. Steps outside `1..=kmax` are ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParamState {
    k: usize,
    kmax: usize,
}

impl ParamState {
    /// Starts at `k = kmax`.
    pub fn new(kmax: usize) -> Result<Self> {
        Self::with_value(kmax, kmax)
    }

    pub fn with_value(k: usize, kmax: usize) -> Result<Self> {
        if kmax == 0 {
            return Err(Error::ParameterBound("kmax must be at least 1".into()));
        }
        if k == 0 || k > kmax {
            return Err(Error::ParameterBound(format!(
                "parameter {k} outside 1..={kmax}"
            )));
        }
        Ok(ParamState { k, kmax })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// Returns whether the value changed.
    pub fn inc(&mut self) -> bool {
        if self.k < self.kmax {
            self.k += 1;
            true
        } else {
            false
        }
    }

    pub fn dec(&mut self) -> bool {
        if self.k > 1 {
            self.k -= 1;
            true
        } else {
            false
        }
    }
}
