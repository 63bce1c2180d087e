use crate::change::ChangeOp;
use crate::error::Result;

/// A stateful object answering one parameterised query after every change.
///
/// Implementations own their instance. `apply` either succeeds or leaves the
/// state untouched.
pub trait Maintainer {
    fn problem(&self) -> &'static str;

    fn apply(&mut self, op: &ChangeOp) -> Result<()>;

    fn answer(&self) -> Result<bool>;

    /// Structural self-check of the auxiliary state.
    fn audit(&self) -> Result<(), String> {
        Ok(())
    }
}
