use std::fmt;

use crate::error::{Error, Result};

/// Both sides of an identity instance, as computed by two independent routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equality<T> {
    pub lhs: T,
    pub rhs: T,
}

impl<T: PartialEq + fmt::Display> Equality<T> {
    pub fn new(lhs: T, rhs: T) -> Self {
        Equality { lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    /// `Ok(lhs)` when the two sides agree, a mismatch error naming `id` otherwise.
    pub fn verify(self, id: &str) -> Result<T> {
        if self.holds() {
            Ok(self.lhs)
        } else {
            Err(Error::mismatch(id, &self.lhs, &self.rhs))
        }
    }
}
