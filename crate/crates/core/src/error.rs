use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// `InvalidInput` covers structural problems (malformed tables, axiom
/// violations named in the message, dimension mismatches). `CapExceeded`
/// is reserved for enumerations that would produce more objects than the
/// configured cap; callers must treat it as "refuse", never "truncate".
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("enumeration cap exceeded: needed {needed} objects, cap is {cap}")]
    CapExceeded { needed: u128, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

/// Enumeration limits threaded through every operation that walks an
/// exponential object space. The default matches the documented cap.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub max_objects: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_objects: 100_000,
        }
    }
}

impl Caps {
    pub fn new(max_objects: u64) -> Self {
        Caps { max_objects }
    }

    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.max_objects as u128 {
            Err(Error::CapExceeded {
                needed,
                cap: self.max_objects,
            })
        } else {
            Ok(())
        }
    }
}
