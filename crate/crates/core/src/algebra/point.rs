//! Point references: a name plus its construction order.
//!
//! The order drives every canonical argument sort. Points that are not bound
//! to a construction carry order 0, so the ordering falls back to the name.

use std::fmt;
use std::sync::Arc;

use serde::de::Deserializer;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

/// A point of a construction, identified by name, ordered by construction
/// order (ties broken by name for unbound points).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PointRef {
    pub order: u32,
    pub name: Arc<str>,
}

impl PointRef {
    pub fn new(name: impl AsRef<str>, order: u32) -> Self {
        PointRef {
            order,
            name: Arc::from(name.as_ref()),
        }
    }

    /// A point not bound to any construction; sorts by name alone.
    pub fn unbound(name: impl AsRef<str>) -> Self {
        PointRef::new(name, 0)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl Serialize for PointRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PointRef", 2)?;
        s.serialize_field("name", self.name.as_ref())?;
        s.serialize_field("order", &self.order)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for PointRef {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            name: String,
            order: u32,
        }
        let raw = Raw::deserialize(deserializer)?;
        Ok(PointRef::new(raw.name, raw.order))
    }
}
