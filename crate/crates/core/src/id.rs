//! Opaque identifier newtypes for the plan entities.
//!
//! Identifiers are plain strings compared by equality; each entity family
//! gets its own type so references cannot be mixed up across maps.

use std::fmt;

use serde::{Deserialize, Serialize};

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                Self(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_string())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }
    };
}

id_type!(
    /// Identifies an administrative domain (the micro-operator or a peered MNO).
    DomainId
);
id_type!(
    /// Identifies a slice subnet instance.
    NssiId
);
id_type!(
    /// Identifies a slice instance, local or foreign.
    NsiId
);
id_type!(
    /// Identifies a tenant.
    TenantId
);
id_type!(
    /// Identifies a communication-service request.
    RequestId
);
