//! Exact Newton-boundary invariants and weight tables of isolated hypersurface
//! singularities.

pub mod cli;
pub mod corpus;
pub mod hodge;
pub mod linalg;
pub mod lp;
pub mod monodromy;
pub mod newton;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod verify;
