//! Operations on regular languages, concrete orbits under sets of
//! operations, and breadth-first enumeration of operation words modulo
//! known identities.

pub mod automata;
pub mod corpus;
pub mod langops;
pub mod oracle;
pub mod orbit;
pub mod rewrite;
