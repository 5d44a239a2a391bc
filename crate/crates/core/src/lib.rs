//! Exact arithmetic for composition algebras, reduced Jordan algebras of
//! hermitian matrices, the birational Veronese link to a quadric and the
//! motivic bookkeeping attached to it.
pub mod birational;
pub mod cayley_dickson;
pub mod jordan;
pub mod linalg;
pub mod motives;
pub mod par;
pub mod quadform;
pub mod report;
pub mod rootsys;
pub mod scalars;
pub mod verify;
