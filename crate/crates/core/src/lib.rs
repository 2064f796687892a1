//! Multilevel optimizer for Trotterized wave-equation simulation circuits.
//!
//! Circuits are built at the high-level gate set (arbitrary control counts),
//! simplified, lowered to at most two controls, simplified again, and finally
//! lowered to {RZ, X, H, CX}.

pub mod cost;
pub mod ir;
pub mod oracle;
pub mod passes;
pub mod pde;
pub mod report;
