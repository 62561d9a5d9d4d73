//! Exact arithmetic and verifiers for torsion fields of elliptic curves over
//! finite fields and over function fields `k(t)` and `k(X_1(11))`.

pub mod algebra;
pub mod curves;
pub mod proell;
pub mod families;
pub mod bounds;
pub mod density;
