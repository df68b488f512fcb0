//! Trace polynomials of rational tangles and the defining systems of the
//! SL(2,C) character variety of Montesinos knots.

pub mod ring;
pub mod tangle;
pub mod trace_engine;
pub mod reducible_engine;
pub mod variety_builder;
pub mod oracle;
