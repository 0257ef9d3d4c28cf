//! Grunsky-coefficient identities for univalent functions and certified
//! interval bounds on the majorants of `|H_2(2)|` and `|H_3(1)|`.

pub mod cli;
pub mod functions;
pub mod grunsky;
pub mod hankel;
pub mod interval;
pub mod objective;
pub mod optimize;
pub mod scalar;
pub mod series;
