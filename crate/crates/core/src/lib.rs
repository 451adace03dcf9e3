//! Dominating induced matchings (d.i.m.) on graphs without an induced
//! `S_{1,2,4}`.
//!
//! A d.i.m. of a graph is a set of edges `M` such that every edge of the graph
//! shares a vertex with exactly one member of `M`. The crate contains a
//! polynomial structural solver for `S_{1,2,4}`-free inputs ([`solver`]), an
//! exact exponential reference solver ([`oracle`]), detectors for the small
//! forbidden patterns the solver relies on ([`pattern`]), the black/white
//! coloring engine shared by both solvers ([`coloring`]) and instance
//! generators ([`gen`]).

pub mod coloring;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod pattern;
pub mod solver;

pub use graph::{Edge, Graph, GraphError, Vertex};
