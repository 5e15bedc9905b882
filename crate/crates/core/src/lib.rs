//! Path-diversity analysis of AS-level announcement digraphs.
//!
//! Everything in this crate is allocation-only and free of IO: text formats,
//! CSV/DOT rendering and the command-line driver live in the `pathdiv` crate.
//!
//! The central object is [`Digraph`], a simple directed graph over
//! [`AsNumber`]s. An [`AnnouncementDigraph`] pairs one with the AS whose
//! advertisement it carries; its converse is the destination digraph in
//! which arc-disjoint paths toward the origin are counted ([`disjoint::adp`]).
//! [`ppr::select_bgp_digraph`] prunes an announcement digraph down to the
//! single-path arborescence a BGP speaker would actually use.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod asn;
pub mod digraph;
pub mod disjoint;
mod error;
mod flow;
pub mod ppr;
pub mod report;
pub mod sources;
pub mod syngen;

pub use asn::AsNumber;
pub use digraph::{AnnouncementDigraph, Digraph};
pub use error::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;
