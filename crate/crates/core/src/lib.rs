//! Exact combinatorics of countable compact ordinal spaces.
//!
//! The crate provides Cantor normal form arithmetic for ordinals below
//! `w^w` ([`ordinal`]), the boolean algebra of clopen subsets of an
//! interval `[1, delta]` together with Cantor--Bendixson derivatives and
//! homeomorphism classification ([`clopen`]), a calculus of signature
//! pairs under disjoint-union exchange ([`sigcalc`]), a composition-closed
//! family of finitely-represented homeomorphisms of `[1, w^(a+1)]`
//! ([`homeo`]), and executable verified constructions built on top of all
//! of these ([`constructions`]).
//!
//! Randomized verification campaigns with machine-readable reports live in
//! [`campaigns`]; deterministic seeded generators in [`sampling`].

pub mod campaigns;
pub mod clopen;
pub mod constructions;
pub mod homeo;
pub mod ordinal;
pub mod report;
pub mod sampling;
pub mod sigcalc;

pub use ordinal::Ordinal;
