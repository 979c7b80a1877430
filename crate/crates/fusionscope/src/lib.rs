//! Reconstruction of group-theoretic structure from fusion rules.
//!
//! The input is a based ring: a finite set of basis labels, a distinguished
//! unit, a dual involution, and nonnegative structure constants for the
//! product of any two basis elements. When these data come from the
//! irreducible characters of a compact group, a surprising amount of the
//! group survives in the integers alone: the dual of the center, the lattice
//! of closed normal subgroups, the character table of a finite group, and
//! (for SU(2)) the full Clebsch-Gordan series can all be recovered without
//! ever fixing a concrete realization of the group.
//!
//! Modules are layered bottom-up: [`ring`] defines the ring and its axioms,
//! [`abelian`] handles finite abelian groups given by multiplication tables,
//! [`recovery`] extracts invertible characters and the chain group,
//! [`subrings`] and [`iso`] cover the subring lattice and order
//! isomorphisms, [`solver`] solves the character equations numerically,
//! [`su2`] re-derives the SU(2) tensor product rules from dimension
//! bookkeeping, and [`format`]/[`report`]/[`cli`] wrap everything in a JSON
//! interchange format and a command-line tool.

pub mod abelian;
pub mod catalog;
pub mod cli;
pub mod format;
pub mod iso;
pub mod recovery;
pub mod report;
pub mod ring;
pub mod solver;
pub mod su2;
pub mod subrings;
