//! Combinatorial Chekanov–Eliashberg differential graded algebras of
//! Legendrian knots in standard contact R³, with derived invariants:
//! augmentations, linearized homology, A∞ structure, graded normal rulings,
//! and skein polynomials.

pub mod augment;
pub mod dga;
pub mod front;
pub mod ncalg;
pub mod poly;
pub mod ring;
pub mod rulings;
pub mod tame;
