//! Exact arithmetic for a family of function fields `F = K(x, y)` defined by
//! `L(y) = f(x) / g(x)`, where `L` is a linearized polynomial over `K = GF(q^n)`,
//! together with the coding-theory layer built on top of them:
//!
//! * [`galois`] — finite-field towers `GF(p) -> GF(p^a) -> GF(p^(a*k))` with
//!   canonical moduli, dense polynomial arithmetic and factorization, and
//!   solvers for additive (linearized) polynomials.
//! * [`curve`] — the function-field descriptor, its distinguished places and
//!   valuation table, input validation, and numeric genus inference.
//! * [`riemannroch`] — closed-form dimension, explicit monomial bases, and
//!   divisor floors for divisors supported on the distinguished places.
//! * [`places`] — enumeration of evaluation places of degree 1..=3 and
//!   residue evaluation of basis monomials.
//! * [`codes`] — inner codes, concatenated evaluation codes, and certified
//!   minimum-distance lower bounds with structured certificates.
//! * [`oracle`] — independent checks: exact rank, brute-force minimum
//!   distance, and basis verification straight from the valuation table.
//! * [`cli`] — the `gagcode` command-line front end.
//!
//! The crate is deterministic by construction: canonical field moduli, a fixed
//! seed for the only randomized subroutine (equal-degree splitting), and
//! canonical ordering of every enumerated object. With the default `parallel`
//! feature the hot loops run on rayon; disabling it yields the same results
//! sequentially.

pub mod galois;

pub mod curve;

pub mod riemannroch;

pub mod places;

pub mod codes;

pub mod oracle;

pub mod builtin;

pub mod cli;
