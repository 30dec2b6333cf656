//! Gray-code generation of multiset permutations where every step is a
//! transposition and any non-adjacent swap only passes over copies of the
//! smaller swapped value.
//!
//! * [`multiset`]: multiset specs, permutations, transpositions, traces,
//!   counting and a lexicographic oracle.
//! * [`oriented`]: the `{o,<,>}` combination sweep.
//! * [`multiperm`]: the constant-storage multiset generator.
//! * [`refgens`]: reference Gray codes (Johnson-Trotter, revolving door,
//!   Eades-McKay).
//! * [`verify`]: step checks, exactly-once checks, circularity, the marked
//!   revolving-door lemma and transposition graphs.
//! * [`metrics`]: transposition widths and total motion.
//! * [`tensorpoly`]: Young tableau column enumeration and curvature-tensor
//!   polynomials.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod metrics;
pub mod multiperm;
pub mod multiset;
pub mod oriented;
pub mod refgens;
pub mod tensorpoly;
pub mod verify;

pub use error::{Error, Result};
pub use multiperm::{generate_all, new_generator, MultisetPermutations, StepRecord};
pub use multiset::{
    apply_transposition, enumerate_lex, multinomial_count, GrayTrace, MultisetSpec, Permutation,
    Transposition, DEFAULT_CAP,
};
pub use oriented::{IterationOutcome, OrientedState};
