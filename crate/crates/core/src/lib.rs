//! Exact computations on subshifts: finite presentations, eventually periodic
//! points, synchronizing words and points, brackets and rectangles, periodic
//! points, local conjugacy germs, resolving factor maps, and integer-matrix
//! invariants.
//!
//! ```
//! use synchrolab::{builtins, periodic::enumerate_periodic};
//!
//! let golden = builtins::golden_mean();
//! let counts: Vec<usize> = (1..=5)
//!     .map(|n| enumerate_periodic(&golden, n).unwrap().count())
//!     .collect();
//! assert_eq!(counts, vec![1, 3, 4, 7, 11]);
//! ```

pub mod alphabet;
pub mod builtins;
pub mod conjugacy;
pub mod error;
pub mod factor;
pub mod local;
pub mod matrix;
pub mod oracle;
pub mod periodic;
pub mod point;
pub mod presentation;
pub mod report;
pub mod shift;
pub mod specfile;
pub mod stateset;
pub mod sync;

pub use alphabet::{Alphabet, Symbol, Word};
pub use error::{Error, Result};
pub use local::{bracket, decide_relation, point_in_shift, Relation};
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use oracle::Oracle;
pub use point::{BiSeq, Dyadic};
pub use presentation::{determinize, Edge, Presentation, StructureFlags};
pub use shift::{Shift, ShiftKind, Verdict};
pub use specfile::SpecFile;
pub use stateset::StateSet;
