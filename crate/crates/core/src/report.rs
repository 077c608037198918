//! Bowen-Franks data and the summary report on synchronizing points.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMatrix};
use crate::shift::Shift;
use crate::sync::{nonsync_subshift, Finiteness};

/// Cokernel of `I - A`: its non-unit invariant factors (0 for a copy of Z) and the
/// sign of `det(I - A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BowenFranks {
    pub invariant_factors: Vec<i64>,
    pub det_sign: i8,
}

impl BowenFranks {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for BowenFranks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|&d| {
                if d == 0 {
                    "Z".to_string()
                } else {
                    format!("Z/{d}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

pub fn bowen_franks_of(a: &IntMatrix) -> BowenFranks {
    let n = a.rows();
    let m = &IntMatrix::identity(n) - a;
    let snf = smith_normal_form(&m);
    BowenFranks {
        invariant_factors: snf.cokernel_factors(n),
        det_sign: m.determinant().signum() as i8,
    }
}

/// Bowen-Franks data of the Fischer cover's adjacency matrix.
pub fn bowen_franks(s: &Shift) -> Result<BowenFranks> {
    Ok(bowen_franks_of(&s.fischer_cover()?.adjacency()))
}

/// Number of non-synchronizing points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonSyncCount {
    Finite(usize),
    Infinite,
    Unknown,
}

impl Serialize for NonSyncCount {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NonSyncCount::Finite(m) => ser.serialize_u64(*m as u64),
            NonSyncCount::Infinite => ser.serialize_str("infinite"),
            NonSyncCount::Unknown => ser.serialize_str("unknown"),
        }
    }
}

impl fmt::Display for NonSyncCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonSyncCount::Finite(m) => write!(f, "{m}"),
            NonSyncCount::Infinite => f.write_str("infinite"),
            NonSyncCount::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReportFlags {
    pub irreducible: Option<bool>,
    pub mixing: Option<bool>,
    pub finitely_many_non_sync: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub shift: String,
    pub m: NonSyncCount,
    /// `ℂ^m`, present only when `m` is finite.
    pub quotient: Option<String>,
    pub bf_invariant_factors: Option<Vec<i64>>,
    pub det_sign: Option<i8>,
    pub flags: ReportFlags,
    /// Statements about the ideal of synchronizing points are withheld for non-mixing shifts.
    pub claims_suppressed: bool,
}

pub fn exact_sequence_report(s: &Shift) -> Result<ExactSequenceReport> {
    if s.is_oracle() {
        return Ok(ExactSequenceReport {
            shift: s.name().to_string(),
            m: NonSyncCount::Unknown,
            quotient: None,
            bf_invariant_factors: None,
            det_sign: None,
            flags: ReportFlags {
                irreducible: None,
                mixing: None,
                finitely_many_non_sync: None,
            },
            claims_suppressed: true,
        });
    }
    let structure = s.structure()?;
    if !structure.irreducible {
        return Err(Error::NotIrreducible);
    }
    let nonsync = nonsync_subshift(s)?;
    let m = match nonsync.finiteness {
        Finiteness::Finite(points) => NonSyncCount::Finite(points.len()),
        Finiteness::Infinite => NonSyncCount::Infinite,
    };
    let bf = bowen_franks(s)?;
    Ok(ExactSequenceReport {
        shift: s.name().to_string(),
        m,
        quotient: match m {
            NonSyncCount::Finite(k) => Some(format!("ℂ^{k}")),
            _ => None,
        },
        bf_invariant_factors: Some(bf.invariant_factors),
        det_sign: Some(bf.det_sign),
        flags: ReportFlags {
            irreducible: Some(true),
            mixing: Some(structure.mixing),
            finitely_many_non_sync: Some(matches!(m, NonSyncCount::Finite(_))),
        },
        claims_suppressed: !structure.mixing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::periodic::enumerate_periodic;
    use crate::sync::is_synchronizing;

    #[test]
    fn builtin_fingerprints() {
        let cases = [
            (builtins::golden_mean(), vec![], -1),
            (builtins::full2(), vec![], -1),
            (builtins::period2(), vec![0], 0),
            (builtins::even(), vec![], -1),
        ];
        for (s, factors, sign) in cases {
            let bf = bowen_franks(&s).unwrap();
            assert_eq!(bf.invariant_factors, factors, "{}", s.name());
            assert_eq!(bf.det_sign, sign, "{}", s.name());
        }
    }

    #[test]
    fn fingerprint_ignores_state_order() {
        let a = IntMatrix::from_rows(&[vec![0, 2, 1], vec![1, 0, 0], vec![1, 1, 1]]);
        let perm = [2, 0, 1];
        let mut b = IntMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                b[(perm[i], perm[j])] = a[(i, j)];
            }
        }
        assert_eq!(bowen_franks_of(&a), bowen_franks_of(&b));
    }

    #[test]
    fn reports() {
        let even = exact_sequence_report(&builtins::even()).unwrap();
        assert_eq!(even.m, NonSyncCount::Finite(1));
        assert_eq!(even.quotient.as_deref(), Some("ℂ^1"));
        assert_eq!(even.flags.mixing, Some(true));
        let golden = exact_sequence_report(&builtins::golden_mean()).unwrap();
        assert_eq!(golden.m, NonSyncCount::Finite(0));
        let p2 = exact_sequence_report(&builtins::period2()).unwrap();
        assert_eq!(p2.flags.mixing, Some(false));
        assert!(p2.claims_suppressed);
        let ray = exact_sequence_report(&builtins::nonsofic_ray()).unwrap();
        assert_eq!(ray.m, NonSyncCount::Unknown);
        let json = serde_json::to_value(&even).unwrap();
        for key in ["m", "quotient", "bf_invariant_factors", "det_sign", "flags"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["m"], 1);
    }

    #[test]
    fn m_matches_periodic_enumeration() {
        for s in [
            builtins::even(),
            builtins::golden_mean(),
            builtins::period2(),
        ] {
            let r = exact_sequence_report(&s).unwrap();
            let mut nonsync = std::collections::BTreeSet::new();
            for n in 1..=6 {
                for p in enumerate_periodic(&s, n).unwrap().points {
                    if !is_synchronizing(&s, &p).unwrap() {
                        nonsync.insert(p);
                    }
                }
            }
            assert_eq!(r.m, NonSyncCount::Finite(nonsync.len()), "{}", s.name());
        }
    }
}
