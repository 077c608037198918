//! Shipped example shifts.

use crate::shift::Shift;
use crate::specfile::SpecFile;

pub const GOLDEN_MEAN: &str = "\
# binary sequences with no two adjacent 1s
name: goldenmean
alphabet: 0 1
type: sft
forbid: 11
point: zeros L=0 C= O=0 R=0
point: spike L=0 C=1 O=3 R=0
";

pub const EVEN: &str = "\
# runs of 0 between two 1s have even length
name: even
alphabet: 0 1
type: sofic
state: A
state: B
edge: A 1 A
edge: A 0 B
edge: B 0 A
point: zeros L=0 C= O=0 R=0
point: ones L=1 C= O=0 R=1
";

pub const FULL2: &str = "\
name: full2
alphabet: 0 1
type: sft
point: zeros L=0 C= O=0 R=0
";

pub const PERIOD2: &str = "\
# the single orbit (01)
name: period2
alphabet: 0 1
type: sft
forbid: 00 11
point: alt L=01 C= O=0 R=01
";

pub const NONSOFIC_RAY: &str = "\
# labels of paths on a half-line: a loops at the end, b climbs, c descends
name: nonsofic-ray
alphabet: a b c
type: oracle:nonsofic-ray
window: 16
point: rest L=a C= O=0 R=a
";

pub const CONTEXT_FREE: &str = "\
# a b^m c^k a only when m = k
name: context-free
alphabet: a b c
type: oracle:context-free
window: 16
point: rest L=a C= O=0 R=a
";

pub const NAMES: [&str; 6] = [
    "goldenmean",
    "even",
    "full2",
    "period2",
    "nonsofic-ray",
    "context-free",
];

/// Spec text of a builtin, accepting the name with or without a `.shift` suffix.
pub fn text(name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".shift").unwrap_or(name);
    Some(match stem {
        "goldenmean" => GOLDEN_MEAN,
        "even" => EVEN,
        "full2" => FULL2,
        "period2" => PERIOD2,
        "nonsofic-ray" => NONSOFIC_RAY,
        "context-free" => CONTEXT_FREE,
        _ => return None,
    })
}

pub fn load(name: &str) -> Option<SpecFile> {
    text(name).map(|t| SpecFile::parse(t).expect("builtin specs parse"))
}

fn shift(name: &str) -> Shift {
    load(name).expect("known builtin").shift
}

pub fn golden_mean() -> Shift {
    shift("goldenmean")
}

pub fn even() -> Shift {
    shift("even")
}

pub fn full2() -> Shift {
    shift("full2")
}

pub fn period2() -> Shift {
    shift("period2")
}

pub fn nonsofic_ray() -> Shift {
    shift("nonsofic-ray")
}

pub fn context_free() -> Shift {
    shift("context-free")
}
