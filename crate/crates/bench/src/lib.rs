//! Fixtures shared by the benchmarks.

use synchrolab::{builtins, BiSeq, IntMatrix, Shift};

pub struct Fixture {
    pub shift: Shift,
    /// A synchronizing point with witness radius 0.
    pub sync_point: BiSeq,
    /// Homoclinic to `sync_point`.
    pub partner: BiSeq,
}

pub fn fixtures() -> Vec<Fixture> {
    let golden = builtins::golden_mean();
    let even = builtins::even();
    let product = golden.product(&even).expect("builtins multiply");
    let pair = |name: &str| product.alphabet().index(name).expect("product symbol");
    let (base, bump) = (pair("(0,1)"), pair("(1,1)"));
    vec![
        Fixture {
            shift: golden,
            sync_point: BiSeq::constant(0),
            partner: BiSeq::spike(0, &[1, 0, 1], 2),
        },
        Fixture {
            shift: even,
            sync_point: BiSeq::constant(1),
            partner: BiSeq::spike(1, &[0, 0], -1),
        },
        Fixture {
            sync_point: BiSeq::constant(base),
            partner: BiSeq::spike(base, &[bump], 1),
            shift: product,
        },
    ]
}

/// `I - A` for a few adjacency matrices of growing size.
pub fn bowen_franks_inputs() -> Vec<IntMatrix> {
    (2..=6)
        .map(|n| {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| ((i * 7 + j * 3) % 4) as i64).collect())
                .collect();
            &IntMatrix::identity(n) - &IntMatrix::from_rows(&rows)
        })
        .collect()
}
