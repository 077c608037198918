//! Dense integer matrices and Smith normal form.

use std::ops::{Index, IndexMut, Mul, Sub};

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[i64]>::to_vec)
            .take(self.rows)
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> i64 {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                    return 0;
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflow")
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// `left * input * right == diag(diagonal)`, with `left`, `right` unimodular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    /// Length `min(rows, cols)`; non-negative, each entry divides the next, zeros last.
    pub diagonal: Vec<i64>,
    pub rank: usize,
    pub determinant: Option<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Non-unit invariant factors of the cokernel `Z^rows / image`; 0 stands for a free summand.
    pub fn cokernel_factors(&self, rows: usize) -> Vec<i64> {
        let mut f: Vec<i64> = self.diagonal.iter().copied().filter(|&d| d != 1).collect();
        f.extend(std::iter::repeat_n(
            0,
            rows.saturating_sub(self.diagonal.len()),
        ));
        f
    }
}

pub fn smith_normal_form(input: &IntMatrix) -> SmithForm {
    let (r, c) = (input.rows, input.cols);
    let mut a: Vec<Vec<i128>> = input
        .to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(i128::from).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = ident(r);
    let mut v: Vec<Vec<i128>> = ident(c);

    let mut t = 0;
    while t < r.min(c) {
        // Pivot: smallest non-zero absolute value in the remaining block.
        let pivot = (t..r)
            .flat_map(|i| (t..c).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| (a[i][j].abs(), i, j));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut dirty = false;
            for i in t + 1..r {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    row_axpy(&mut a, i, t, -q);
                    row_axpy(&mut u, i, t, -q);
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    col_axpy(&mut a, j, t, -q);
                    col_axpy(&mut v, j, t, -q);
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // Enforce divisibility of the rest of the block by the pivot.
                let bad = (t + 1..r)
                    .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % a[t][t] != 0);
                match bad {
                    Some((i, _)) => {
                        row_axpy(&mut a, t, i, 1);
                        row_axpy(&mut u, t, i, 1);
                    }
                    None => break,
                }
            }
            // Move the smallest remaining entry of row/column t into the pivot.
            let best_row = (t..r)
                .filter(|&i| a[i][t] != 0)
                .min_by_key(|&i| a[i][t].abs());
            if let Some(i) = best_row {
                if a[i][t].abs() < a[t][t].abs() {
                    a.swap(t, i);
                    u.swap(t, i);
                }
            }
            let best_col = (t..c)
                .filter(|&j| a[t][j] != 0)
                .min_by_key(|&j| a[t][j].abs());
            if let Some(j) = best_col {
                if a[t][j].abs() < a[t][t].abs() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, j);
                    }
                }
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }

    let diagonal: Vec<i64> = (0..r.min(c))
        .map(|i| i64::try_from(a[i][i]).expect("smith entry overflow"))
        .collect();
    let to_matrix = |m: Vec<Vec<i128>>| {
        IntMatrix::from_rows(
            &m.into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|x| i64::try_from(x).expect("transform overflow"))
                        .collect()
                })
                .collect::<Vec<_>>(),
        )
    };
    let (left, right) = if r == 0 || c == 0 {
        (IntMatrix::identity(r), IntMatrix::identity(c))
    } else {
        (to_matrix(u), to_matrix(v))
    };
    SmithForm {
        rank: diagonal.iter().filter(|&&d| d != 0).count(),
        determinant: input.is_square().then(|| input.determinant()),
        diagonal,
        left,
        right,
    }
}

fn ident(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// row[dst] += k * row[src]
fn row_axpy(m: &mut [Vec<i128>], dst: usize, src: usize, k: i128) {
    for j in 0..m[dst].len() {
        let add = k * m[src][j];
        m[dst][j] += add;
    }
}

/// col[dst] += k * col[src]
fn col_axpy(m: &mut [Vec<i128>], dst: usize, src: usize, k: i128) {
    for row in m.iter_mut() {
        let add = k * row[src];
        row[dst] += add;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag(d: &[i64], r: usize, c: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(r, c);
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        let prod = &(&s.left * a) * &s.right;
        assert_eq!(
            prod,
            diag(&s.diagonal, a.rows(), a.cols()),
            "U A V for {a:?}"
        );
        assert_eq!(s.left.determinant().abs(), 1);
        assert_eq!(s.right.determinant().abs(), 1);
        for w in s.diagonal.windows(2) {
            assert!(w[0] >= 0 && w[1] >= 0);
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        s
    }

    #[test]
    fn small_examples() {
        assert_eq!(check(&IntMatrix::identity(2)).diagonal, vec![1, 1]);
        let golden = IntMatrix::from_rows(&[vec![0, -1], vec![-1, 1]]);
        let s = check(&golden);
        assert_eq!((s.diagonal.clone(), s.determinant), (vec![1, 1], Some(-1)));
        assert_eq!(
            check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]])).diagonal,
            vec![2, 2]
        );
        let s = check(&IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]));
        assert_eq!(s.diagonal, vec![1, 0]);
        assert_eq!(s.cokernel_factors(2), vec![0]);
    }

    #[test]
    fn divisibility_is_enforced() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal, vec![1, 6]);
        let s = check(&IntMatrix::from_rows(&[vec![4, 6, 0], vec![6, 9, 3]]));
        assert_eq!(s.diagonal, vec![1, 6]);
    }

    #[test]
    fn determinant_and_powers() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(a.determinant(), -1);
        let traces: Vec<i64> = (1..=5).map(|n| a.pow(n).trace()).collect();
        assert_eq!(traces, vec![1, 3, 4, 7, 11]);
        let b = IntMatrix::from_rows(&[vec![0, 2, 1], vec![3, 1, 0], vec![1, 1, 1]]);
        assert_eq!(b.determinant(), -4);
    }

    proptest! {
        #[test]
        fn transform_identity_holds(rows in 1usize..4, cols in 1usize..4, seed in proptest::collection::vec(-5i64..=5, 16)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            check(&IntMatrix::from_rows(&data));
        }

        #[test]
        fn determinant_matches_smith_product(seed in proptest::collection::vec(-4i64..=4, 9)) {
            let data: Vec<Vec<i64>> = seed.chunks(3).map(<[i64]>::to_vec).collect();
            let a = IntMatrix::from_rows(&data);
            let s = check(&a);
            prop_assert_eq!(s.diagonal.iter().product::<i64>(), a.determinant().abs());
        }
    }
}
