//! Integer linear algebra on small matrices: kernel lattices, spanning tests
//! and determinants. Matrices are row-major `Vec<Vec<BigInt>>`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Column echelon form `A·U` with `U` unimodular, plus the pivot rows.
struct ColumnEchelon {
    reduced: IntMatrix,
    transform: IntMatrix,
    /// `(row, value)` of each pivot, one per leading column.
    pivots: Vec<(usize, BigInt)>,
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `col[dst] -= k * col[src]`
fn axpy_col(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    for row in m.iter_mut() {
        let s = &row[src] * k;
        row[dst] -= s;
    }
}

fn column_echelon(a: &IntMatrix, ncols: usize) -> ColumnEchelon {
    let mut m: IntMatrix = a.clone();
    let mut u: IntMatrix = (0..ncols)
        .map(|i| (0..ncols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..m.len() {
        if k == ncols {
            break;
        }
        loop {
            // smallest nonzero entry of row i among columns k..
            let best = (k..ncols)
                .filter(|&j| !m[i][j].is_zero())
                .min_by(|&x, &y| m[i][x].abs().cmp(&m[i][y].abs()));
            let Some(j) = best else { break };
            swap_cols(&mut m, j, k);
            swap_cols(&mut u, j, k);
            let mut done = true;
            for j in k + 1..ncols {
                if m[i][j].is_zero() {
                    continue;
                }
                let q = m[i][j].div_floor(&m[i][k]);
                axpy_col(&mut m, j, k, &q);
                axpy_col(&mut u, j, k, &q);
                if !m[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                pivots.push((i, m[i][k].clone()));
                k += 1;
                break;
            }
        }
    }
    ColumnEchelon {
        reduced: m,
        transform: u,
        pivots,
    }
}

/// An integer basis of `{v ∈ Z^ncols : A·v = 0}`, in echelon form: each
/// vector has a positive entry at its pivot column and zeros after it; pivots
/// are distinct and sorted increasingly.
pub fn kernel_basis(a: &IntMatrix, ncols: usize) -> Vec<Vec<BigInt>> {
    let ech = column_echelon(a, ncols);
    let rank = ech.pivots.len();
    let raw: Vec<Vec<BigInt>> = (rank..ncols)
        .map(|j| ech.transform.iter().map(|row| row[j].clone()).collect())
        .collect();
    debug_assert!(ech.reduced.iter().all(|row| row[rank..].iter().all(Zero::is_zero)));
    echelon_rows(raw, ncols)
}

/// Row echelon form with pivots taken from the last column backwards.
fn echelon_rows(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut done: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for col in (0..ncols).rev() {
        loop {
            let best = (0..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&x, &y| rows[x][col].abs().cmp(&rows[y][col].abs()));
            let Some(b) = best else { break };
            let pivot_row = rows.swap_remove(b);
            let mut clean = true;
            for r in rows.iter_mut() {
                if r[col].is_zero() {
                    continue;
                }
                let q = r[col].div_floor(&pivot_row[col]);
                for (x, y) in r.iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !r[col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                let mut pr = pivot_row;
                if pr[col].is_negative() {
                    for x in pr.iter_mut() {
                        *x = -x.clone();
                    }
                }
                // reduce earlier (higher-pivot) rows at this column
                for (_, r) in done.iter_mut() {
                    let q = r[col].div_floor(&pr[col]);
                    if !q.is_zero() {
                        for (x, y) in r.iter_mut().zip(&pr) {
                            *x -= &q * y;
                        }
                    }
                }
                done.push((col, pr));
                break;
            }
            rows.push(pivot_row);
        }
    }
    done.sort_by_key(|(c, _)| *c);
    done.into_iter().map(|(_, r)| r).collect()
}

/// Pivot column of an echelon vector (its last nonzero entry).
pub fn pivot_column(v: &[BigInt]) -> Option<usize> {
    v.iter().rposition(|x| !x.is_zero())
}

/// Integer coordinates of `v` in an echelon basis from [`kernel_basis`], or
/// `None` when `v` is not in the lattice it spans.
pub fn coordinates_in(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest: Vec<BigInt> = v.to_vec();
    let mut coords = vec![BigInt::zero(); basis.len()];
    for (i, b) in basis.iter().enumerate().rev() {
        let col = pivot_column(b)?;
        let (q, r) = rest[col].div_rem(&b[col]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in rest.iter_mut().zip(b) {
            *x -= &q * y;
        }
        coords[i] = q;
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// Whether the columns of `a` (with `nrows` rows) generate all of `Z^nrows`.
pub fn columns_span_lattice(a: &IntMatrix, nrows: usize, ncols: usize) -> bool {
    if nrows == 0 {
        return true;
    }
    let ech = column_echelon(a, ncols);
    ech.pivots.len() == nrows && ech.pivots.iter().all(|(_, v)| v.abs().is_one())
}

/// Determinant of a square integer matrix (fraction-free elimination).
pub fn determinant(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        mat(rows)
    }

    #[test]
    fn kernel_of_blow_up_weights() {
        // x, y weight 1; z weight pi: coordinates (1,0), (1,0), (0,1)
        let w = mat(&[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(kernel_basis(&w, 3), vecs(&[&[-1, 1, 0]]));
    }

    #[test]
    fn kernel_trivial_and_full() {
        let lex = mat(&[&[1, 0], &[0, 1]]);
        assert!(kernel_basis(&lex, 2).is_empty());
        let zero = mat(&[&[0, 0, 0]]);
        assert_eq!(kernel_basis(&zero, 3), vecs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(kernel_basis(&Vec::new(), 2), vecs(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn kernel_of_non_primitive_row() {
        // 2a + 4b + 6c = 0
        let k = kernel_basis(&mat(&[&[2, 4, 6]]), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((BigInt::from(2) * &v[0] + BigInt::from(4) * &v[1] + BigInt::from(6) * &v[2]).is_zero());
        }
        // (1, -2, 1) = 2b - ... must be expressible
        let target = [BigInt::from(1), BigInt::from(-2), BigInt::from(1)];
        assert!(coordinates_in(&k, &target).is_some());
        assert!(coordinates_in(&k, &[BigInt::from(1), BigInt::zero(), BigInt::zero()]).is_none());
    }

    #[test]
    fn spanning() {
        assert!(columns_span_lattice(&mat(&[&[1, 0], &[0, 1]]), 2, 2));
        assert!(columns_span_lattice(&mat(&[&[1, -1], &[0, 1]]), 2, 2));
        assert!(!columns_span_lattice(&mat(&[&[2, 0], &[0, 1]]), 2, 2));
        assert!(columns_span_lattice(&mat(&[&[2, 3]]), 1, 2));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&mat(&[&[1, -1], &[0, 1]])), BigInt::one());
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&mat(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), BigInt::from(6));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    fn naive_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * naive_det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_in_kernel_and_saturated(
            rows in 1usize..3, cols in 1usize..5,
            entries in prop::collection::vec(-4i64..=4, 12)
        ) {
            let a: IntMatrix = (0..rows)
                .map(|i| (0..cols).map(|j| BigInt::from(entries[i * cols + j])).collect())
                .collect();
            let k = kernel_basis(&a, cols);
            for v in &k {
                for row in &a {
                    let s: BigInt = row.iter().zip(v).map(|(x, y)| x * y).sum();
                    prop_assert!(s.is_zero());
                }
            }
            // saturation: every small kernel vector has integer coordinates
            let range = -2i64..=2;
            let mut stack = vec![Vec::<i64>::new()];
            while let Some(v) = stack.pop() {
                if v.len() == cols {
                    let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                    let in_kernel = a.iter().all(|row| row.iter().zip(&vb).map(|(x, y)| x * y).sum::<BigInt>().is_zero());
                    prop_assert_eq!(in_kernel, coordinates_in(&k, &vb).is_some());
                    continue;
                }
                for x in range.clone() {
                    let mut w = v.clone();
                    w.push(x);
                    stack.push(w);
                }
            }
        }

        #[test]
        fn determinant_matches_cofactor_expansion(n in 1usize..5, entries in prop::collection::vec(-5i64..=5, 16)) {
            let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| entries[i * n + j]).collect()).collect();
            let big: IntMatrix = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            prop_assert_eq!(determinant(&big), BigInt::from(naive_det(&m)));
        }
    }
}
