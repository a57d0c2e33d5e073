//! Small dense integer matrices over `BigInt`, enough for exact work at
//! rank <= 10: fraction-free determinants, Smith normal form with
//! transformation matrices, rational linear solves and integer kernels.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Mi = Vec<Vec<BigInt>>;

pub fn from_i64(m: &[Vec<i64>]) -> Mi {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> Mi {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mul(a: &Mi, b: &Mi) -> Mi {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = BigInt::zero();
            for t in 0..k {
                acc += &a[i][t] * &b[t][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Fraction-free Bareiss elimination; exact for any square integer matrix.
pub fn bareiss_det(m: &Mi) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut prev = BigInt::one();
    let mut sign = 1i8;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Smith normal form: returns `(u, d, v)` with `u * m * v = d`, `d` diagonal
/// with a divisibility chain and `|det u| = |det v| = 1`.
pub fn smith_raw(m: &Mi) -> (Mi, Mi, Mi) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut d = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let min_dim = rows.min(cols);
    let mut t = 0;
    while t < min_dim {
        // pivot: entry of least nonzero absolute value in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        d.swap(t, pi);
        u.swap(t, pi);
        if pj != t {
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
        }

        let mut dirty = false;
        for i in t + 1..rows {
            if !d[i][t].is_zero() {
                let q = div_round(&d[i][t], &d[t][t]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let s = &d[t][j] * &q;
                        d[i][j] -= s;
                    }
                    for j in 0..rows {
                        let s = &u[t][j] * &q;
                        u[i][j] -= s;
                    }
                }
                if !d[i][t].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in t + 1..cols {
            if !d[t][j].is_zero() {
                let q = div_round(&d[t][j], &d[t][t]);
                if !q.is_zero() {
                    for row in d.iter_mut() {
                        let s = &row[t] * &q;
                        row[j] -= s;
                    }
                    for row in v.iter_mut() {
                        let s = &row[t] * &q;
                        row[j] -= s;
                    }
                }
                if !d[t][j].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue; // residues remain; pick a smaller pivot
        }

        // divisibility: the pivot must divide every trailing entry
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&d[i][j] % &d[t][t]).is_zero() {
                    for jj in 0..cols {
                        let s = d[i][jj].clone();
                        d[t][jj] += s;
                    }
                    for jj in 0..rows {
                        let s = u[i][jj].clone();
                        u[t][jj] += s;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }

    // normalize diagonal signs
    for i in 0..min_dim {
        if d[i][i].is_negative() {
            for j in 0..cols {
                let x = -d[i][j].clone();
                d[i][j] = x;
            }
            for j in 0..rows {
                let x = -u[i][j].clone();
                u[i][j] = x;
            }
        }
    }
    (u, d, v)
}

/// Nearest-integer quotient, so remainders satisfy `|r| <= |b|/2`.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num::Integer::div_rem(a, b);
    let two_r = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Exact inverse of a matrix with `det = ±1`.
pub fn inverse_unimodular(m: &Mi) -> Mi {
    let n = m.len();
    let inv = solve_many(m, &identity(n));
    inv.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Solves `m * x = rhs` columnwise over the rationals (m square invertible).
pub fn solve_many(m: &Mi, rhs: &Mi) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let w = rhs[0].len();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n + w)
                .map(|j| {
                    if j < n {
                        BigRational::from(m[i][j].clone())
                    } else {
                        BigRational::from(rhs[i][j - n].clone())
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !a[i][c].is_zero())
            .expect("singular matrix in solve_many");
        a.swap(c, p);
        let inv = a[c][c].recip();
        for j in c..n + w {
            a[c][j] = &a[c][j] * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..n + w {
                    let s = &a[c][j] * &f;
                    a[i][j] -= s;
                }
            }
        }
    }
    (0..n)
        .map(|i| (0..w).map(|j| a[i][n + j].clone()).collect())
        .collect()
}

/// Basis of the integer kernel `{x : m * x = 0}`; columns are returned as
/// vectors. The kernel of an integer matrix is always a saturated sublattice.
pub fn kernel_basis(m: &Mi) -> Vec<Vec<BigInt>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let (_, d, v) = smith_raw(m);
    let mut basis = Vec::new();
    for j in 0..cols {
        let zero_diag = j >= rows || d[j][j].is_zero();
        if zero_diag {
            basis.push((0..cols).map(|i| v[i][j].clone()).collect());
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(m: &[&[i64]]) -> Mi {
        m.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        // independent oracle: naive cofactor expansion
        fn cofactor(m: &Mi) -> BigInt {
            let n = m.len();
            if n == 0 {
                return BigInt::one();
            }
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = BigInt::zero();
            for j in 0..n {
                let minor: Mi = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m[i][c].clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * cofactor(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let cases = vec![
            bi(&[&[0, 1], &[1, 0]]),
            bi(&[&[2, 1, 0], &[1, -2, 3], &[0, 3, 4]]),
            bi(&[&[-2, 1, 0, 0], &[1, -2, 1, 0], &[0, 1, -2, 1], &[0, 0, 1, -2]]),
            bi(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]),
        ];
        for m in cases {
            assert_eq!(bareiss_det(&m), cofactor(&m));
        }
    }

    #[test]
    fn smith_reconstructs_input() {
        let cases = vec![
            bi(&[&[1, 0], &[0, 1]]),
            bi(&[&[0, 1], &[1, 0]]),
            bi(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]),
            bi(&[&[-2, 1], &[1, -2]]),
            bi(&[&[0, 2], &[2, 0]]),
        ];
        for m in cases {
            let (u, d, v) = smith_raw(&m);
            assert_eq!(mul(&mul(&u, &m), &v), d);
            assert_eq!(bareiss_det(&u).abs(), BigInt::one());
            assert_eq!(bareiss_det(&v).abs(), BigInt::one());
            let n = m.len();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        assert!(d[i][j].is_zero());
                    }
                }
            }
            for i in 0..n - 1 {
                if !d[i + 1][i + 1].is_zero() {
                    assert!(!d[i][i].is_zero());
                    assert!((&d[i + 1][i + 1] % &d[i][i]).is_zero());
                }
            }
        }
    }

    #[test]
    fn smith_classic_example() {
        let m = bi(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let (_, d, _) = smith_raw(&m);
        let diag: Vec<i64> = (0..3).map(|i| i64::try_from(&d[i][i]).unwrap()).collect();
        assert_eq!(diag, vec![2, 6, 12]);
    }

    #[test]
    fn kernel_is_correct() {
        let m = bi(&[&[1, 2, 3]]);
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            let s: BigInt = k[0].clone() + &k[1] * 2 + &k[2] * 3;
            assert!(s.is_zero());
        }
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let m = bi(&[&[1, 2], &[1, 3]]);
        let inv = inverse_unimodular(&m);
        assert_eq!(mul(&m, &inv), identity(2));
    }
}
