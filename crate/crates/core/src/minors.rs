//! Exact determinant and complementary-minor identity over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::characters::permutation_sign;
use crate::error::{domain, Result};

fn check_square(a: &[Vec<BigInt>]) -> Result<usize> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return domain("matrix is not square");
    }
    Ok(n)
}

/// Determinant by Bareiss fraction-free elimination.
pub fn det_bigint(a: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = check_square(a)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// Classical adjugate, so that `A · adj(A) = det(A) · I`.
pub fn adjugate(a: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let n = check_square(a)?;
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    if n == 1 {
        adj[0][0] = BigInt::one();
        return Ok(adj);
    }
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| a[r][c].clone()).collect())
                .collect();
            let c = det_bigint(&minor)?;
            adj[j][i] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    Ok(adj)
}

fn submatrix(a: &[Vec<BigInt>], rows: &[usize], cols: &[usize]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|&r| cols.iter().map(|&c| a[r][c].clone()).collect())
        .collect()
}

fn complement(seq: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|i| !seq.contains(i)).collect()
}

fn sequence_sign(seq: &[usize], n: usize) -> i32 {
    let full: Vec<i64> = seq
        .iter()
        .chain(complement(seq, n).iter())
        .map(|&x| x as i64)
        .collect();
    permutation_sign(&full)
}

fn check_sequence(seq: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &x in seq {
        if x >= n || seen[x] {
            return domain(format!("index sequence {seq:?} is not made of distinct indices below {n}"));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Checks, exactly, that for `A·B = D` diagonal
/// `(Π_{i ∈ U^c} D_ii) det A_{U,T} = sgn(U,U^c) sgn(T,T^c) det A det B_{T^c,U^c}`.
///
/// `u` and `t` are 0-based index sequences of equal length in any order;
/// complements are taken in increasing order.
pub fn verify_minor_identity_with(
    a: &[Vec<BigInt>],
    b: &[Vec<BigInt>],
    u: &[usize],
    t: &[usize],
) -> Result<bool> {
    let n = check_square(a)?;
    if check_square(b)? != n {
        return domain("A and B have different sizes");
    }
    if u.len() != t.len() {
        return domain("U and T have different lengths");
    }
    check_sequence(u, n)?;
    check_sequence(t, n)?;
    let mut d = vec![BigInt::zero(); n];
    for i in 0..n {
        for j in 0..n {
            let entry: BigInt = (0..n).map(|k| &a[i][k] * &b[k][j]).sum();
            if i == j {
                d[i] = entry;
            } else if !entry.is_zero() {
                return domain("A·B is not diagonal");
            }
        }
    }
    let uc = complement(u, n);
    let tc = complement(t, n);
    let scale: BigInt = uc.iter().map(|&i| d[i].clone()).product();
    let lhs = scale * det_bigint(&submatrix(a, u, t))?;
    let sign = sequence_sign(u, n) * sequence_sign(t, n);
    let rhs = BigInt::from(sign) * det_bigint(a)? * det_bigint(&submatrix(b, &tc, &uc))?;
    Ok(lhs == rhs)
}

/// [`verify_minor_identity_with`] using `B = adj(A)`.
pub fn verify_minor_identity(a: &[Vec<BigInt>], u: &[usize], t: &[usize]) -> Result<bool> {
    let b = adjugate(a)?;
    verify_minor_identity_with(a, &b, u, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_matches_hand_values() {
        assert_eq!(det_bigint(&mat(&[&[2, 1], &[7, 4]])).unwrap(), BigInt::from(1));
        assert_eq!(
            det_bigint(&mat(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]])).unwrap(),
            BigInt::from(-3)
        );
        assert_eq!(det_bigint(&mat(&[&[1, 2], &[2, 4]])).unwrap(), BigInt::from(0));
    }

    #[test]
    fn identity_on_identity_matrix() {
        let a = mat(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(verify_minor_identity(&a, &[2, 0], &[2, 0]).unwrap());
        assert!(verify_minor_identity(&a, &[1, 3], &[3, 1]).unwrap());
    }

    #[test]
    fn identity_on_permutation_matrix() {
        let a = mat(&[&[0, 1, 0, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 0, 1, 0]]);
        for u in [[0usize, 1], [2, 3], [3, 0]] {
            for t in [[0usize, 1], [1, 3], [2, 0]] {
                assert!(verify_minor_identity(&a, &u, &t).unwrap());
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        assert!(verify_minor_identity(&a, &[0, 0], &[0, 1]).is_err());
        assert!(verify_minor_identity(&mat(&[&[1, 2]]), &[0], &[0]).is_err());
    }
}
