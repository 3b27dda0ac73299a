use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Diagonal of the Smith normal form: min(rows, cols) nonnegative entries
/// d_1 | d_2 | …, zeros last.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry in the remaining block as pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else {
            diag.extend(std::iter::repeat_n(BigInt::zero(), rows.min(cols) - t));
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let (mi, mj) = std::iter::once((t, t))
                .chain((t + 1..rows).map(|i| (i, t)))
                .chain((t + 1..cols).map(|j| (t, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs())
                .unwrap();
            a.swap(t, mi);
            for row in a.iter_mut() {
                row.swap(t, mj);
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(smith_normal_form(&mat(&[&[2, 0], &[0, 1]])), ints(&[1, 2]));
        assert_eq!(smith_normal_form(&mat(&[&[2, 1], &[1, 2]])), ints(&[1, 3]));
        assert_eq!(
            smith_normal_form(&mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
            ints(&[1, 1, 1])
        );
        assert_eq!(smith_normal_form(&mat(&[&[2, 0], &[0, 3]])), ints(&[1, 6]));
        assert_eq!(smith_normal_form(&mat(&[&[4, 2], &[2, 1]])), ints(&[1, 0]));
        assert_eq!(smith_normal_form(&mat(&[&[6, 4, 0]])), ints(&[2]));
        assert!(smith_normal_form(&[]).is_empty());
    }

    fn det(m: &[Vec<BigInt>]) -> BigInt {
        // Laplace expansion; only used on tiny matrices
        let n = m.len();
        if n == 0 {
            return BigInt::from(1);
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let s = if j % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                s * &m[0][j] * det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn divisibility_and_unimodular_invariance(
            entries in prop::collection::vec(-6i64..7, 9),
            ops in prop::collection::vec((0usize..3, 0usize..3, -3i64..4, any::<bool>()), 0..12),
        ) {
            let m: Vec<Vec<BigInt>> = entries.chunks(3).map(ints).collect();
            let d = smith_normal_form(&m);
            for w in d.windows(2) {
                prop_assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
            }
            let prod: BigInt = d.iter().product();
            prop_assert_eq!(prod, det(&m).abs());
            let mut n = m.clone();
            for (i, j, k, row) in ops {
                if i == j {
                    continue;
                }
                if row {
                    for c in 0..3 {
                        let v = &n[j][c] * k;
                        n[i][c] += v;
                    }
                } else {
                    for r in n.iter_mut() {
                        let v = &r[j] * k;
                        r[i] += v;
                    }
                }
            }
            prop_assert_eq!(smith_normal_form(&n), d);
        }
    }
}
