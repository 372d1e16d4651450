//! Helpers shared by the integration suites.

#![allow(dead_code)]

use openbook::{enumerate, OpenBook, SearchConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Laplace-expansion determinant, independent of the elimination-based
/// arithmetic in the library under test. The sizes used here (n <= 5,
/// entries within [-9, 9]) keep every intermediate far inside `i128`.
pub fn det_oracle(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    assert!(rows.iter().all(|row| row.len() == n), "square input");
    let m: Vec<Vec<i128>> = rows
        .iter()
        .map(|row| row.iter().map(|&x| i128::from(x)).collect())
        .collect();
    det_rec(&m)
}

fn det_rec(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => {
            let mut acc = 0i128;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * m[0][j] * det_rec(&minor);
            }
            acc
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every canonical open book within the given bounds, in stream order.
pub fn enumerated_pool(max_boundary: u32, max_total_exponent: u64) -> Vec<OpenBook> {
    let config = SearchConfig::new(max_boundary, max_total_exponent).expect("valid bounds");
    enumerate(&config).collect()
}

#[cfg(test)]
mod tests {
    use super::det_oracle;

    #[test]
    fn det_oracle_small_cases() {
        assert_eq!(det_oracle(&[]), 1);
        assert_eq!(det_oracle(&[vec![7]]), 7);
        assert_eq!(det_oracle(&[vec![1, 2], vec![3, 4]]), -2);
        assert_eq!(
            det_oracle(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]),
            30
        );
        // Repeated row: singular.
        assert_eq!(
            det_oracle(&[vec![1, 2, 3], vec![1, 2, 3], vec![4, 5, 6]]),
            0
        );
        // Vandermonde on 1, 2, 3, 4: product of differences = 12.
        let vandermonde: Vec<Vec<i64>> = (1..=4)
            .map(|x: i64| (0..4).map(|k| x.pow(k)).collect())
            .collect();
        assert_eq!(det_oracle(&vandermonde), 12);
    }
}
