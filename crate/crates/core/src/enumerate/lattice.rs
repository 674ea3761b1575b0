//! Small integer lattice helpers.

use num_integer::Integer;

/// Column-reduces `rows` (k x r) by unimodular column operations and returns
/// `(rank, U)` where the last `r - rank` columns of `U` span the integer
/// kernel `{ x in Z^r : rows * x = 0 }`.
fn column_reduce(rows: &[Vec<i64>], r: usize) -> (usize, Vec<Vec<i128>>) {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..r)
        .map(|i| (0..r).map(|j| i128::from(i == j)).collect())
        .collect();
    let swap_cols = |m: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };
    // column j <- column j - f * column p
    let sub_col = |m: &mut Vec<Vec<i128>>, j: usize, p: usize, f: i128| {
        for row in m.iter_mut() {
            row[j] -= f * row[p];
        }
    };
    let mut pivot = 0;
    for i in 0..a.len() {
        if pivot == r {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (pivot..r).filter(|&j| a[i][j] != 0).collect();
            let Some(&best) = nonzero.iter().min_by_key(|&&j| a[i][j].abs()) else {
                break;
            };
            swap_cols(&mut a, pivot, best);
            swap_cols(&mut u, pivot, best);
            if nonzero.len() == 1 {
                pivot += 1;
                break;
            }
            for j in pivot + 1..r {
                let f = Integer::div_floor(&a[i][j], &a[i][pivot]);
                if f != 0 {
                    sub_col(&mut a, j, pivot, f);
                    sub_col(&mut u, j, pivot, f);
                }
            }
        }
    }
    (pivot, u)
}

pub fn rank(rows: &[Vec<i64>], r: usize) -> usize {
    column_reduce(rows, r).0
}

/// A lattice basis of `{ a in Z^r : a . v = 0 for all v in dirs }`.
pub fn annihilator(dirs: &[Vec<i64>], r: usize) -> Vec<Vec<i64>> {
    let (rank, u) = column_reduce(dirs, r);
    (rank..r)
        .map(|j| (0..r).map(|i| u[i][j] as i64).collect())
        .collect()
}

pub fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0i64, |g, x| g.gcd(x)) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(m: &[Vec<i64>]) -> i64 {
        match m.len() {
            1 => m[0][0],
            n => (0..n)
                .map(|c| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| *x).collect())
                        .collect();
                    let sign = if c % 2 == 0 { 1 } else { -1 };
                    sign * m[0][c] * det(&minor)
                })
                .sum(),
        }
    }

    #[test]
    fn kernel_of_a_line_in_space() {
        let dirs = vec![vec![2, 3, 5]];
        let ann = annihilator(&dirs, 3);
        assert_eq!(ann.len(), 2);
        for a in &ann {
            assert_eq!(a.iter().zip(&dirs[0]).map(|(x, y)| x * y).sum::<i64>(), 0);
        }
        // Saturated: together with a vector of content 1 along the line's
        // dual it completes to a unimodular matrix.
        let mut m = ann.clone();
        m.push(vec![-1, 1, 0]);
        assert_eq!(det(&m).abs(), 1);
    }

    #[test]
    fn empty_and_full() {
        assert_eq!(annihilator(&[], 2), vec![vec![1, 0], vec![0, 1]]);
        assert!(annihilator(&[vec![1, 0], vec![0, 1]], 2).is_empty());
        assert_eq!(rank(&[vec![1, 1], vec![2, 2]], 2), 1);
        assert!(is_primitive(&[2, 3]));
        assert!(!is_primitive(&[2, 4]));
    }

    #[test]
    fn kernels_are_saturated() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let r = rng.random_range(2..=4);
            let k = rng.random_range(0..r);
            let dirs: Vec<Vec<i64>> = (0..k).map(|_| (0..r).map(|_| rng.random_range(-6..=6)).collect()).collect();
            let ann = annihilator(&dirs, r);
            assert_eq!(ann.len(), r - rank(&dirs, r));
            for a in &ann {
                for d in &dirs {
                    assert_eq!(a.iter().zip(d).map(|(x, y)| x * y).sum::<i64>(), 0);
                }
            }
            // Saturation: every kernel vector in a small box is an integer
            // combination, checked via the index of the lattice (gcd of the
            // maximal minors is 1).
            if !ann.is_empty() && ann.len() < r {
                let rows = ann.len();
                let mut g = 0i64;
                let cols: Vec<usize> = (0..r).collect();
                for subset in subsets(&cols, rows) {
                    let m: Vec<Vec<i64>> = ann.iter().map(|a| subset.iter().map(|&c| a[c]).collect()).collect();
                    g = g.gcd(&det(&m));
                }
                assert_eq!(g, 1, "{dirs:?} -> {ann:?}");
            }
        }
    }

    fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if items.len() < k {
            return vec![];
        }
        let mut out: Vec<Vec<usize>> = subsets(&items[1..], k - 1)
            .into_iter()
            .map(|mut s| {
                s.insert(0, items[0]);
                s
            })
            .collect();
        out.extend(subsets(&items[1..], k));
        out
    }
}
