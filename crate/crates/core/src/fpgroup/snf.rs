//! Smith normal form over the integers and abelianization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Presentation;

/// Invariant factors `d_1 | d_2 | … | d_r` of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

pub fn smith_normal_form(matrix: &[Vec<i64>]) -> SmithForm {
    smith_normal_form_big(
        matrix
            .iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect(),
    )
}

/// Rows may have differing lengths only if all are empty; missing entries
/// are not padded.
pub fn smith_normal_form_big(mut a: Vec<Vec<BigInt>>) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t, rows, t, cols) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    sub_row(&mut a, i, t, &q);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    sub_col(&mut a, j, t, &q);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // Move the smallest remainder in row/column t to the pivot.
                let (mut bi, mut bj) = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[bi][bj].abs() {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[bi][bj].abs() {
                        (bi, bj) = (t, j);
                    }
                }
                a.swap(t, bi);
                swap_cols(&mut a, t, bj);
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    sub_row(&mut a, t, i, &-one);
                }
                None => break,
            }
        }
        t += 1;
    }
    let mut factors: Vec<BigInt> = (0..t).map(|i| a[i][i].abs()).collect();
    factors.sort();
    SmithForm { rank: t, factors }
}

fn min_abs_entry(a: &[Vec<BigInt>], r0: usize, r1: usize, c0: usize, c1: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().take(r1).skip(r0) {
        for (j, v) in row.iter().enumerate().take(c1).skip(c0) {
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], j: usize, k: usize) {
    if j != k {
        for row in a.iter_mut() {
            row.swap(j, k);
        }
    }
}

/// row_i -= q · row_t
fn sub_row(a: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    let src = a[t].clone();
    for (x, s) in a[i].iter_mut().zip(src) {
        *x -= q * s;
    }
}

/// col_j -= q · col_t
fn sub_col(a: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let s = row[t].clone();
        row[j] -= q * s;
    }
}

/// `Z^free_rank ⊕ Z_{d_1} ⊕ … ⊕ Z_{d_m}` with `d_1 | … | d_m`, each ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn new(free_rank: usize, torsion: &[u64]) -> Self {
        AbelianInvariants {
            free_rank,
            torsion: torsion.iter().map(|&d| BigInt::from(d)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    /// `Z^3 + Z_2`, `Z_6`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Abelianization from the relator-by-generator exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let gens = p.generator_count();
    let matrix: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_vector(gens)).collect();
    let snf = smith_normal_form(&matrix);
    AbelianInvariants {
        free_rank: gens - snf.rank,
        torsion: snf.factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn factors(m: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(m)
            .factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    fn det(m: &[Vec<i64>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0i128;
        for c in 0..n {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            total += sign * i128::from(m[0][c]) * det(&minor);
        }
        total
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    /// Invariant factors via determinantal divisors: D_k = gcd of k×k
    /// minors and d_k = D_k / D_{k-1}.
    fn factors_by_minors(m: &[Vec<i64>]) -> Vec<i64> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut out = Vec::new();
        let mut prev = 1i128;
        for k in 1..=rows.min(cols) {
            let mut g = 0i128;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let minor: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                    g = g.gcd(&det(&minor));
                }
            }
            if g == 0 {
                break;
            }
            out.push((g / prev) as i64);
            prev = g;
        }
        out
    }

    #[test]
    fn small_examples() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        let zero = smith_normal_form(&[vec![0, 0]]);
        assert_eq!((zero.factors.len(), zero.rank), (0, 0));
        assert_eq!(factors(&[vec![1, -1]]), vec![1]);
        assert_eq!(
            factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]),
            vec![2, 6, 12]
        );
        assert_eq!(smith_normal_form(&[]).rank, 0);
    }

    #[test]
    fn agrees_with_determinantal_divisors_and_is_shuffle_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let mut m: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            let f = factors(&m);
            assert!(f.windows(2).all(|w| w[1] % w[0] == 0), "{m:?} -> {f:?}");
            assert_eq!(f, factors_by_minors(&m), "{m:?}");
            // shuffle rows and columns
            for i in (1..rows).rev() {
                m.swap(i, rng.gen_range(0..=i));
            }
            let perm: Vec<usize> = {
                let mut p: Vec<usize> = (0..cols).collect();
                for i in (1..cols).rev() {
                    p.swap(i, rng.gen_range(0..=i));
                }
                p
            };
            let shuffled: Vec<Vec<i64>> = m.iter().map(|row| perm.iter().map(|&j| row[j]).collect()).collect();
            assert_eq!(factors(&shuffled), f);
        }
    }

    #[test]
    fn large_entries_stay_exact() {
        let big = i64::MAX / 3;
        let f = smith_normal_form(&[vec![big, big - 1], vec![big - 1, big]]);
        let expect = BigInt::from(big).pow(2) - BigInt::from(big - 1).pow(2);
        assert_eq!(f.factors, vec![BigInt::one(), expect]);
    }

    #[test]
    fn abelian_invariants_display() {
        assert_eq!(AbelianInvariants::new(3, &[2]).to_string(), "Z^3 + Z_2");
        assert_eq!(AbelianInvariants::new(0, &[6]).to_string(), "Z_6");
        assert_eq!(AbelianInvariants::new(0, &[]).to_string(), "0");
    }

    #[test]
    fn abelianizes_small_presentations() {
        let p: Presentation = "gens: a b\nrel: a b a' b'".parse().unwrap();
        assert_eq!(abelianization(&p), AbelianInvariants::new(2, &[]));
        let q: Presentation = "gens: a b\nrel: a a\nrel: b b b b b b".parse().unwrap();
        assert_eq!(abelianization(&q), AbelianInvariants::new(0, &[2, 6]));
    }
}
