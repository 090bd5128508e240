#![allow(dead_code)]

use std::path::PathBuf;

use hyperarr::arrangement::{parse_arrangement, Arrangement};
use hyperarr::Rational;

pub fn fixture(name: &str) -> Arrangement {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    parse_arrangement(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Rank of integer rows by fraction-free elimination.
fn int_rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let (a, b) = (rows[rank][c], rows[r][c]);
                for k in 0..cols {
                    rows[r][k] = rows[r][k] * a - rows[rank][k] * b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Whitney's formula `chi(t) = sum over central subsets S of (-1)^|S| t^(n - rank S)`,
/// as coefficients indexed by degree. Integer data only.
pub fn whitney_charpoly(dim: usize, data: &[(Vec<i64>, i64)]) -> Vec<i64> {
    let mut coeffs = vec![0i64; dim + 1];
    for mask in 0u32..(1 << data.len()) {
        let chosen: Vec<&(Vec<i64>, i64)> = (0..data.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &data[i])
            .collect();
        let linear: Vec<Vec<i128>> = chosen
            .iter()
            .map(|(a, _)| a.iter().map(|&x| x as i128).collect())
            .collect();
        let augmented: Vec<Vec<i128>> = chosen
            .iter()
            .map(|(a, c)| a.iter().map(|&x| x as i128).chain([-(*c as i128)]).collect())
            .collect();
        let r = if chosen.is_empty() { 0 } else { int_rank(linear) };
        if !chosen.is_empty() && int_rank(augmented) != r {
            continue;
        }
        let sign = if chosen.len() % 2 == 0 { 1 } else { -1 };
        coeffs[dim - r] += sign;
    }
    coeffs
}

pub fn eval_int_poly(coeffs: &[i64], t: i64) -> i64 {
    coeffs.iter().rev().fold(0, |acc, c| acc * t + c)
}
