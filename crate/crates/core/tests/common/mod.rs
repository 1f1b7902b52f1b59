//! Betti numbers from a deliberately naive route: faces enumerated by brute
//! force from the facet lists, dense boundary matrices, plain Gaussian
//! elimination over ℚ and over GF(p). Nothing here calls into the library's
//! linear algebra.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;
use rainbow_core::FieldSpec;

type Faces = Vec<Vec<Vec<String>>>;

fn all_faces(facets: &[Vec<String>]) -> Faces {
    let mut by_dim: BTreeMap<usize, BTreeSet<Vec<String>>> = BTreeMap::new();
    for f in facets {
        let mut f = f.clone();
        f.sort();
        for mask in 1u32..(1 << f.len()) {
            let s: Vec<String> = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i].clone()).collect();
            by_dim.entry(s.len() - 1).or_default().insert(s);
        }
    }
    let top = by_dim.keys().max().copied().map_or(0, |d| d + 1);
    (0..top).map(|d| by_dim.remove(&d).unwrap_or_default().into_iter().collect()).collect()
}

pub fn rank_q(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let factor = &m[r][c] / &pivot;
                for j in c..cols {
                    let sub = &factor * &m[rank][j];
                    m[r][j] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_mod(mut m: Vec<Vec<i64>>, p: i64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let pow = |mut b: i64, mut e: i64| {
        let mut acc = 1;
        b = b.rem_euclid(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x = x.rem_euclid(p);
        }
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow(m[rank][c], p - 2);
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % p;
                for j in c..cols {
                    m[r][j] = (m[r][j] - f * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Integer boundary from (d)-faces to (d-1)-faces; d = 0 gives the
/// augmentation row.
fn dense_boundary(faces: &Faces, d: usize) -> Vec<Vec<i64>> {
    if d == 0 {
        return vec![vec![1; faces[0].len()]];
    }
    let index: BTreeMap<&Vec<String>, usize> = faces[d - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = vec![vec![0i64; faces[d].len()]; faces[d - 1].len()];
    for (j, s) in faces[d].iter().enumerate() {
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            m[index[&face]][j] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Reduced Betti numbers from degree -1 upward.
pub fn oracle_betti(facets: &[Vec<String>], field: FieldSpec) -> Vec<usize> {
    let faces = all_faces(facets);
    if faces.is_empty() {
        return vec![1];
    }
    let rank = |m: Vec<Vec<i64>>| match field {
        FieldSpec::Rationals => rank_q(
            m.into_iter()
                .map(|r| r.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
                .collect(),
        ),
        FieldSpec::Prime(p) => rank_mod(m, p as i64),
    };
    let ranks: Vec<usize> = (0..faces.len()).map(|d| rank(dense_boundary(&faces, d))).collect();
    // chain group sizes from degree -1
    let mut sizes = vec![1];
    sizes.extend(faces.iter().map(Vec::len));
    (0..sizes.len())
        .map(|i| {
            let out = if i == 0 { 0 } else { ranks[i - 1] };
            let incoming = ranks.get(i).copied().unwrap_or(0);
            sizes[i] - out - incoming
        })
        .collect()
}

