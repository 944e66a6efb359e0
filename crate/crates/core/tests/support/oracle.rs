//! Brute-force homotopy transfer: shuffles filtered out of all permutations,
//! Koszul signs by bubble sort, every `ι_k` recomputed from scratch.

#![allow(dead_code)]

use lformal_core::graded::Vector;
use lformal_core::scalar::{half, int, Scalar};
use lformal_core::{DgLieAlgebra, Splitting};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn shuffles(k: usize, p: usize) -> Vec<Vec<usize>> {
    permutations(p)
        .into_iter()
        .filter(|s| s[..k].windows(2).all(|w| w[0] < w[1]) && s[k..].windows(2).all(|w| w[0] < w[1]))
        .collect()
}

/// `v_{σ(1)}∧…∧v_{σ(n)} = χ v_1∧…∧v_n`, by sorting and recording each
/// adjacent transposition.
pub fn koszul(sigma: &[usize], degrees: &[i32]) -> Scalar {
    let mut seq: Vec<usize> = sigma.to_vec();
    let mut sign = int(1);
    loop {
        let mut swapped = false;
        for i in 0..seq.len().saturating_sub(1) {
            if seq[i] > seq[i + 1] {
                let (a, b) = (degrees[seq[i]], degrees[seq[i + 1]]);
                if (a * b).rem_euclid(2) == 0 {
                    sign = -sign;
                }
                seq.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            return sign;
        }
    }
}

pub struct Oracle<'a> {
    pub algebra: &'a DgLieAlgebra,
    pub splitting: &'a Splitting,
}

impl Oracle<'_> {
    fn degree(&self, i: usize) -> i32 {
        self.splitting.cohomology_space().degree(i)
    }

    /// `½ Σ_k Σ_σ χ(σ)(−1)^{α(σ)} [ι_k(…), ι_{p−k}(…)]` on basis indices.
    fn inner(&self, tuple: &[usize]) -> Vector {
        let p = tuple.len();
        let degs: Vec<i32> = tuple.iter().map(|&i| self.degree(i)).collect();
        let mut acc = Vector::zero();
        for k in 1..p {
            for sigma in shuffles(k, p) {
                let head: Vec<usize> = sigma[..k].iter().map(|&i| tuple[i]).collect();
                let tail: Vec<usize> = sigma[k..].iter().map(|&i| tuple[i]).collect();
                let head_deg: i64 = head.iter().map(|&i| self.degree(i) as i64).sum();
                let alpha = (1 - p as i64 + k as i64) * (k as i64 + head_deg);
                let mut c = koszul(&sigma, &degs);
                if alpha.rem_euclid(2) == 1 {
                    c = -c;
                }
                let br = self.algebra.bracket(&self.iota(&head), &self.iota(&tail));
                acc.add_scaled(&br, &c);
            }
        }
        acc.scaled(&half())
    }

    pub fn iota(&self, tuple: &[usize]) -> Vector {
        if tuple.len() == 1 {
            return self.splitting.iota().column(tuple[0]).clone();
        }
        self.splitting.h().apply(&self.inner(tuple))
    }

    pub fn bracket(&self, tuple: &[usize]) -> Vector {
        if tuple.len() == 1 {
            return Vector::zero();
        }
        self.splitting.pi().apply(&self.inner(tuple))
    }
}

/// Non-decreasing tuples over `0..n`.
pub fn sorted_tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, p, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, p, 0, &mut Vec::new(), &mut out);
    out
}
