//! Koszul signs and shuffle enumeration.
//!
//! Permutations are 0-based index arrays: `sigma[i]` is the image of `i`.

use crate::error::{Error, Result};
use crate::scalar::{is_odd, Sign};

/// The antisymmetric Koszul sign `χ(σ; v_1, …, v_n)`, defined by
/// `v_{σ(1)} ∧ ⋯ ∧ v_{σ(n)} = χ · v_1 ∧ ⋯ ∧ v_n`.
///
/// `degrees[i]` is the degree of `v_{i+1}`.
pub fn koszul_sign(sigma: &[usize], degrees: &[i32]) -> Result<Sign> {
    if sigma.len() != degrees.len() {
        return Err(Error::LengthMismatch { expected: degrees.len(), got: sigma.len() });
    }
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s >= sigma.len() || std::mem::replace(&mut seen[s], true) {
            return Err(Error::Parse(format!("{sigma:?} is not a permutation")));
        }
    }
    // Bubble-sort the word v_{σ(1)} … v_{σ(n)} back to v_1 … v_n.
    let mut word = sigma.to_vec();
    let mut sign = Sign::Plus;
    let n = word.len();
    for pass in 0..n {
        let mut swapped = false;
        for j in 0..n - 1 - pass {
            if word[j] > word[j + 1] {
                sign = sign * Sign::antisymmetric_swap(degrees[word[j]], degrees[word[j + 1]]);
                word.swap(j, j + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    Ok(sign)
}

/// Sorts a tuple of basis indices into non-decreasing order and returns the
/// sign `s` with `F(tuple) = s · F(sorted)` for every graded skew-symmetric `F`.
///
/// Returns `None` when the tuple repeats an even-degree element, in which
/// case every graded skew-symmetric map vanishes on it.
pub fn canonicalize(tuple: &[usize], degree_of: impl Fn(usize) -> i32) -> Option<(Sign, Vec<usize>)> {
    let mut word = tuple.to_vec();
    let mut sign = Sign::Plus;
    let n = word.len();
    // insertion sort; each adjacent swap contributes its Koszul factor
    for i in 1..n {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            sign = sign * Sign::antisymmetric_swap(degree_of(word[j - 1]), degree_of(word[j]));
            word.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in word.windows(2) {
        if w[0] == w[1] && !is_odd(degree_of(w[0])) {
            return None;
        }
    }
    Some((sign, word))
}

/// Lazily enumerates the `(k, m)`-shuffles, permutations of `k + m` elements
/// increasing on the first `k` and on the last `m` positions, in
/// lexicographic order of the first block.
#[derive(Clone, Debug)]
pub struct Shuffles {
    k: usize,
    n: usize,
    current: Option<Vec<usize>>,
}

impl Shuffles {
    pub fn new(k: usize, m: usize) -> Self {
        Shuffles { k, n: k + m, current: Some((0..k).collect()) }
    }
}

impl Iterator for Shuffles {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let head = self.current.take()?;
        let mut sigma = head.clone();
        let mut in_head = vec![false; self.n];
        for &h in &head {
            in_head[h] = true;
        }
        sigma.extend((0..self.n).filter(|&i| !in_head[i]));

        // advance the k-combination
        let k = self.k;
        let mut next = head;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(sigma);
            }
        }
        Some(sigma)
    }
}

pub fn enumerate_shuffles(k: usize, m: usize) -> Vec<Vec<usize>> {
    Shuffles::new(k, m).collect()
}

/// The set `S(j, m, 1)`: permutations of `j + m + 1` elements increasing on
/// the first `j` and on the next `m` positions, the last position free.
pub fn enumerate_shuffles_with_tail(j: usize, m: usize) -> Vec<Vec<usize>> {
    let n = j + m + 1;
    let mut out = Vec::new();
    for last in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&i| i != last).collect();
        for s in Shuffles::new(j, m) {
            let mut sigma: Vec<usize> = s.iter().map(|&i| rest[i]).collect();
            sigma.push(last);
            out.push(sigma);
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All non-decreasing tuples of length `arity` drawn from `indices`
/// (assumed ascending) that do not repeat an even-degree element.
pub fn canonical_tuples(indices: &[usize], arity: usize, degree_of: &dyn Fn(usize) -> i32) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(arity);
    fn rec(
        indices: &[usize],
        start: usize,
        arity: usize,
        degree_of: &dyn Fn(usize) -> i32,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == arity {
            out.push(cur.clone());
            return;
        }
        for pos in start..indices.len() {
            let i = indices[pos];
            let next = if is_odd(degree_of(i)) { pos } else { pos + 1 };
            cur.push(i);
            rec(indices, next, arity, degree_of, cur, out);
            cur.pop();
        }
    }
    rec(indices, 0, arity, degree_of, &mut cur, &mut out);
    out
}
