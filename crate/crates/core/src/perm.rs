//! Permutations of `0..n` and their signs.

use std::fmt;

/// A permutation of `0..n`, stored as its list of images.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Validates that `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self(images))
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a, b);
        p
    }

    /// The face cycle `∂_i` on `n` slots:
    /// `(d_1..d_n) ↦ (d_1..d_{i-1}, d_n, d_i..d_{n-1})`, as the map `k ↦ σ(k)`
    /// with `σ(k) = k` below `i`, `σ(i) = n-1` and `σ(k) = k-1` above `i`.
    pub fn face_cycle(n: usize, i: usize) -> Self {
        assert!(i < n, "face index {i} out of range for {n} slots");
        Self(
            (0..n)
                .map(|k| match k.cmp(&i) {
                    std::cmp::Ordering::Less => k,
                    std::cmp::Ordering::Equal => n - 1,
                    std::cmp::Ordering::Greater => k - 1,
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v] = k;
        }
        Self(inv)
    }

    /// `self ∘ other`, i.e. `k ↦ self(other(k))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Self(other.0.iter().map(|&k| self.0[k]).collect())
    }

    /// `+1` for even permutations, `-1` for odd ones (cycle decomposition).
    pub fn sign(&self) -> i32 {
        let mut seen = vec![false; self.0.len()];
        let mut sign = 1;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.0[k];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// `τ_i^σ`: the images of `σ` with position `σ⁻¹(i)` deleted, values
    /// above `i` shifted down by one so the result permutes `0..n-1`.
    pub fn delete_value(&self, i: usize) -> Self {
        Self(
            self.0
                .iter()
                .filter(|&&v| v != i)
                .map(|&v| if v > i { v - 1 } else { v })
                .collect(),
        )
    }

    /// Every permutation of `0..n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation(current.clone()));
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(n, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.0)
    }
}

/// Sign of the permutation sorting `seq`, or 0 when `seq` repeats a value.
pub fn sort_sign(seq: &[usize]) -> i32 {
    let mut sign = 1;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            match seq[a].cmp(&seq[b]) {
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

/// Strictly increasing `n`-subsets of `0..m`, lexicographically.
pub fn increasing_tuples(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(start: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in start..m {
            cur.push(v);
            rec(v + 1, m, n, cur, out);
            cur.pop();
        }
    }
    rec(0, m, n, &mut cur, &mut out);
    out
}
