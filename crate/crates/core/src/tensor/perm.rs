use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, …, n-1}`; `images[i]` is where `i` goes.
///
/// Acting on a tensor word, the factor in position `i` moves to position `images[i]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Shape(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// One-line notation with 1-based values, e.g. `[2, 3, 1]`.
    pub fn from_one_line(line: &[usize]) -> Result<Self> {
        if line.iter().any(|&v| v == 0) {
            return Err(Error::Shape("one-line notation is 1-based".into()));
        }
        Self::from_images(line.iter().map(|&v| v - 1).collect())
    }

    /// Product of 1-based cycles, e.g. `&[&[1, 3], &[2, 4]]` for (13)(24).
    /// The rightmost cycle acts first.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Permutation::identity(n);
        for c in cycles.iter().rev() {
            if (1..c.len()).any(|a| c[..a].contains(&c[a])) {
                return Err(Error::Shape(format!("cycle {c:?} repeats a letter")));
            }
            let mut images: Vec<usize> = (0..n).collect();
            for (a, &x) in c.iter().enumerate() {
                let y = c[(a + 1) % c.len()];
                if x == 0 || y == 0 || x > n || y > n {
                    return Err(Error::Shape(format!("cycle {c:?} out of range for S_{n}")));
                }
                images[x - 1] = y - 1;
            }
            let cyc = Permutation::from_images(images)?;
            p = cyc.compose(&p);
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different size"
        );
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// True for odd permutations.
    pub fn is_odd(&self) -> bool {
        let mut odd = false;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.images[i] > self.images[j] {
                    odd = !odd;
                }
            }
        }
        odd
    }

    /// `self ⊕ id_k`, acting on `n + k` letters.
    pub fn extend(&self, k: usize) -> Permutation {
        let n = self.len();
        let mut images = self.images.clone();
        images.extend(n..n + k);
        Permutation { images }
    }

    /// `id_k ⊕ self`.
    pub fn shift(&self, k: usize) -> Permutation {
        let mut images: Vec<usize> = (0..k).collect();
        images.extend(self.images.iter().map(|&j| j + k));
        Permutation { images }
    }

    /// All permutations of `n` letters in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| cur[i] < cur[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&j| j + 1).collect()
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut c = vec![start + 1];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                c.push(x + 1);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            let sep = if self.len() > 9 { "," } else { "" };
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(sep))?;
        }
        Ok(())
    }
}

/// Koszul sign of moving factors of the given degrees by `sigma`: one factor of
/// `(-1)^{|v_i||v_j|}` for every pair whose order is reversed. True means negative.
pub fn koszul_sign(sigma: &Permutation, degrees: &[i32]) -> bool {
    debug_assert_eq!(sigma.len(), degrees.len());
    let mut neg = false;
    let n = degrees.len();
    for i in 0..n {
        if degrees[i] % 2 == 0 {
            continue;
        }
        for j in i + 1..n {
            if degrees[j] % 2 != 0 && sigma.images[i] > sigma.images[j] {
                neg = !neg;
            }
        }
    }
    neg
}
