//! Shuffles, straight shuffles, and the straight-shuffle extension of a map.
//!
//! A straight shuffle `σ` of a block profile `p̄` carries a decoration
//! `(l̄, q̄, r̄)` with `lᵢ + qᵢ + rᵢ = pᵢ`. It sends the middle `qᵢ` letters of every
//! block, in order, to one contiguous middle segment; the `lᵢ` leading letters of
//! all blocks go in front of it and the `rᵢ` trailing letters behind it. Within the
//! front and back groups the letters of each block keep their relative order, while
//! letters of different blocks may interleave.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::tensor::{koszul_sign, parity, Basis, Element, MultiMap, Permutation, Rational};

/// Block sizes `p̄ = (p₁,…,p_k)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockProfile(Vec<usize>);

impl BlockProfile {
    pub fn new(p: Vec<usize>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::Shape(
                "a block profile needs at least one block".into(),
            ));
        }
        if p.contains(&0) {
            return Err(Error::Shape(format!("{p:?} has an empty block")));
        }
        Ok(BlockProfile(p))
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `Pᵢ = p₁+…+p_{i-1}` for every block (0-based block index).
    pub fn offsets(&self) -> Vec<usize> {
        offsets(&self.0)
    }
}

pub(crate) fn offsets(p: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    p.iter()
        .map(|&x| {
            let o = acc;
            acc += x;
            o
        })
        .collect()
}

/// All `(j,m)`-shuffles: permutations of `j+m` letters increasing on the first `j`
/// letters and on the last `m`. Ordered by one-line notation.
pub fn enumerate_shuffles(j: usize, m: usize) -> Vec<Permutation> {
    let n = j + m;
    let mut out = Vec::new();
    // choose the image set of the first j letters
    let mut chosen = Vec::with_capacity(j);
    fn rec(start: usize, n: usize, j: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == j {
            out.push(chosen.clone());
            return;
        }
        for x in start..n {
            if n - x < j - chosen.len() {
                break;
            }
            chosen.push(x);
            rec(x + 1, n, j, chosen, out);
            chosen.pop();
        }
    }
    let mut sets = Vec::new();
    rec(0, n, j, &mut chosen, &mut sets);
    for set in sets {
        let rest: Vec<usize> = (0..n).filter(|x| !set.contains(x)).collect();
        let images: Vec<usize> = set.into_iter().chain(rest).collect();
        out.push(Permutation::from_images(images).expect("shuffle is a bijection"));
    }
    out.sort();
    out
}

/// A permutation with its straight-shuffle decoration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedShuffle {
    pub l: Vec<usize>,
    pub sigma: Permutation,
    pub q: Vec<usize>,
    pub r: Vec<usize>,
}

impl DecoratedShuffle {
    /// Number of letters in front of the middle segment.
    pub fn front(&self) -> usize {
        self.l.iter().sum()
    }

    pub fn middle(&self) -> usize {
        self.q.iter().sum()
    }

    pub fn back(&self) -> usize {
        self.r.iter().sum()
    }

    pub fn p(&self) -> Vec<usize> {
        (0..self.q.len())
            .map(|i| self.l[i] + self.q[i] + self.r[i])
            .collect()
    }
}

fn check_decoration(l: &[usize], q: &[usize], r: &[usize], p: &[usize]) -> Result<()> {
    let k = p.len();
    if l.len() != k || q.len() != k || r.len() != k {
        return Err(Error::Shape(
            "decoration tuples have different lengths".into(),
        ));
    }
    for i in 0..k {
        if q[i] == 0 {
            return Err(Error::Shape("middle parts must be nonempty".into()));
        }
        if l[i] + q[i] + r[i] != p[i] {
            return Err(Error::Shape(format!(
                "block {}: {} + {} + {} ≠ {}",
                i + 1,
                l[i],
                q[i],
                r[i],
                p[i]
            )));
        }
    }
    Ok(())
}

/// The interval condition alone: each middle part `(Pᵢ + lᵢ) + [1, qᵢ]` is sent in
/// order onto `Σl + (q₁+…+q_{i-1}) + [1, qᵢ]`.
pub fn satisfies_interval_condition(
    sigma: &Permutation,
    l: &[usize],
    q: &[usize],
    r: &[usize],
    p: &[usize],
) -> Result<bool> {
    check_decoration(l, q, r, p)?;
    let n: usize = p.iter().sum();
    if sigma.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: sigma.len(),
        });
    }
    let big_p = offsets(p);
    let front: usize = l.iter().sum();
    let mut mid = front;
    for i in 0..p.len() {
        for b in 0..q[i] {
            if sigma.image(big_p[i] + l[i] + b) != mid + b {
                return Ok(false);
            }
        }
        mid += q[i];
    }
    Ok(true)
}

/// Full membership test: the interval condition, plus every leading part lands in
/// the front group and every trailing part in the back group, each in order.
pub fn is_straight_shuffle(
    sigma: &Permutation,
    l: &[usize],
    q: &[usize],
    r: &[usize],
    p: &[usize],
) -> Result<bool> {
    if !satisfies_interval_condition(sigma, l, q, r, p)? {
        return Ok(false);
    }
    let big_p = offsets(p);
    let front: usize = l.iter().sum();
    let back_start = front + q.iter().sum::<usize>();
    for i in 0..p.len() {
        let lead: Vec<usize> = (0..l[i]).map(|a| sigma.image(big_p[i] + a)).collect();
        if lead.iter().any(|&x| x >= front) || lead.windows(2).any(|w| w[0] > w[1]) {
            return Ok(false);
        }
        let trail: Vec<usize> = (0..r[i])
            .map(|c| sigma.image(big_p[i] + l[i] + q[i] + c))
            .collect();
        if trail.iter().any(|&x| x < back_start) || trail.windows(2).any(|w| w[0] > w[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sequences of block labels with `counts[i]` copies of label `i`, in lexicographic order.
fn interleavings(counts: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = counts.iter().sum();
    let mut out = Vec::new();
    let mut left = counts.to_vec();
    let mut cur = Vec::with_capacity(total);
    fn rec(left: &mut [usize], total: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i);
                rec(left, total, cur, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    rec(&mut left, total, &mut cur, &mut out);
    out
}

/// All decorated straight shuffles for `q̄ ≤ p̄`, ordered by `l̄` and then by the
/// one-line notation of `σ`.
pub fn enumerate_straight_shuffles(q: &[usize], p: &[usize]) -> Result<Vec<DecoratedShuffle>> {
    if q.len() != p.len() || p.is_empty() {
        return Err(Error::Shape(
            "q̄ and p̄ must have the same positive length".into(),
        ));
    }
    if q.iter().zip(p).any(|(&a, &b)| a == 0 || a > b) {
        return Err(Error::Shape(format!("{q:?} ≤ {p:?} fails componentwise")));
    }
    let k = p.len();
    let n: usize = p.iter().sum();
    let big_p = offsets(p);
    let total_q: usize = q.iter().sum();
    let mut out = Vec::new();
    let slack: Vec<usize> = (0..k).map(|i| p[i] - q[i]).collect();
    let mut l = vec![0; k];
    loop {
        let r: Vec<usize> = (0..k).map(|i| slack[i] - l[i]).collect();
        let front: usize = l.iter().sum();
        let mut found = Vec::new();
        for lead in interleavings(&l) {
            for trail in interleavings(&r) {
                let mut images = vec![0; n];
                let mut seen = vec![0; k];
                for (pos, &i) in lead.iter().enumerate() {
                    images[big_p[i] + seen[i]] = pos;
                    seen[i] += 1;
                }
                let mut mid = front;
                for i in 0..k {
                    for b in 0..q[i] {
                        images[big_p[i] + l[i] + b] = mid + b;
                    }
                    mid += q[i];
                }
                let mut seen = vec![0; k];
                for (pos, &i) in trail.iter().enumerate() {
                    images[big_p[i] + l[i] + q[i] + seen[i]] = front + total_q + pos;
                    seen[i] += 1;
                }
                found.push(DecoratedShuffle {
                    l: l.clone(),
                    sigma: Permutation::from_images(images).expect("bijection by construction"),
                    q: q.to_vec(),
                    r: r.clone(),
                });
            }
        }
        found.sort_by(|a, b| a.sigma.images().cmp(b.sigma.images()));
        out.extend(found);
        // next decoration in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if l[i] < slack[i] {
                l[i] += 1;
                for x in l.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Readings of the middle-part sum in the explicit sign of the extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionExponent {
    /// `(q₁+…+q_k+1)(r₁+…+r_k)`.
    AllBlocks,
    /// `Σᵢ (q₁+…+qᵢ+1) rᵢ`.
    Cumulative,
    /// `Σᵢ (q_{i+1}+…+q_k+1) rᵢ`.
    Remaining,
}

impl Default for ExtensionExponent {
    fn default() -> Self {
        ExtensionExponent::AllBlocks
    }
}

/// Sign of `σ` times the explicit factor of the extension. True means negative.
/// The Koszul contributions depend on the inputs and are applied separately.
pub fn extension_sign(ds: &DecoratedShuffle, variant: ExtensionExponent) -> bool {
    let k = ds.q.len();
    let total_q: i64 = ds.q.iter().map(|&x| x as i64).sum();
    let total_r: i64 = ds.r.iter().map(|&x| x as i64).sum();
    let head: i64 = match variant {
        ExtensionExponent::AllBlocks => (total_q + 1) * total_r,
        ExtensionExponent::Cumulative => {
            let mut acc = 0;
            let mut s = 0;
            for i in 0..k {
                acc += ds.q[i] as i64;
                s += (acc + 1) * ds.r[i] as i64;
            }
            s
        }
        ExtensionExponent::Remaining => {
            let mut s = 0;
            for i in 0..k {
                let rest: i64 = ds.q[i + 1..].iter().map(|&x| x as i64).sum();
                s += (rest + 1) * ds.r[i] as i64;
            }
            s
        }
    };
    let tail: i64 = (0..k).map(|i| i as i64 * (ds.l[i] + ds.r[i]) as i64).sum();
    ds.sigma.is_odd() ^ parity(head + tail)
}

/// The straight-shuffle extension `m_{p̄/q̄}`: a map from `A^{⊗Σp}` to
/// `A^{⊗(Σl)} ⊗ A ⊗ A^{⊗(Σr)}`, summed over every decorated straight shuffle.
/// Its output arity varies with the decoration.
#[derive(Clone, Debug)]
pub struct StraightExtension {
    inner: MultiMap,
    q: Vec<usize>,
    p: Vec<usize>,
    shuffles: Vec<(DecoratedShuffle, bool)>,
}

pub fn straight_extension(m: &MultiMap, q: &[usize], p: &[usize]) -> Result<StraightExtension> {
    straight_extension_with(m, q, p, ExtensionExponent::default())
}

pub fn straight_extension_with(
    m: &MultiMap,
    q: &[usize],
    p: &[usize],
    variant: ExtensionExponent,
) -> Result<StraightExtension> {
    if m.arity() != q.iter().sum::<usize>() {
        return Err(Error::Shape(format!(
            "map of arity {} cannot have block shape {q:?}",
            m.arity()
        )));
    }
    let shuffles = enumerate_straight_shuffles(q, p)?
        .into_iter()
        .map(|ds| {
            let s = extension_sign(&ds, variant);
            (ds, s)
        })
        .collect();
    Ok(StraightExtension {
        inner: m.clone(),
        q: q.to_vec(),
        p: p.to_vec(),
        shuffles,
    })
}

impl StraightExtension {
    pub fn arity(&self) -> usize {
        self.p.iter().sum()
    }

    pub fn terms(&self) -> &[(DecoratedShuffle, bool)] {
        &self.shuffles
    }

    pub fn q(&self) -> &[usize] {
        &self.q
    }

    pub fn p(&self) -> &[usize] {
        &self.p
    }

    /// Evaluates on one basis word; terms of different output arity are returned
    /// grouped by the number of letters in front of the inner map.
    pub fn eval_word(&self, w: &[Basis]) -> Result<BTreeMap<(usize, usize), Element>> {
        if w.len() != self.arity() {
            return Err(Error::Arity {
                expected: self.arity(),
                got: w.len(),
            });
        }
        let mut out: BTreeMap<(usize, usize), Element> = BTreeMap::new();
        let degs: Vec<i32> = w.iter().map(|b| b.deg).collect();
        let odd_inner = parity(self.inner.degree() as i64);
        for (ds, neg) in &self.shuffles {
            let mut moved = w.to_vec();
            for (i, b) in w.iter().enumerate() {
                moved[ds.sigma.image(i)] = *b;
            }
            let (a, m) = (ds.front(), ds.middle());
            let front_deg: i64 = moved[..a].iter().map(|b| b.deg as i64).sum();
            let sign = neg ^ koszul_sign(&ds.sigma, &degs) ^ (odd_inner && parity(front_deg));
            let value = self.inner.eval_word(&moved[a..a + m])?;
            let head = Element::word(moved[..a].to_vec());
            let tail = Element::word(moved[a + m..].to_vec());
            let c = if sign {
                -Rational::one()
            } else {
                Rational::one()
            };
            let term = head.tensor(&value).tensor(&tail).scale(&c);
            out.entry((a, ds.back()))
                .or_default()
                .add_assign_scaled(&term, &Rational::one());
        }
        out.retain(|_, e| !e.is_zero());
        Ok(out)
    }
}
