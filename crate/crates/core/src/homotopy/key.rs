use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Index `(t, p̄)` of a generating map `m^t_{p̄}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratingKey {
    pub t: u32,
    pub p: Vec<usize>,
}

impl GeneratingKey {
    pub fn new(t: u32, p: Vec<usize>) -> Result<Self> {
        if p.is_empty() || p.contains(&0) {
            return Err(Error::Shape(format!("invalid block profile {p:?}")));
        }
        Ok(GeneratingKey { t, p })
    }

    pub fn k(&self) -> usize {
        self.p.len()
    }

    pub fn arity(&self) -> usize {
        self.p.iter().sum()
    }

    /// `3 − 2t − Σp − k`.
    pub fn degree(&self) -> i32 {
        3 - 2 * self.t as i32 - self.arity() as i32 - self.k() as i32
    }

    /// `t + Σp − 1`.
    pub fn weight(&self) -> u32 {
        self.t + self.arity() as u32 - 1
    }

    /// Blocks sorted non-decreasingly.
    pub fn canonical(&self) -> GeneratingKey {
        let mut p = self.p.clone();
        p.sort_unstable();
        GeneratingKey { t: self.t, p }
    }

    pub fn is_canonical(&self) -> bool {
        self.p.windows(2).all(|w| w[0] <= w[1])
    }

    /// Every canonical key of the given weight, ordered by `t` then `p̄`.
    pub fn all_of_weight(w: u32) -> Vec<GeneratingKey> {
        let mut out = Vec::new();
        for t in 0..=w {
            let total = (w + 1 - t) as usize;
            for p in partitions(total) {
                out.push(GeneratingKey { t, p });
            }
        }
        out
    }

    /// `t;p1,p2,…`
    pub fn code(&self) -> String {
        let p: Vec<String> = self.p.iter().map(|x| x.to_string()).collect();
        format!("{};{}", self.t, p.join(","))
    }
}

/// Non-decreasing partitions of `n`.
pub(crate) fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in min..=left {
            cur.push(x);
            rec(left - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub(crate) fn subscript(p: &[usize]) -> String {
    let s: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    if p.len() == 1 {
        s[0].clone()
    } else {
        format!("{{{}}}", s.join(","))
    }
}

impl fmt::Display for GeneratingKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m^{}_{}", self.t, subscript(&self.p))
    }
}

impl FromStr for GeneratingKey {
    type Err = Error;

    /// Parses `t;p1,p2,…`.
    fn from_str(s: &str) -> Result<Self> {
        let (t, p) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("key {s:?} is not of the form t;p1,…")))?;
        let t: u32 = t
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad power in key {s:?}")))?;
        let p: Vec<usize> = p
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad blocks in key {s:?}")))?;
        GeneratingKey::new(t, p)
    }
}

/// Index `(t, p̄)` of an obstruction map `n^t_{p̄}`; requires `t + k ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObstructionKey {
    pub t: u32,
    pub p: Vec<usize>,
}

impl ObstructionKey {
    pub fn new(t: u32, p: Vec<usize>) -> Result<Self> {
        GeneratingKey::new(t, p.clone())?;
        if t as usize + p.len() < 2 {
            return Err(Error::Shape(format!(
                "obstruction n^{t}_{} needs t + k ≥ 2",
                subscript(&p)
            )));
        }
        Ok(ObstructionKey { t, p })
    }

    pub fn generator(&self) -> GeneratingKey {
        GeneratingKey {
            t: self.t,
            p: self.p.clone(),
        }
    }

    pub fn k(&self) -> usize {
        self.p.len()
    }

    pub fn arity(&self) -> usize {
        self.p.iter().sum()
    }

    /// `4 − 2t − Σp − k`.
    pub fn degree(&self) -> i32 {
        self.generator().degree() + 1
    }

    pub fn weight(&self) -> u32 {
        self.generator().weight()
    }

    pub fn canonical(&self) -> ObstructionKey {
        let g = self.generator().canonical();
        ObstructionKey { t: g.t, p: g.p }
    }

    /// Canonical obstruction keys of the given weight.
    pub fn all_of_weight(w: u32) -> Vec<ObstructionKey> {
        GeneratingKey::all_of_weight(w)
            .into_iter()
            .filter(|g| g.t as usize + g.k() >= 2)
            .map(|g| ObstructionKey { t: g.t, p: g.p })
            .collect()
    }
}

impl fmt::Display for ObstructionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n^{}_{}", self.t, subscript(&self.p))
    }
}
