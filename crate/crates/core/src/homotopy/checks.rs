use num_traits::One;

use super::genset::{block_layout, size_preserving};
use super::obstruction::Evaluator;
use super::{BlockSign, Conventions, GeneratingKey, GeneratingSet, ObstructionKey};
use crate::error::{Error, Result};
use crate::report::{witness_of, CheckEntry, Report};
use crate::shuffle::{enumerate_shuffles, offsets};
use crate::tensor::{parity, Basis, Element, MultiMap, Rational};

/// A failed symmetry with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub key: GeneratingKey,
    pub kind: String,
    pub witness: String,
}

/// `Σ_{σ ∈ Sh(j, pᵢ−j)} sign(σ) m∘σ` with `σ` acting inside block `i` (0-based).
pub fn shuffle_sum(m: &MultiMap, p: &[usize], i: usize, j: usize) -> Result<MultiMap> {
    let off = offsets(p);
    let n: usize = p.iter().sum();
    let mut parts = Vec::new();
    for s in enumerate_shuffles(j, p[i] - j) {
        let full = s.shift(off[i]).extend(n - off[i] - p[i]);
        let c = if s.is_odd() {
            -Rational::one()
        } else {
            Rational::one()
        };
        parts.push((c, m.act(&full)?));
    }
    let refs: Vec<(Rational, &MultiMap)> = parts.iter().map(|(c, m)| (c.clone(), m)).collect();
    MultiMap::linear_combination(&refs)
}

/// Block and shuffle symmetry failures of a map stored under `p` (any order).
pub fn symmetry_violations(
    key: &GeneratingKey,
    m: &MultiMap,
    sign: BlockSign,
) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    let p = &key.p;
    for target in size_preserving(p) {
        if target.iter().enumerate().all(|(a, &b)| a == b) {
            continue;
        }
        let (perm, neg) = block_layout(p, &target, sign);
        let moved = m.act(&perm)?;
        let moved = if neg {
            moved.scale(&-Rational::one())
        } else {
            moved
        };
        let diff = moved.sub(m)?;
        if let Some(w) = witness_of(&diff) {
            out.push(Violation {
                key: key.clone(),
                kind: format!("block symmetry under {perm}"),
                witness: w,
            });
        }
    }
    for i in 0..p.len() {
        for j in 1..p[i] {
            let s = shuffle_sum(m, p, i, j)?;
            if let Some(w) = witness_of(&s) {
                out.push(Violation {
                    key: key.clone(),
                    kind: format!("shuffle symmetry Sh({j},{}) in block {}", p[i] - j, i + 1),
                    witness: w,
                });
            }
        }
    }
    Ok(out)
}

/// All symmetry violations of the stored maps.
pub fn validate_symmetries(set: &GeneratingSet) -> Vec<Violation> {
    let mut out = Vec::new();
    for (key, m) in set.iter() {
        match symmetry_violations(key, m, set.block_sign()) {
            Ok(v) => out.extend(v),
            Err(e) => out.push(Violation {
                key: key.clone(),
                kind: "malformed map".into(),
                witness: e.to_string(),
            }),
        }
    }
    out
}

/// Averages `raw` over the permutations of equal-size blocks.
pub fn symmetrize(key: &GeneratingKey, raw: &MultiMap, sign: BlockSign) -> Result<MultiMap> {
    if raw.arity() != key.arity() {
        return Err(Error::Arity {
            expected: key.arity(),
            got: raw.arity(),
        });
    }
    let group = size_preserving(&key.p);
    let weight = Rational::new(1.into(), (group.len() as i64).into());
    let mut parts = Vec::new();
    for target in group {
        let (perm, neg) = block_layout(&key.p, &target, sign);
        let c = if neg { -weight.clone() } else { weight.clone() };
        parts.push((c, raw.act(&perm)?));
    }
    let refs: Vec<(Rational, &MultiMap)> = parts.iter().map(|(c, m)| (c.clone(), m)).collect();
    MultiMap::linear_combination(&refs)
}

/// `Σ_{r+s+t=n} (−1)^{r+st} m_{r+1+t} ∘_{r+1} m_s` on the weight-0 row.
pub fn ainfty_residual(set: &GeneratingSet, n: usize) -> Result<MultiMap> {
    let row = |j: usize| set.get(&GeneratingKey::new(0, vec![j])?);
    let mut parts = Vec::new();
    for s in 1..=n {
        let inner = row(s)?;
        for r in 0..=n - s {
            let t = n - s - r;
            let outer = row(r + 1 + t)?;
            if inner.is_zero() || outer.is_zero() {
                continue;
            }
            let sign = parity((r + s * t) as i64);
            let c = if sign {
                -Rational::one()
            } else {
                Rational::one()
            };
            parts.push((c, outer.compose_at(r + 1, &inner)?));
        }
    }
    if parts.is_empty() {
        let degree = GeneratingKey::new(0, vec![n])?.degree() + 1;
        return Ok(MultiMap::zero(set.carrier(), n, degree));
    }
    let refs: Vec<(Rational, &MultiMap)> = parts.iter().map(|(c, m)| (c.clone(), m)).collect();
    MultiMap::linear_combination(&refs)
}

/// The A∞ relation of arity `n` evaluated on one input word by nesting
/// evaluations, without building composite maps.
pub fn ainfty_pointwise(set: &GeneratingSet, n: usize, w: &[Basis]) -> Result<Element> {
    let mut out = Element::zero();
    for s in 1..=n {
        let inner = set.get(&GeneratingKey::new(0, vec![s])?)?;
        if inner.is_zero() {
            continue;
        }
        for r in 0..=n - s {
            let t = n - s - r;
            let outer = set.get(&GeneratingKey::new(0, vec![r + 1 + t])?)?;
            if outer.is_zero() {
                continue;
            }
            let prefix: i64 = w[..r].iter().map(|b| b.deg as i64).sum();
            let neg = parity((r + s * t) as i64) ^ parity(inner.degree() as i64 * prefix);
            let sign = if neg {
                -Rational::one()
            } else {
                Rational::one()
            };
            let mid = inner.eval_word(&w[r..r + s])?;
            for (v, c) in mid.terms() {
                let mut word = w[..r].to_vec();
                word.extend_from_slice(v);
                word.extend_from_slice(&w[r + s..]);
                out.add_assign_scaled(&outer.eval_word(&word)?, &(c * &sign));
            }
        }
    }
    Ok(out)
}

/// [`ainfty_pointwise`] on every word of arity `n` with monomials up to
/// `poly_degree`; fails with the first nonzero word.
pub fn ainfty_pointwise_entry(
    set: &GeneratingSet,
    n: usize,
    poly_degree: u32,
) -> Result<CheckEntry> {
    let c = set.carrier();
    let id = format!("ainfty-{n}-pointwise");
    for w in c.words(n, poly_degree) {
        let v = ainfty_pointwise(set, n, &w)?;
        if !v.is_zero() {
            let input: Vec<String> = w.iter().map(|b| c.render_basis(b)).collect();
            let witness = format!("{} ↦ {}", input.join("⊗"), v.render(c));
            return Ok(CheckEntry::fail(id, "nonzero", Some(witness)));
        }
    }
    Ok(CheckEntry::pass(
        id,
        format!("zero on all words up to polynomial degree {poly_degree}"),
    ))
}

/// Homotopy associativity and shuffle vanishing of the weight-0 row up to `max_arity`.
pub fn check_cinfty(set: &GeneratingSet, max_arity: usize) -> Result<Report> {
    let mut report = Report::new("C-infinity relations");
    for n in 1..=max_arity {
        let res = ainfty_residual(set, n)?;
        report.push(CheckEntry::vanishing(format!("ainfty-{n}"), &res));
    }
    for n in 2..=max_arity {
        let m = set.get(&GeneratingKey::new(0, vec![n])?)?;
        for j in 1..n {
            let s = shuffle_sum(&m, &[n], 0, j)?;
            report.push(CheckEntry::vanishing(
                format!("shuffle-m0_{n}-Sh({j},{})", n - j),
                &s,
            ));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionStatus {
    pub key: ObstructionKey,
    pub vanishes: bool,
    pub witness: Option<String>,
}

/// Which descended structures a truncated generating set carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub n: u32,
    /// No nonzero generator above weight `n`.
    pub is_cbv: bool,
    pub is_bv: bool,
    pub is_gerst: bool,
    pub is_shifted_l: bool,
    pub obstructions: Vec<ObstructionStatus>,
}

impl Classification {
    pub fn first_nonvanishing(&self) -> Option<&ObstructionStatus> {
        self.obstructions.iter().find(|o| !o.vanishes)
    }
}

/// Computes every obstruction of weight `≤ n` and derives the flags.
pub fn classify(set: &GeneratingSet, n: u32) -> Result<Classification> {
    let conv = Conventions {
        block_sign: set.block_sign(),
        ..Conventions::default()
    };
    let mut ev = Evaluator::new(set, conv);
    let mut obstructions = Vec::new();
    for w in 1..=n {
        for key in ObstructionKey::all_of_weight(w) {
            let m = ev.obstruction(&key)?;
            obstructions.push(ObstructionStatus {
                key,
                vanishes: m.is_zero(),
                witness: witness_of(&m),
            });
        }
    }
    let is_cbv = set.max_weight().is_none_or(|w| w <= n);
    let all = |f: &dyn Fn(&ObstructionKey) -> bool| {
        obstructions
            .iter()
            .filter(|o| f(&o.key))
            .all(|o| o.vanishes)
    };
    Ok(Classification {
        n,
        is_cbv,
        is_bv: all(&|_| true),
        is_gerst: all(&|k| k.t == 0),
        is_shifted_l: all(&|k| k.t == 0 && k.p.iter().all(|&x| x == 1)),
        obstructions,
    })
}

/// Checks the relation between obstruction maps at `key`.
pub fn check_relations_n(set: &GeneratingSet, key: &ObstructionKey) -> Result<CheckEntry> {
    let conv = Conventions {
        block_sign: set.block_sign(),
        ..Conventions::default()
    };
    let expr = super::expand_relation_n(key, conv)?;
    let res = Evaluator::new(set, conv).eval(&expr)?;
    Ok(CheckEntry::vanishing(format!("relation-N {key}"), &res))
}

/// Builds a generating set from a weight-0 row and extra generators; every key of
/// weight `≤ truncation` without an assignment is set to zero.
pub fn extend_from_cinfty(
    row: &GeneratingSet,
    extras: Vec<(GeneratingKey, MultiMap)>,
    truncation: u32,
    auto_symmetrize: bool,
) -> Result<GeneratingSet> {
    let max_arity = truncation as usize + 1;
    let report = check_cinfty(row, max_arity.min(6))?;
    if let Some(f) = report.failures().next() {
        return Err(Error::Symmetry(format!(
            "weight-0 row fails {}: {}",
            f.id,
            f.witness.clone().unwrap_or_default()
        )));
    }
    let mut set = GeneratingSet::new(row.carrier().clone(), Some(truncation))
        .with_block_sign(row.block_sign());
    for (key, m) in row.iter() {
        if key.t == 0 && key.k() == 1 {
            set.insert(key.clone(), m.clone())?;
        }
    }
    for (key, m) in extras {
        if key.t == 0 && key.k() == 1 {
            return Err(Error::Shape(format!("{key} belongs to the weight-0 row")));
        }
        let canon = key.canonical();
        let mut tmp =
            GeneratingSet::new(set.carrier().clone(), None).with_block_sign(set.block_sign());
        tmp.insert(key.clone(), m)?;
        let mut stored = tmp.stored(&canon).expect("just inserted").clone();
        if auto_symmetrize {
            stored = symmetrize(&canon, &stored, set.block_sign())?;
        }
        let v = symmetry_violations(&canon, &stored, set.block_sign())?;
        if let Some(first) = v.first() {
            return Err(Error::Symmetry(format!(
                "{key}: {} ({})",
                first.kind, first.witness
            )));
        }
        set.insert(canon, stored)?;
    }
    set.fill_zeros_up_to(truncation);
    Ok(set)
}
