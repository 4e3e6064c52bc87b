use std::collections::HashMap;

use num_traits::One;

use super::genset::block_layout;
use super::{
    BlockSign, Conventions, GeneratingKey, GeneratingSet, ObstructionKey, RelationTwist, SplitSign,
};
use crate::error::{Error, Result};
use crate::shuffle::{enumerate_straight_shuffles, extension_sign, offsets};
use crate::tables::{FormalExpr, MapSymbol, SymbolKind, Tree};
use crate::tensor::{koszul_sign, parity, MultiMap, Permutation, Rational};

/// One composite summand: `outer^s_{(r, p_J)} ∘_{front+1} inner^{t−s}_{q̄}`
/// precomposed with `rho`.
struct Composite {
    s: u32,
    q: Vec<usize>,
    outer_p: Vec<usize>,
    front: usize,
    rho: Permutation,
    /// Sign of the composite as it appears in the obstruction (true = negative).
    neg: bool,
    /// Exponent of the extra sign in the relations between obstructions.
    twist: usize,
}

fn composites(t: u32, p: &[usize], conv: Conventions) -> Result<Vec<Composite>> {
    let k = p.len();
    let mut out = Vec::new();
    let mut shuffle_cache: HashMap<(Vec<usize>, Vec<usize>), Vec<_>> = HashMap::new();
    for s in 0..=t {
        for mask in 1u32..(1 << k) {
            let i_set: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            let j_set: Vec<usize> = (0..k).filter(|i| mask & (1 << i) == 0).collect();
            let (a, b) = (i_set.len(), j_set.len());
            let p_i: Vec<usize> = i_set.iter().map(|&i| p[i]).collect();
            let p_j: Vec<usize> = j_set.iter().map(|&j| p[j]).collect();
            // move the blocks of I in front of those of J
            let mut target = vec![0; k];
            for (pos, &i) in i_set.iter().chain(&j_set).enumerate() {
                target[i] = pos;
            }
            let (beta, _) = block_layout(p, &target, BlockSign::Plain);
            let block_degs: Vec<i32> = p.iter().map(|&x| x as i32 - 1).collect();
            let block_neg = koszul_sign(
                &Permutation::from_images(target.clone()).expect("bijection"),
                &block_degs,
            );
            let sum_pj: usize = p_j.iter().sum();
            for q in boxes(&p_i) {
                let sum_q: usize = q.iter().sum();
                let r = 1 + p_i.iter().sum::<usize>() - sum_q;
                let explicit =
                    (sum_q as i64 - a as i64 + 1) * (sum_pj as i64 - b as i64) + r as i64 - 1;
                let mut outer_p = vec![r];
                outer_p.extend(&p_j);
                let shuffles = shuffle_cache
                    .entry((q.clone(), p_i.clone()))
                    .or_insert_with(|| enumerate_straight_shuffles(&q, &p_i).expect("q ≤ p"));
                for ds in shuffles.iter() {
                    let rho = ds.sigma.extend(sum_pj).compose(&beta);
                    let neg = parity(explicit) ^ block_neg ^ extension_sign(ds, conv.exponent);
                    out.push(Composite {
                        s,
                        q: q.clone(),
                        outer_p: outer_p.clone(),
                        front: ds.front(),
                        rho,
                        neg,
                        twist: match conv.twist {
                            RelationTwist::BlockDegrees => sum_pj - b + r - 1,
                            RelationTwist::BlockSizes => sum_pj + r - 1,
                        },
                    });
                }
            }
        }
    }
    Ok(out)
}

/// All tuples `q̄` with `1 ≤ qᵢ ≤ pᵢ`, lexicographically.
fn boxes(p: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &x in p {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=x).map(move |q| {
                    let mut w = v.clone();
                    w.push(q);
                    w
                })
            })
            .collect();
    }
    out
}

/// Split terms: `(coefficient sign, split profile)` for every block `i` and split
/// point `j`. True means the term enters the relation with `(−1) = −1`.
fn splits(p: &[usize], conv: Conventions) -> Vec<(bool, Vec<usize>)> {
    let big_p = offsets(p);
    let mut out = Vec::new();
    for i in 0..p.len() {
        for j in 1..p[i] {
            let e = match conv.split_sign {
                SplitSign::WithSplitPoint => big_p[i] + j + (i + 1),
                SplitSign::WithoutSplitPoint => big_p[i] + (i + 1),
            };
            let mut q = p[..i].to_vec();
            q.push(j);
            q.push(p[i] - j);
            q.extend(&p[i + 1..]);
            out.push((parity(e as i64), q));
        }
    }
    out
}

fn unit(neg: bool) -> Rational {
    if neg {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// The obstruction `n^t_{p̄}` as a formal expression in the generating maps:
/// the composite sum minus the split sum. Any block order is accepted; keys with
/// `t + k < 2` yield the corresponding homotopy-associativity expression.
pub fn expand_obstruction(key: &ObstructionKey, conv: Conventions) -> Result<FormalExpr> {
    expand_raw(key.t, &key.p, conv)
}

pub(crate) fn expand_raw(t: u32, p: &[usize], conv: Conventions) -> Result<FormalExpr> {
    let degree = GeneratingKey::new(t, p.to_vec())?.degree() + 1;
    let mut e = FormalExpr::zero(p.iter().sum(), degree);
    for c in composites(t, p, conv)? {
        let tree = Tree::compose(
            Tree::leaf(MapSymbol::generator(c.s, c.outer_p)),
            c.front + 1,
            Tree::leaf(MapSymbol::generator(t - c.s, c.q)),
        );
        e.push(unit(c.neg), tree, c.rho)?;
    }
    if t >= 1 {
        for (neg, q) in splits(p, conv) {
            let n = q.iter().sum();
            e.push(
                unit(!neg),
                Tree::leaf(MapSymbol::generator(t - 1, q)),
                Permutation::identity(n),
            )?;
        }
    }
    Ok(e)
}

/// The left-hand side of the relation satisfied by the obstruction maps at
/// `(t, p̄)`; it evaluates to zero for every valid generating set.
pub fn expand_relation_n(key: &ObstructionKey, conv: Conventions) -> Result<FormalExpr> {
    let (t, p) = (key.t, &key.p);
    let degree = key.degree() + 1;
    let mut e = FormalExpr::zero(key.arity(), degree);
    for c in composites(t, p, conv)? {
        // generator outside, obstruction inside
        let tree = Tree::compose(
            Tree::leaf(MapSymbol::generator(c.s, c.outer_p.clone())),
            c.front + 1,
            Tree::leaf(MapSymbol::obstruction(t - c.s, c.q.clone())),
        );
        e.push(unit(c.neg ^ parity(c.twist as i64)), tree, c.rho.clone())?;
        // obstruction outside, generator inside
        let tree = Tree::compose(
            Tree::leaf(MapSymbol::obstruction(c.s, c.outer_p)),
            c.front + 1,
            Tree::leaf(MapSymbol::generator(t - c.s, c.q)),
        );
        e.push(unit(!c.neg), tree, c.rho)?;
    }
    if t >= 1 {
        for (neg, q) in splits(p, conv) {
            let n = q.iter().sum();
            e.push(
                unit(neg),
                Tree::leaf(MapSymbol::obstruction(t - 1, q)),
                Permutation::identity(n),
            )?;
        }
    }
    Ok(e)
}

/// Evaluates formal expressions against a generating set, computing obstruction
/// symbols on demand and caching them.
pub struct Evaluator<'a> {
    set: &'a GeneratingSet,
    conv: Conventions,
    cache: HashMap<(u32, Vec<usize>), MultiMap>,
}

impl<'a> Evaluator<'a> {
    pub fn new(set: &'a GeneratingSet, conv: Conventions) -> Self {
        Evaluator {
            set,
            conv,
            cache: HashMap::new(),
        }
    }

    pub fn set(&self) -> &GeneratingSet {
        self.set
    }

    /// `n^t_{p̄}` with blocks in the given order.
    pub fn obstruction_raw(&mut self, t: u32, p: &[usize]) -> Result<MultiMap> {
        if let Some(m) = self.cache.get(&(t, p.to_vec())) {
            return Ok(m.clone());
        }
        let expr = expand_raw(t, p, self.conv)?;
        let m = self.eval(&expr)?;
        self.cache.insert((t, p.to_vec()), m.clone());
        Ok(m)
    }

    pub fn obstruction(&mut self, key: &ObstructionKey) -> Result<MultiMap> {
        self.obstruction_raw(key.t, &key.p)
    }

    pub fn resolve(&mut self, s: &MapSymbol) -> Result<MultiMap> {
        match s.kind {
            SymbolKind::Generator => self.set.get(&GeneratingKey::new(s.t, s.p.clone())?),
            SymbolKind::Obstruction => self.obstruction_raw(s.t, &s.p),
        }
    }

    pub fn eval(&mut self, expr: &FormalExpr) -> Result<MultiMap> {
        let carrier = self.set.carrier().clone();
        expr.eval(&carrier, &mut |s| self.resolve(s))
    }
}

/// `n^t_{p̄}` on a generating set with the default conventions.
pub fn obstruction(set: &GeneratingSet, key: &ObstructionKey) -> Result<MultiMap> {
    obstruction_with(set, key, Conventions::default())
}

pub fn obstruction_with(
    set: &GeneratingSet,
    key: &ObstructionKey,
    conv: Conventions,
) -> Result<MultiMap> {
    if set.block_sign() != conv.block_sign {
        return Err(Error::Shape(
            "generating set and conventions disagree on the block sign".into(),
        ));
    }
    Evaluator::new(set, conv).obstruction(key)
}
