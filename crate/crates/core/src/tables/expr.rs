use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::homotopy::key::subscript;
use crate::tensor::{parity, MultiMap, Permutation, Rational};

/// Which family a symbol belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    /// A generating map `m^t_{p̄}`.
    Generator,
    /// An obstruction map `n^t_{p̄}`.
    Obstruction,
}

/// An abstract map symbol with its blocks in the order written.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MapSymbol {
    pub kind: SymbolKind,
    pub t: u32,
    pub p: Vec<usize>,
}

impl MapSymbol {
    pub fn generator(t: u32, p: Vec<usize>) -> Self {
        MapSymbol {
            kind: SymbolKind::Generator,
            t,
            p,
        }
    }

    pub fn obstruction(t: u32, p: Vec<usize>) -> Self {
        MapSymbol {
            kind: SymbolKind::Obstruction,
            t,
            p,
        }
    }

    pub fn arity(&self) -> usize {
        self.p.iter().sum()
    }

    pub fn degree(&self) -> i32 {
        let base = 3 - 2 * self.t as i32 - self.arity() as i32 - self.p.len() as i32;
        match self.kind {
            SymbolKind::Generator => base,
            SymbolKind::Obstruction => base + 1,
        }
    }
}

impl fmt::Display for MapSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.kind {
            SymbolKind::Generator => "m",
            SymbolKind::Obstruction => "n",
        };
        write!(f, "{head}^{}_{}", self.t, subscript(&self.p))
    }
}

/// A composition tree; `Compose(f, i, g)` is `f ∘_i g` with 1-based `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Leaf(MapSymbol),
    Compose(Box<Tree>, usize, Box<Tree>),
}

impl Tree {
    pub fn leaf(s: MapSymbol) -> Tree {
        Tree::Leaf(s)
    }

    pub fn compose(f: Tree, i: usize, g: Tree) -> Tree {
        Tree::Compose(Box::new(f), i, Box::new(g))
    }

    pub fn arity(&self) -> usize {
        match self {
            Tree::Leaf(s) => s.arity(),
            Tree::Compose(f, _, g) => f.arity() + g.arity() - 1,
        }
    }

    pub fn degree(&self) -> i32 {
        match self {
            Tree::Leaf(s) => s.degree(),
            Tree::Compose(f, _, g) => f.degree() + g.degree(),
        }
    }

    fn check(&self) -> Result<()> {
        if let Tree::Compose(f, i, g) = self {
            f.check()?;
            g.check()?;
            if *i == 0 || *i > f.arity() {
                return Err(Error::Position {
                    pos: *i,
                    arity: f.arity(),
                });
            }
        }
        Ok(())
    }

    pub fn symbols(&self, out: &mut Vec<MapSymbol>) {
        match self {
            Tree::Leaf(s) => out.push(s.clone()),
            Tree::Compose(f, _, g) => {
                f.symbols(out);
                g.symbols(out);
            }
        }
    }

    /// Prefix notation, e.g. `o2(m^0_2, m^0_{1,1})`.
    pub fn prefix(&self) -> String {
        match self {
            Tree::Leaf(s) => s.to_string(),
            Tree::Compose(f, i, g) => format!("o{i}({}, {})", f.prefix(), g.prefix()),
        }
    }

    fn infix(&self, top: bool) -> String {
        match self {
            Tree::Leaf(s) => s.to_string(),
            Tree::Compose(f, i, g) => {
                let op = if f.arity() == 1 {
                    "∘".to_string()
                } else {
                    format!("∘{i}")
                };
                let s = format!("{} {op} {}", f.infix(false), g.infix(false));
                if top {
                    s
                } else {
                    format!("({s})")
                }
            }
        }
    }

    fn eval(&self, cache: &mut dyn FnMut(&MapSymbol) -> Result<MultiMap>) -> Result<MultiMap> {
        match self {
            Tree::Leaf(s) => cache(s),
            Tree::Compose(f, i, g) => {
                let fm = f.eval(cache)?;
                let gm = g.eval(cache)?;
                fm.compose_at(*i, &gm)
            }
        }
    }
}

/// One summand `c · (tree ∘ π)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprTerm {
    pub coeff: Rational,
    pub tree: Tree,
    pub perm: Permutation,
}

/// A rational linear combination of composition trees with input permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalExpr {
    arity: usize,
    degree: i32,
    terms: Vec<ExprTerm>,
}

impl FormalExpr {
    pub fn zero(arity: usize, degree: i32) -> Self {
        FormalExpr {
            arity,
            degree,
            terms: Vec::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn terms(&self) -> &[ExprTerm] {
        &self.terms
    }

    pub fn push(&mut self, coeff: Rational, tree: Tree, perm: Permutation) -> Result<()> {
        tree.check()?;
        if tree.arity() != self.arity || perm.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: tree.arity(),
            });
        }
        if tree.degree() != self.degree {
            return Err(Error::Degree(format!(
                "term {} has degree {}, expression has degree {}",
                tree.prefix(),
                tree.degree(),
                self.degree
            )));
        }
        if !coeff.is_zero() {
            self.terms.push(ExprTerm { coeff, tree, perm });
        }
        Ok(())
    }

    pub fn extend(&mut self, other: &FormalExpr, c: &Rational) -> Result<()> {
        for t in &other.terms {
            self.push(&t.coeff * c, t.tree.clone(), t.perm.clone())?;
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> FormalExpr {
        let mut e = FormalExpr::zero(self.arity, self.degree);
        e.extend(self, c).expect("same shape");
        e
    }

    /// Merges identical `(tree, perm)` pairs and drops zero terms; the order of
    /// first appearance is kept.
    pub fn simplified(&self) -> FormalExpr {
        let mut index: HashMap<(Tree, Permutation), usize> = HashMap::new();
        let mut terms: Vec<ExprTerm> = Vec::new();
        for t in &self.terms {
            let key = (t.tree.clone(), t.perm.clone());
            match index.get(&key) {
                Some(&i) => terms[i].coeff += &t.coeff,
                None => {
                    index.insert(key, terms.len());
                    terms.push(t.clone());
                }
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        FormalExpr {
            arity: self.arity,
            degree: self.degree,
            terms,
        }
    }

    pub fn symbols(&self) -> Vec<MapSymbol> {
        let mut out = Vec::new();
        for t in &self.terms {
            t.tree.symbols(&mut out);
        }
        out.sort();
        out.dedup();
        out
    }

    /// Evaluates with `resolve` supplying the map for each symbol (memoized).
    pub fn eval(
        &self,
        carrier: &std::sync::Arc<crate::tensor::GradedCarrier>,
        resolve: &mut dyn FnMut(&MapSymbol) -> Result<MultiMap>,
    ) -> Result<MultiMap> {
        let mut memo: HashMap<MapSymbol, MultiMap> = HashMap::new();
        let mut tree_memo: HashMap<Tree, MultiMap> = HashMap::new();
        let mut parts: Vec<(Rational, MultiMap)> = Vec::new();
        for t in &self.terms {
            let m = match tree_memo.get(&t.tree) {
                Some(m) => m.clone(),
                None => {
                    let mut lookup = |s: &MapSymbol| -> Result<MultiMap> {
                        if let Some(m) = memo.get(s) {
                            return Ok(m.clone());
                        }
                        let m = resolve(s)?;
                        if m.arity() != s.arity() || m.degree() != s.degree() {
                            return Err(Error::Degree(format!(
                                "{s} resolved to a map of arity {} and degree {}",
                                m.arity(),
                                m.degree()
                            )));
                        }
                        memo.insert(s.clone(), m.clone());
                        Ok(m)
                    };
                    let m = t.tree.eval(&mut lookup)?;
                    tree_memo.insert(t.tree.clone(), m.clone());
                    m
                }
            };
            parts.push((t.coeff.clone(), m.act(&t.perm)?));
        }
        if parts.is_empty() {
            return Ok(MultiMap::zero(carrier, self.arity, self.degree));
        }
        let refs: Vec<(Rational, &MultiMap)> = parts.iter().map(|(c, m)| (c.clone(), m)).collect();
        MultiMap::linear_combination(&refs)
    }

    /// Each term as `± c (tree) ∘ π`, with `π` in cycle notation.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let mag = t.coeff.abs();
            if i == 0 {
                if neg {
                    out.push_str("- ");
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag} "));
            }
            if t.perm.is_identity() {
                out.push_str(&t.tree.infix(true));
            } else {
                out.push_str(&format!("({}) ∘ {}", t.tree.infix(true), t.perm));
            }
        }
        out
    }

    /// One record per term: coefficient, prefix tree, one-line permutation.
    pub fn records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|t| TermRecord {
                coeff: t.coeff.to_string(),
                tree: t.tree.prefix(),
                perm: t.perm.one_line(),
            })
            .collect()
    }
}

/// Machine-readable form of one term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermRecord {
    pub coeff: String,
    pub tree: String,
    /// One-line notation, 1-based.
    pub perm: Vec<usize>,
}

/// Sign `(−1)^{|f||g|}` as a rational.
pub(crate) fn koszul_unit(a: i32, b: i32) -> Rational {
    if parity(a as i64 * b as i64) {
        -Rational::one()
    } else {
        Rational::one()
    }
}
