//! Composites evaluated by nesting rule evaluations on each input word, without
//! building their rule tables. A second route for identities between composites.

use num_traits::{One, Zero};

use super::{parity, signed, Basis, Element, GradedCarrier, MultiMap, Permutation, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum LazyMap {
    Leaf(MultiMap),
    /// `f∘_i g`, 1-based.
    Compose(Box<LazyMap>, usize, Box<LazyMap>),
    /// `f∘σ`.
    Act(Box<LazyMap>, Permutation),
    /// `Σ c_j f_j` over maps of equal arity and degree.
    Sum(Vec<(Rational, LazyMap)>),
}

impl From<&MultiMap> for LazyMap {
    fn from(m: &MultiMap) -> Self {
        LazyMap::Leaf(m.clone())
    }
}

impl LazyMap {
    pub fn arity(&self) -> usize {
        match self {
            LazyMap::Leaf(m) => m.arity(),
            LazyMap::Compose(f, _, g) => f.arity() + g.arity() - 1,
            LazyMap::Act(f, _) => f.arity(),
            LazyMap::Sum(parts) => parts.first().map_or(0, |(_, f)| f.arity()),
        }
    }

    pub fn degree(&self) -> i32 {
        match self {
            LazyMap::Leaf(m) => m.degree(),
            LazyMap::Compose(f, _, g) => f.degree() + g.degree(),
            LazyMap::Act(f, _) => f.degree(),
            LazyMap::Sum(parts) => parts.first().map_or(0, |(_, f)| f.degree()),
        }
    }

    pub fn compose(&self, i: usize, g: &LazyMap) -> Result<LazyMap> {
        if i == 0 || i > self.arity() {
            return Err(Error::Position {
                pos: i,
                arity: self.arity(),
            });
        }
        Ok(LazyMap::Compose(
            Box::new(self.clone()),
            i,
            Box::new(g.clone()),
        ))
    }

    pub fn act(&self, sigma: &Permutation) -> Result<LazyMap> {
        if sigma.len() != self.arity() {
            return Err(Error::Arity {
                expected: self.arity(),
                got: sigma.len(),
            });
        }
        Ok(LazyMap::Act(Box::new(self.clone()), sigma.clone()))
    }

    pub fn sum(parts: Vec<(Rational, LazyMap)>) -> Result<LazyMap> {
        if let Some((_, first)) = parts.first() {
            for (_, f) in &parts {
                if f.arity() != first.arity() {
                    return Err(Error::Arity {
                        expected: first.arity(),
                        got: f.arity(),
                    });
                }
                if f.degree() != first.degree() {
                    return Err(Error::Degree("summands of different degree".into()));
                }
            }
        }
        Ok(LazyMap::Sum(parts))
    }

    pub fn sub(&self, other: &LazyMap) -> Result<LazyMap> {
        LazyMap::sum(vec![
            (Rational::one(), self.clone()),
            (-Rational::one(), other.clone()),
        ])
    }

    /// `f⋆g = Σ_i f∘_i g`.
    pub fn pre_lie(&self, g: &LazyMap) -> Result<LazyMap> {
        let parts = (1..=self.arity())
            .map(|i| Ok((Rational::one(), self.compose(i, g)?)))
            .collect::<Result<_>>()?;
        LazyMap::sum(parts)
    }

    /// `[f,g] = f⋆g − (−1)^{|f||g|} g⋆f`.
    pub fn bracket(&self, g: &LazyMap) -> Result<LazyMap> {
        let c = signed(
            !parity(self.degree() as i64 * g.degree() as i64),
            Rational::one(),
        );
        LazyMap::sum(vec![
            (Rational::one(), self.pre_lie(g)?),
            (c, g.pre_lie(self)?),
        ])
    }

    pub fn eval_word(&self, w: &[Basis]) -> Result<Element> {
        if w.len() != self.arity() {
            return Err(Error::Arity {
                expected: self.arity(),
                got: w.len(),
            });
        }
        match self {
            LazyMap::Leaf(m) => m.eval_word(w),
            LazyMap::Compose(f, i, g) => {
                let pos = i - 1;
                let prefix: i64 = w[..pos].iter().map(|b| b.deg as i64).sum();
                let neg = parity(g.degree() as i64 * prefix);
                let inner = g.eval_word(&w[pos..pos + g.arity()])?;
                let mut out = Element::zero();
                for (v, c) in inner.terms() {
                    let mut word = w[..pos].to_vec();
                    word.extend_from_slice(v);
                    word.extend_from_slice(&w[pos + g.arity()..]);
                    out.add_assign_scaled(&f.eval_word(&word)?, &signed(neg, c.clone()));
                }
                Ok(out)
            }
            LazyMap::Act(f, sigma) => {
                let moved = Element::word(w.to_vec()).koszul_permute(sigma)?;
                let mut out = Element::zero();
                for (v, c) in moved.terms() {
                    out.add_assign_scaled(&f.eval_word(v)?, c);
                }
                Ok(out)
            }
            LazyMap::Sum(parts) => {
                let mut out = Element::zero();
                for (c, f) in parts {
                    if !c.is_zero() {
                        out.add_assign_scaled(&f.eval_word(w)?, c);
                    }
                }
                Ok(out)
            }
        }
    }

    /// First word (monomials up to `poly_degree`) with a nonzero value.
    pub fn first_nonzero(
        &self,
        carrier: &GradedCarrier,
        poly_degree: u32,
    ) -> Result<Option<(Vec<Basis>, Element)>> {
        for w in carrier.words(self.arity(), poly_degree) {
            let v = self.eval_word(&w)?;
            if !v.is_zero() {
                return Ok(Some((w, v)));
            }
        }
        Ok(None)
    }
}
