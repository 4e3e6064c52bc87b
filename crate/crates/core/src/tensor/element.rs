use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{koszul_sign, signed, Basis, GradedCarrier, Permutation, Rational};
use crate::error::{Error, Result};

/// A finite linear combination of tensor words with rational coefficients.
///
/// Terms are kept sorted by word, merged, and free of zero coefficients, so `==`
/// is equality of tensors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<Vec<Basis>, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn word(word: Vec<Basis>) -> Self {
        Self::term(word, Rational::one())
    }

    pub fn term(word: Vec<Basis>, coeff: Rational) -> Self {
        let mut e = Element::zero();
        e.add_term(word, coeff);
        e
    }

    pub fn add_term(&mut self, word: Vec<Basis>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        debug_assert!(self
            .terms
            .keys()
            .next()
            .is_none_or(|w| w.len() == word.len()));
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Element, c: &Rational) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Tensor arity, or `None` for zero.
    pub fn arity(&self) -> Option<usize> {
        self.terms.keys().next().map(|w| w.len())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Basis>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[Basis]) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        let mut e = Element::zero();
        e.add_assign_scaled(self, c);
        e
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_assign_scaled(other, &Rational::one());
        e
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_assign_scaled(other, &-Rational::one());
        e
    }

    /// `self ⊗ other`; no sign arises since nothing is commuted.
    pub fn tensor(&self, other: &Element) -> Element {
        let mut e = Element::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                e.add_term(w, x * y);
            }
        }
        e
    }

    /// Degrees of all terms, if they agree.
    pub fn degree(&self) -> Option<i32> {
        let mut it = self
            .terms
            .keys()
            .map(|w| w.iter().map(|b| b.deg).sum::<i32>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// The action `σ·(v_1⊗…⊗v_n) = ±v_{σ⁻¹(1)}⊗…⊗v_{σ⁻¹(n)}` with the Koszul sign.
    pub fn koszul_permute(&self, sigma: &Permutation) -> Result<Element> {
        let mut e = Element::zero();
        for (w, c) in &self.terms {
            if w.len() != sigma.len() {
                return Err(Error::Arity {
                    expected: sigma.len(),
                    got: w.len(),
                });
            }
            let (word, neg) = permute_word(sigma, w);
            e.add_term(word, signed(neg, c.clone()));
        }
        Ok(e)
    }

    pub fn render(&self, carrier: &GradedCarrier) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}·"));
            }
            let factors: Vec<String> = w.iter().map(|b| carrier.render_basis(b)).collect();
            out.push_str(&factors.join("⊗"));
        }
        out
    }
}

/// Moves the factor in position `i` to position `σ(i)`; returns the new word and
/// whether the Koszul sign is negative.
pub(crate) fn permute_word(sigma: &Permutation, w: &[Basis]) -> (Vec<Basis>, bool) {
    let mut out = w.to_vec();
    for (i, b) in w.iter().enumerate() {
        out[sigma.image(i)] = *b;
    }
    let degs: Vec<i32> = w.iter().map(|b| b.deg).collect();
    (out, koszul_sign(sigma, &degs))
}
