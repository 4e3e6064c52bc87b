use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::{koszul_sign, parity, signed, Basis, Element, GradedCarrier, Mono, Permutation};
use super::{Rational, Sym};
use crate::error::{Error, Result};

pub type SymWord = SmallVec<[Sym; 8]>;
type Derivs = SmallVec<[Mono; 4]>;

/// One output of a rule: `coeff · out` with coefficient function
/// `∏_j ∂^{derivs[j]} f_j`, where `f_j` is the polynomial on input `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTerm {
    pub out: Sym,
    pub derivs: SmallVec<[Mono; 4]>,
    pub coeff: Rational,
}

/// A homogeneous multilinear map `A^{⊗n} → A`, stored as a constant-coefficient
/// multi-differential operator on each word of basis symbols.
///
/// Rules are canonical (sorted, merged, zero-free), so two maps are equal exactly
/// when their rule tables are equal.
#[derive(Clone)]
pub struct MultiMap {
    carrier: Arc<GradedCarrier>,
    arity: usize,
    degree: i32,
    rules: Arc<BTreeMap<SymWord, Vec<OpTerm>>>,
}

impl PartialEq for MultiMap {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.degree == other.degree
            && same_carrier(&self.carrier, &other.carrier)
            && self.rules == other.rules
    }
}

impl fmt::Debug for MultiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MultiMap(arity {}, degree {}, {} rules)",
            self.arity,
            self.degree,
            self.rules.len()
        )
    }
}

pub(crate) fn same_carrier(a: &Arc<GradedCarrier>, b: &Arc<GradedCarrier>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Accumulates rule terms before canonicalization.
#[derive(Default)]
pub struct RuleBuilder {
    acc: BTreeMap<SymWord, BTreeMap<(Sym, Derivs), Rational>>,
}

impl RuleBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, word: &[Sym], out: Sym, derivs: &[Mono], coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self
            .acc
            .entry(SmallVec::from_slice(word))
            .or_default()
            .entry((out, SmallVec::from_slice(derivs)))
            .or_insert_with(Rational::zero);
        *slot += coeff;
    }

    /// Adds a rule with no derivatives.
    pub fn add_plain(&mut self, word: &[Sym], out: Sym, coeff: Rational) {
        let derivs = vec![Mono::ONE; word.len()];
        self.add(word, out, &derivs, coeff);
    }

    pub fn build(
        self,
        carrier: &Arc<GradedCarrier>,
        arity: usize,
        degree: i32,
    ) -> Result<MultiMap> {
        if arity == 0 {
            return Err(Error::Arity {
                expected: 1,
                got: 0,
            });
        }
        let mut rules = BTreeMap::new();
        for (word, outs) in self.acc {
            if word.len() != arity {
                return Err(Error::Arity {
                    expected: arity,
                    got: word.len(),
                });
            }
            if let Some(&s) = word.iter().find(|&&s| s as usize >= carrier.dim()) {
                return Err(Error::Carrier(format!("symbol index {s} out of range")));
            }
            let in_deg: i32 = word.iter().map(|&s| carrier.degree(s)).sum();
            let mut terms = Vec::new();
            for ((out, derivs), coeff) in outs {
                if coeff.is_zero() {
                    continue;
                }
                if out as usize >= carrier.dim() {
                    return Err(Error::Carrier(format!("symbol index {out} out of range")));
                }
                if carrier.degree(out) != in_deg + degree {
                    let names: Vec<&str> = word.iter().map(|&s| carrier.name(s)).collect();
                    return Err(Error::Inhomogeneous(format!(
                        "{} ↦ {} breaks degree {degree}",
                        names.join("⊗"),
                        carrier.name(out)
                    )));
                }
                if derivs
                    .iter()
                    .any(|d| d.0[carrier.vars()..].iter().any(|&e| e != 0))
                {
                    return Err(Error::Carrier(
                        "derivative in a variable the carrier does not have".into(),
                    ));
                }
                terms.push(OpTerm { out, derivs, coeff });
            }
            if !terms.is_empty() {
                rules.insert(word, terms);
            }
        }
        Ok(MultiMap {
            carrier: carrier.clone(),
            arity,
            degree,
            rules: Arc::new(rules),
        })
    }
}

impl MultiMap {
    pub fn zero(carrier: &Arc<GradedCarrier>, arity: usize, degree: i32) -> MultiMap {
        assert!(arity >= 1, "maps have positive arity");
        MultiMap {
            carrier: carrier.clone(),
            arity,
            degree,
            rules: Arc::new(BTreeMap::new()),
        }
    }

    pub fn identity(carrier: &Arc<GradedCarrier>) -> MultiMap {
        let mut b = RuleBuilder::new();
        for s in carrier.symbols() {
            b.add_plain(&[s], s, Rational::one());
        }
        b.build(carrier, 1, 0).expect("identity is homogeneous")
    }

    pub fn carrier(&self) -> &Arc<GradedCarrier> {
        &self.carrier
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rules(&self) -> impl Iterator<Item = (&SymWord, &Vec<OpTerm>)> {
        self.rules.iter()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// True if some rule differentiates its inputs.
    pub fn has_derivatives(&self) -> bool {
        self.rules
            .values()
            .flatten()
            .any(|t| t.derivs.iter().any(|d| !d.is_one()))
    }

    fn check_word(&self, w: &[Basis]) -> Result<()> {
        if w.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: w.len(),
            });
        }
        Ok(())
    }

    pub fn eval_word(&self, w: &[Basis]) -> Result<Element> {
        self.check_word(w)?;
        let key: SymWord = w.iter().map(|b| b.sym).collect();
        let mut out = Element::zero();
        let Some(terms) = self.rules.get(&key) else {
            return Ok(out);
        };
        'term: for t in terms {
            let mut factor = t.coeff.clone();
            let mut mono = Mono::ONE;
            for (d, b) in t.derivs.iter().zip(w) {
                match d.differentiate(&b.mono) {
                    Some((k, m)) => {
                        factor *= Rational::from_integer(k.into());
                        mono = mono.mul(&m);
                    }
                    None => continue 'term,
                }
            }
            out.add_term(vec![self.carrier.basis(t.out, mono)], factor);
        }
        Ok(out)
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let v = self.eval_word(w)?;
            out.add_assign_scaled(&v, c);
        }
        Ok(out)
    }

    fn require_same(&self, other: &MultiMap) -> Result<()> {
        if !same_carrier(&self.carrier, &other.carrier) {
            return Err(Error::CarrierMismatch);
        }
        Ok(())
    }

    /// `f∘σ`, defined by `(f∘σ)(v) = f(σ·v)`. Satisfies `(f∘σ)∘τ = f∘(στ)`.
    pub fn act(&self, sigma: &Permutation) -> Result<MultiMap> {
        if sigma.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: sigma.len(),
            });
        }
        if sigma.is_identity() {
            return Ok(self.clone());
        }
        let mut b = RuleBuilder::new();
        let n = self.arity;
        for (u, terms) in self.rules.iter() {
            // input word w with σ·w = u, i.e. w[j] = u[σ(j)]
            let w: SymWord = (0..n).map(|j| u[sigma.image(j)]).collect();
            let degs: Vec<i32> = w.iter().map(|&s| self.carrier.degree(s)).collect();
            let neg = koszul_sign(sigma, &degs);
            for t in terms {
                let derivs: Derivs = (0..n).map(|j| t.derivs[sigma.image(j)]).collect();
                b.add(&w, t.out, &derivs, signed(neg, t.coeff.clone()));
            }
        }
        b.build(&self.carrier, self.arity, self.degree)
    }

    /// Partial composition `f∘_i g` with 1-based `i`:
    /// `(f∘_i g)(v) = (-1)^{|g|(|v_1|+…+|v_{i-1}|)} f(v_1,…,g(v_i,…),…)`.
    pub fn compose_at(&self, i: usize, g: &MultiMap) -> Result<MultiMap> {
        self.require_same(g)?;
        if i == 0 || i > self.arity {
            return Err(Error::Position {
                pos: i,
                arity: self.arity,
            });
        }
        let n = self.arity + g.arity - 1;
        let mut b = RuleBuilder::new();
        let mut by_out: HashMap<Sym, Vec<(&SymWord, &OpTerm)>> = HashMap::new();
        for (v, terms) in g.rules.iter() {
            for t in terms {
                by_out.entry(t.out).or_default().push((v, t));
            }
        }
        let g_odd = parity(g.degree as i64);
        let pos = i - 1;
        for (u, f_terms) in self.rules.iter() {
            let Some(inner) = by_out.get(&u[pos]) else {
                continue;
            };
            let prefix: i64 = u[..pos]
                .iter()
                .map(|&s| self.carrier.degree(s) as i64)
                .sum();
            let neg = g_odd && parity(prefix);
            for (v, gt) in inner {
                let mut word: SymWord = SmallVec::with_capacity(n);
                word.extend_from_slice(&u[..pos]);
                word.extend_from_slice(v);
                word.extend_from_slice(&u[pos + 1..]);
                for ft in f_terms {
                    let c = signed(neg, &ft.coeff * &gt.coeff);
                    for (k, split) in distribute(&ft.derivs[pos], g.arity) {
                        let mut derivs: Derivs = SmallVec::with_capacity(n);
                        derivs.extend_from_slice(&ft.derivs[..pos]);
                        derivs.extend(gt.derivs.iter().zip(&split).map(|(a, s)| a.mul(s)));
                        derivs.extend_from_slice(&ft.derivs[pos + 1..]);
                        let kc = &c * Rational::from_integer(k.into());
                        b.add(&word, ft.out, &derivs, kc);
                    }
                }
            }
        }
        b.build(&self.carrier, n, self.degree + g.degree)
    }

    /// `f∘g` for unary `f`.
    pub fn after(&self, g: &MultiMap) -> Result<MultiMap> {
        self.compose_at(1, g)
    }

    /// `Σ c_j f_j`; all maps must share carrier, arity, and degree.
    pub fn linear_combination(parts: &[(Rational, &MultiMap)]) -> Result<MultiMap> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| Error::Shape("empty linear combination".into()))?;
        let mut b = RuleBuilder::new();
        for (c, f) in parts {
            first.require_same(f)?;
            if f.arity != first.arity {
                return Err(Error::Arity {
                    expected: first.arity,
                    got: f.arity,
                });
            }
            if f.degree != first.degree {
                return Err(Error::Degree(format!(
                    "cannot add maps of degree {} and {}",
                    first.degree, f.degree
                )));
            }
            if c.is_zero() {
                continue;
            }
            for (w, terms) in f.rules.iter() {
                for t in terms {
                    b.add(w, t.out, &t.derivs, c * &t.coeff);
                }
            }
        }
        b.build(&first.carrier, first.arity, first.degree)
    }

    pub fn add(&self, other: &MultiMap) -> Result<MultiMap> {
        Self::linear_combination(&[(Rational::one(), self), (Rational::one(), other)])
    }

    pub fn sub(&self, other: &MultiMap) -> Result<MultiMap> {
        Self::linear_combination(&[(Rational::one(), self), (-Rational::one(), other)])
    }

    pub fn scale(&self, c: &Rational) -> MultiMap {
        Self::linear_combination(&[(c.clone(), self)]).expect("scaling preserves shape")
    }

    /// Smallest basis word (with monomials) on which the map is nonzero, and the value.
    ///
    /// The monomials are chosen equal to the derivative pattern of the first rule term,
    /// which makes the constant part of that output coefficient nonzero.
    pub fn witness(&self) -> Option<(Vec<Basis>, Element)> {
        let (u, terms) = self.rules.iter().next()?;
        let t = &terms[0];
        let w: Vec<Basis> = u
            .iter()
            .zip(&t.derivs)
            .map(|(&s, d)| self.carrier.basis(s, *d))
            .collect();
        let v = self.eval_word(&w).expect("arity matches");
        debug_assert!(!v.is_zero());
        Some((w, v))
    }

    /// Pointwise comparison on every word of total polynomial degree `≤ poly_degree`.
    /// Returns the first word where the maps differ.
    pub fn first_difference(
        &self,
        other: &MultiMap,
        poly_degree: u32,
    ) -> Result<Option<(Vec<Basis>, Element, Element)>> {
        self.require_same(other)?;
        if self.arity != other.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: other.arity,
            });
        }
        for w in self.carrier.words(self.arity, poly_degree) {
            let a = self.eval_word(&w)?;
            let b = other.eval_word(&w)?;
            if a != b {
                return Ok(Some((w, a, b)));
            }
        }
        Ok(None)
    }

    /// Human-readable rule listing.
    pub fn render(&self) -> String {
        let c = &self.carrier;
        let mut lines = Vec::new();
        for (u, terms) in self.rules.iter() {
            let lhs: Vec<&str> = u.iter().map(|&s| c.name(s)).collect();
            let mut rhs = Vec::new();
            for t in terms {
                let mut s = format!("{}·{}", t.coeff, c.name(t.out));
                if t.derivs.iter().any(|d| !d.is_one()) {
                    let ds: Vec<String> = t
                        .derivs
                        .iter()
                        .map(|d| {
                            if d.is_one() {
                                "id".to_string()
                            } else {
                                format!("∂[{}]", d.render(c.vars()))
                            }
                        })
                        .collect();
                    s.push_str(&format!("({})", ds.join("⊗")));
                }
                rhs.push(s);
            }
            lines.push(format!("{} ↦ {}", lhs.join("⊗"), rhs.join(" + ")));
        }
        lines.join("\n")
    }
}

/// Leibniz rule: all ways to split the multi-index `beta` across `m` factors,
/// with multinomial weights.
fn distribute(beta: &Mono, m: usize) -> Vec<(u64, Vec<Mono>)> {
    let mut out = vec![(1u64, vec![Mono::ONE; m])];
    if beta.is_one() {
        return out;
    }
    for k in 0..super::MAX_VARS {
        let e = beta.0[k];
        if e == 0 {
            continue;
        }
        let mut next = Vec::new();
        for (w, parts) in &out {
            for comp in compositions(e, m) {
                let coef = *w * multinomial(e, &comp);
                let mut p = parts.clone();
                for (j, &c) in comp.iter().enumerate() {
                    p[j].0[k] += c;
                }
                next.push((coef, p));
            }
        }
        out = next;
    }
    out
}

fn compositions(total: u8, parts: usize) -> Vec<Vec<u8>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn multinomial(total: u8, parts: &[u8]) -> u64 {
    let fact = |n: u8| (1..=n as u64).product::<u64>();
    parts.iter().fold(fact(total), |acc, &p| acc / fact(p))
}

/// `f⋆g = Σ_i f∘_i g`.
pub fn pre_lie(f: &MultiMap, g: &MultiMap) -> Result<MultiMap> {
    let parts: Vec<MultiMap> = (1..=f.arity)
        .map(|i| f.compose_at(i, g))
        .collect::<Result<_>>()?;
    let refs: Vec<(Rational, &MultiMap)> = parts.iter().map(|p| (Rational::one(), p)).collect();
    MultiMap::linear_combination(&refs)
}

/// `[f,g] = f⋆g − (−1)^{|f||g|} g⋆f`.
pub fn insertion_bracket(f: &MultiMap, g: &MultiMap) -> Result<MultiMap> {
    let fg = pre_lie(f, g)?;
    let gf = pre_lie(g, f)?;
    let c = signed(!parity(f.degree as i64 * g.degree as i64), Rational::one());
    MultiMap::linear_combination(&[(Rational::one(), &fg), (c, &gf)])
}

/// `d_Hom(f) = d∘f − (−1)^{|f|} f⋆d`. Rejects `d` unless it is a unary degree +1
/// square-zero map.
pub fn hom_differential(d: &MultiMap, f: &MultiMap) -> Result<MultiMap> {
    if d.arity != 1 {
        return Err(Error::Arity {
            expected: 1,
            got: d.arity,
        });
    }
    if d.degree != 1 {
        return Err(Error::Degree(format!(
            "differential has degree {}, expected 1",
            d.degree
        )));
    }
    if !d.after(d)?.is_zero() {
        return Err(Error::NotSquareZero("d∘d ≠ 0".into()));
    }
    insertion_bracket(d, f)
}
