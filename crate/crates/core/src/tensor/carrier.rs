use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Upper bound on the number of polynomial variables.
pub const MAX_VARS: usize = 8;

/// Index of a basis symbol in its carrier.
pub type Sym = u8;

/// Exponent vector of a monomial in the coefficient variables. Also used as a
/// derivative multi-index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(pub [u8; MAX_VARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAX_VARS]);

    pub fn var(k: usize) -> Mono {
        let mut m = Mono::ONE;
        m.0[k] = 1;
        m
    }

    pub fn from_exponents(e: &[u8]) -> Mono {
        let mut m = Mono::ONE;
        m.0[..e.len()].copy_from_slice(e);
        m
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; MAX_VARS]
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        m
    }

    /// Applies the derivative with multi-index `self` to the monomial `x`.
    /// Returns the falling-factorial factor and the resulting monomial.
    pub fn differentiate(&self, x: &Mono) -> Option<(u64, Mono)> {
        let mut factor = 1u64;
        let mut out = *x;
        for k in 0..MAX_VARS {
            let (d, e) = (self.0[k], x.0[k]);
            if d > e {
                return None;
            }
            for j in 0..d {
                factor *= (e - j) as u64;
            }
            out.0[k] = e - d;
        }
        Some((factor, out))
    }

    /// All monomials in `vars` variables of total degree at most `max`.
    pub fn all_up_to(vars: usize, max: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = Mono::ONE;
        fn rec(k: usize, vars: usize, left: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
            if k == vars {
                out.push(*cur);
                return;
            }
            for e in 0..=left {
                cur.0[k] = e as u8;
                rec(k + 1, vars, left - e, cur, out);
            }
            cur.0[k] = 0;
        }
        rec(0, vars, max, &mut cur, &mut out);
        out.sort_by_key(|m| (m.total(), std::cmp::Reverse(*m)));
        out
    }

    pub fn render(&self, vars: usize) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for k in 0..vars.max(1) {
            match self.0[k] {
                0 => {}
                1 => parts.push(format!("x{k}")),
                e => parts.push(format!("x{k}^{e}")),
            }
        }
        parts.join("*")
    }
}

/// One tensor factor: a basis symbol times a monomial coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis {
    pub sym: Sym,
    pub deg: i32,
    pub mono: Mono,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Scalars,
    /// Polynomials in `metric.len()` commuting variables; the metric is diagonal.
    Polynomial {
        metric: Vec<i8>,
    },
}

/// A finite graded basis over the rationals, optionally tensored with polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCarrier {
    names: Vec<String>,
    degrees: Vec<i32>,
    coeffs: Coefficients,
}

impl GradedCarrier {
    pub fn new<S: Into<String>>(basis: Vec<(S, i32)>) -> Result<Self> {
        Self::build(basis, Coefficients::Scalars)
    }

    pub fn polynomial<S: Into<String>>(basis: Vec<(S, i32)>, metric: Vec<i8>) -> Result<Self> {
        if metric.is_empty() || metric.len() > MAX_VARS {
            return Err(Error::Carrier(format!(
                "polynomial dimension must be in 1..={MAX_VARS}"
            )));
        }
        if metric.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Carrier("metric entries must be +1 or -1".into()));
        }
        Self::build(basis, Coefficients::Polynomial { metric })
    }

    fn build<S: Into<String>>(basis: Vec<(S, i32)>, coeffs: Coefficients) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Carrier("empty basis".into()));
        }
        if basis.len() > Sym::MAX as usize + 1 {
            return Err(Error::Carrier("too many basis symbols".into()));
        }
        let (names, degrees): (Vec<String>, Vec<i32>) =
            basis.into_iter().map(|(s, d)| (s.into(), d)).unzip();
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::Carrier(format!("duplicate symbol {n}")));
            }
        }
        Ok(GradedCarrier {
            names,
            degrees,
            coeffs,
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn degree(&self, s: Sym) -> i32 {
        self.degrees[s as usize]
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.names[s as usize]
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> {
        (0..self.names.len()).map(|s| s as Sym)
    }

    pub fn index_of(&self, name: &str) -> Option<Sym> {
        self.names.iter().position(|n| n == name).map(|i| i as Sym)
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coeffs
    }

    /// Number of polynomial variables (0 for scalar carriers).
    pub fn vars(&self) -> usize {
        match &self.coeffs {
            Coefficients::Scalars => 0,
            Coefficients::Polynomial { metric } => metric.len(),
        }
    }

    pub fn metric(&self) -> Option<&[i8]> {
        match &self.coeffs {
            Coefficients::Scalars => None,
            Coefficients::Polynomial { metric } => Some(metric),
        }
    }

    pub fn basis(&self, sym: Sym, mono: Mono) -> Basis {
        Basis {
            sym,
            deg: self.degree(sym),
            mono,
        }
    }

    /// Every word of the given arity whose factors carry monomials of total degree
    /// (summed over the word) at most `poly_degree`.
    pub fn words(&self, arity: usize, poly_degree: u32) -> Vec<Vec<Basis>> {
        let monos = Mono::all_up_to(self.vars(), poly_degree);
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(arity);
        self.words_rec(arity, poly_degree, &monos, &mut cur, &mut out);
        out
    }

    fn words_rec(
        &self,
        arity: usize,
        left: u32,
        monos: &[Mono],
        cur: &mut Vec<Basis>,
        out: &mut Vec<Vec<Basis>>,
    ) {
        if cur.len() == arity {
            out.push(cur.clone());
            return;
        }
        for s in self.symbols() {
            for m in monos.iter().filter(|m| m.total() <= left) {
                cur.push(self.basis(s, *m));
                self.words_rec(arity, left - m.total(), monos, cur, out);
                cur.pop();
            }
        }
    }

    pub fn render_basis(&self, b: &Basis) -> String {
        if self.vars() == 0 || b.mono.is_one() {
            self.name(b.sym).to_string()
        } else {
            format!("{}*{}", self.name(b.sym), b.mono.render(self.vars()))
        }
    }
}

impl fmt::Display for GradedCarrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syms: Vec<String> = self
            .names
            .iter()
            .zip(&self.degrees)
            .map(|(n, d)| format!("{n}:{d}"))
            .collect();
        write!(f, "[{}]", syms.join(", "))?;
        if let Some(m) = self.metric() {
            write!(f, " over Q[x0..x{}] metric {:?}", m.len() - 1, m)?;
        }
        Ok(())
    }
}
