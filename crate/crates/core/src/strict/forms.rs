//! Differential forms with polynomial coefficients on a flat space.
//!
//! The basis symbol of `dx^I` is the bitmask of `I`; `1` has degree 0.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::StrictStructure;
use crate::error::{Error, Result};
use crate::tensor::{
    insertion_bracket, q, GradedCarrier, Mono, MultiMap, Rational, RuleBuilder, Sym,
};

fn form_name(mask: usize, dim: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..dim)
        .filter(|k| mask >> k & 1 == 1)
        .map(|k| format!("dx{k}"))
        .collect()
}

/// `(−1)^{#{i ∈ I : i < mu}}`.
fn pass_sign(mask: usize, mu: usize) -> Rational {
    if (mask & ((1 << mu) - 1)).count_ones() % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    }
}

fn forms_carrier(dim: usize, signature: &[i8]) -> Result<Arc<GradedCarrier>> {
    if dim == 0 || dim > 6 || signature.len() != dim {
        return Err(Error::Carrier(format!(
            "forms need 1 <= dim <= 6 and one signature entry per coordinate, got dim {dim}"
        )));
    }
    let basis = (0..1usize << dim)
        .map(|m| (form_name(m, dim), m.count_ones() as i32))
        .collect();
    Ok(Arc::new(GradedCarrier::polynomial(
        basis,
        signature.to_vec(),
    )?))
}

fn wedge(c: &Arc<GradedCarrier>, dim: usize) -> Result<MultiMap> {
    let mut rb = RuleBuilder::new();
    for a in 0..1usize << dim {
        for b in 0..1usize << dim {
            if a & b != 0 {
                continue;
            }
            let inversions: u32 = (0..dim)
                .filter(|j| b >> j & 1 == 1)
                .map(|j| (a >> (j + 1)).count_ones())
                .sum();
            let coeff = if inversions % 2 == 1 { q(-1) } else { q(1) };
            rb.add_plain(&[a as Sym, b as Sym], (a | b) as Sym, coeff);
        }
    }
    rb.build(c, 2, 0)
}

fn exterior_derivative(c: &Arc<GradedCarrier>, dim: usize) -> Result<MultiMap> {
    let mut rb = RuleBuilder::new();
    for a in 0..1usize << dim {
        for mu in (0..dim).filter(|mu| a >> mu & 1 == 0) {
            rb.add(
                &[a as Sym],
                (a | 1 << mu) as Sym,
                &[Mono::var(mu)],
                pass_sign(a, mu),
            );
        }
    }
    rb.build(c, 1, 1)
}

fn codifferential(c: &Arc<GradedCarrier>, dim: usize, signature: &[i8]) -> Result<MultiMap> {
    let mut rb = RuleBuilder::new();
    for a in 0..1usize << dim {
        for mu in (0..dim).filter(|mu| a >> mu & 1 == 1) {
            let coeff = pass_sign(a, mu) * q(signature[mu] as i64);
            rb.add(
                &[a as Sym],
                (a & !(1 << mu)) as Sym,
                &[Mono::var(mu)],
                coeff,
            );
        }
    }
    rb.build(c, 1, -1)
}

/// Forms on `R^dim` with exterior derivative, wedge product, and the
/// codifferential of the flat metric of the given signature as `△`.
/// `[d, △]` is the wave operator on coefficients.
pub fn build_de_rham(dim: usize, signature: &[i8]) -> Result<StrictStructure> {
    let c = forms_carrier(dim, signature)?;
    let d = exterior_derivative(&c, dim)?;
    let m = wedge(&c, dim)?;
    let delta = codifferential(&c, dim, signature)?;
    let sig: String = signature
        .iter()
        .map(|&s| if s < 0 { '-' } else { '+' })
        .collect();
    StrictStructure::new(format!("de Rham R^{dim} ({sig})"), d, m, Some(delta), None)
}

/// Forms on `R^dim` with contraction `∇ = ι_π` by a constant bivector, given as an
/// antisymmetric matrix, and `△ = [d, ∇]`.
pub fn build_poisson(dim: usize, pi: &[Vec<Rational>]) -> Result<StrictStructure> {
    if pi.len() != dim || pi.iter().any(|r| r.len() != dim) {
        return Err(Error::Shape(format!("bivector must be {dim}x{dim}")));
    }
    for i in 0..dim {
        for j in 0..dim {
            if pi[i][j] != -pi[j][i].clone() {
                return Err(Error::Symmetry("bivector is not antisymmetric".into()));
            }
        }
    }
    let c = forms_carrier(dim, &vec![1; dim])?;
    let d = exterior_derivative(&c, dim)?;
    let m = wedge(&c, dim)?;
    let mut rb = RuleBuilder::new();
    for a in 0..1usize << dim {
        for mu in 0..dim {
            for nu in mu + 1..dim {
                if pi[mu][nu].is_zero() || a >> mu & 1 == 0 || a >> nu & 1 == 0 {
                    continue;
                }
                let after_nu = a & !(1 << nu);
                let sign = pass_sign(a, nu) * pass_sign(after_nu, mu);
                rb.add_plain(
                    &[a as Sym],
                    (after_nu & !(1 << mu)) as Sym,
                    sign * &pi[mu][nu],
                );
            }
        }
    }
    let nabla = rb.build(&c, 1, -2)?;
    let delta = insertion_bracket(&d, &nabla)?;
    StrictStructure::new(format!("Poisson R^{dim}"), d, m, Some(delta), Some(nabla))
}

/// `Σ_μ η^{μμ} ∂_μ²` on the coefficients of every basis element.
pub fn box_operator(c: &Arc<GradedCarrier>) -> Result<MultiMap> {
    let metric = c
        .metric()
        .ok_or_else(|| Error::Carrier("wave operator needs polynomial coefficients".into()))?;
    let mut rb = RuleBuilder::new();
    for s in c.symbols() {
        for (mu, &eta) in metric.iter().enumerate() {
            rb.add(&[s], s, &[Mono::var(mu).mul(&Mono::var(mu))], q(eta as i64));
        }
    }
    rb.build(c, 1, 0)
}

/// The constant-coefficient derivative `∂^mono` on the coefficients of every basis
/// element; of order `mono.total()`.
pub fn constant_operator(c: &Arc<GradedCarrier>, mono: Mono) -> Result<MultiMap> {
    let mut rb = RuleBuilder::new();
    for s in c.symbols() {
        rb.add(&[s], s, &[mono], Rational::one());
    }
    rb.build(c, 1, 0)
}
