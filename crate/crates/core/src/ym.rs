//! The Yang-Mills kinematic algebra on `Z ⊗ O`, with `O` the polynomials on
//! Minkowski space, as a truncated generating set, and its verification suite.
//!
//! Basis symbols: `t+` (0), `t0..t{d-1}` (1), `t-` (2), `st+` (1), `st0..` (2),
//! `st-` (3).

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::homotopy::{
    ainfty_pointwise_entry, check_cinfty, classify, obstruction, symmetry_violations,
    validate_symmetries, GeneratingKey, GeneratingSet, ObstructionKey,
};
use crate::report::{witness_of, CheckEntry, Report};
use crate::sample::{random_admissible, SampleConfig};
use crate::strict::box_operator;
use crate::tensor::{
    insertion_bracket, parity, q, GradedCarrier, Mono, MultiMap, Permutation, Rational,
    RuleBuilder, Sym,
};

pub const DEFAULT_DIM: usize = 4;

/// Reading of the last coefficient of the cubic product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CubicVariant {
    /// `sθ_ρ η_{νν}` as printed.
    Printed,
    /// `sθ_ρ η_{μν}`.
    #[default]
    MuNu,
}

/// Overall sign of the cubic product relative to the printed table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CubicSign {
    AsPrinted,
    /// Negated; needed for the arity-3 relation with the signs `(−1)^{r+st}`.
    #[default]
    Opposite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CubicReading {
    pub variant: CubicVariant,
    pub sign: CubicSign,
}

impl CubicReading {
    /// The table exactly as printed.
    pub const LITERAL: CubicReading = CubicReading {
        variant: CubicVariant::Printed,
        sign: CubicSign::AsPrinted,
    };
}

/// Symbol layout of the carrier.
#[derive(Clone, Copy, Debug)]
struct Theta {
    dim: usize,
}

impl Theta {
    fn plus(&self) -> Sym {
        0
    }
    fn vec(&self, mu: usize) -> Sym {
        (1 + mu) as Sym
    }
    fn minus(&self) -> Sym {
        (self.dim + 1) as Sym
    }
    fn s_plus(&self) -> Sym {
        (self.dim + 2) as Sym
    }
    fn s_vec(&self, mu: usize) -> Sym {
        (self.dim + 3 + mu) as Sym
    }
    fn s_minus(&self) -> Sym {
        (2 * self.dim + 3) as Sym
    }
}

fn eta(dim: usize) -> Vec<i8> {
    let mut e = vec![-1; dim];
    e[0] = 1;
    e
}

fn eta_q(e: &[i8], mu: usize, nu: usize) -> Rational {
    if mu == nu {
        q(e[mu] as i64)
    } else {
        Rational::zero()
    }
}

pub fn ym_carrier(dim: usize) -> Result<Arc<GradedCarrier>> {
    if !(2..=6).contains(&dim) {
        return Err(Error::Carrier(format!(
            "dimension must be 2..=6, got {dim}"
        )));
    }
    let mut basis = vec![("t+".to_string(), 0)];
    basis.extend((0..dim).map(|mu| (format!("t{mu}"), 1)));
    basis.push(("t-".into(), 2));
    basis.push(("st+".into(), 1));
    basis.extend((0..dim).map(|mu| (format!("st{mu}"), 2)));
    basis.push(("st-".into(), 3));
    Ok(Arc::new(GradedCarrier::polynomial(basis, eta(dim))?))
}

fn d1(mu: usize) -> Mono {
    Mono::var(mu)
}

fn d2(mu: usize) -> Mono {
    Mono::var(mu).mul(&Mono::var(mu))
}

fn differential(c: &Arc<GradedCarrier>, th: Theta) -> Result<MultiMap> {
    let e = eta(th.dim);
    let mut rb = RuleBuilder::new();
    let boxed = |rb: &mut RuleBuilder, from: Sym, to: Sym, sign: i64| {
        for (mu, &em) in e.iter().enumerate() {
            rb.add(&[from], to, &[d2(mu)], q(sign * em as i64));
        }
    };
    for mu in 0..th.dim {
        let up = q(e[mu] as i64);
        rb.add(&[th.plus()], th.vec(mu), &[d1(mu)], up.clone());
        rb.add(&[th.s_plus()], th.s_vec(mu), &[d1(mu)], -up);
        boxed(&mut rb, th.vec(mu), th.s_vec(mu), 1);
        rb.add(&[th.vec(mu)], th.minus(), &[d1(mu)], q(1));
        rb.add(&[th.s_vec(mu)], th.s_minus(), &[d1(mu)], q(-1));
    }
    boxed(&mut rb, th.plus(), th.s_plus(), 1);
    rb.add_plain(&[th.s_plus()], th.minus(), q(-1));
    boxed(&mut rb, th.minus(), th.s_minus(), 1);
    rb.build(c, 1, 1)
}

/// Adds a rule for `(x, y)` and, when `x ≠ y`, the rule for `(y, x)` forced by
/// graded symmetry.
struct SymmetricBuilder<'a> {
    rb: RuleBuilder,
    carrier: &'a GradedCarrier,
}

impl SymmetricBuilder<'_> {
    fn add(&mut self, x: Sym, y: Sym, out: Sym, dx: Mono, dy: Mono, c: Rational) {
        self.rb.add(&[x, y], out, &[dx, dy], c.clone());
        if x != y {
            let neg = parity(self.carrier.degree(x) as i64 * self.carrier.degree(y) as i64);
            self.rb
                .add(&[y, x], out, &[dy, dx], if neg { -c } else { c });
        }
    }
}

fn product(c: &Arc<GradedCarrier>, th: Theta) -> Result<MultiMap> {
    let e = eta(th.dim);
    let one = Mono::ONE;
    let mut sb = SymmetricBuilder {
        rb: RuleBuilder::new(),
        carrier: c,
    };
    sb.add(th.plus(), th.plus(), th.plus(), one, one, q(1));
    sb.add(th.plus(), th.s_minus(), th.s_minus(), one, one, q(1));
    for mu in 0..th.dim {
        sb.add(th.plus(), th.vec(mu), th.vec(mu), one, one, q(1));
        sb.add(th.plus(), th.vec(mu), th.s_plus(), d1(mu), one, q(1));
        sb.add(th.plus(), th.vec(mu), th.s_plus(), one, d1(mu), q(1));
        sb.add(
            th.plus(),
            th.minus(),
            th.s_vec(mu),
            one,
            d1(mu),
            q(-(e[mu] as i64)),
        );
        sb.add(th.plus(), th.s_vec(mu), th.s_vec(mu), one, one, q(1));
        sb.add(th.vec(mu), th.minus(), th.s_minus(), one, d1(mu), q(1));
        for nu in 0..th.dim {
            sb.add(
                th.vec(mu),
                th.s_vec(nu),
                th.s_minus(),
                one,
                one,
                -eta_q(&e, mu, nu),
            );
        }
    }
    // both orders of the vector-vector entry are listed, so no completion
    let mut rb = sb.rb;
    for mu in 0..th.dim {
        for nu in 0..th.dim {
            let (x, y) = (th.vec(mu), th.vec(nu));
            rb.add(&[x, y], th.s_vec(nu), &[d1(mu), one], q(1));
            rb.add(&[x, y], th.s_vec(nu), &[one, d1(mu)], q(2));
            rb.add(&[x, y], th.s_vec(mu), &[one, d1(nu)], q(-1));
            rb.add(&[x, y], th.s_vec(mu), &[d1(nu), one], q(-2));
            let g = eta_q(&e, mu, nu);
            if g.is_zero() {
                continue;
            }
            for rho in 0..th.dim {
                let c = &g * q(e[rho] as i64);
                rb.add(&[x, y], th.s_vec(rho), &[d1(rho), one], c.clone());
                rb.add(&[x, y], th.s_vec(rho), &[one, d1(rho)], -c);
            }
        }
    }
    rb.build(c, 2, 0)
}

fn cubic(c: &Arc<GradedCarrier>, th: Theta, reading: CubicReading) -> Result<MultiMap> {
    let e = eta(th.dim);
    let overall = match reading.sign {
        CubicSign::AsPrinted => q(1),
        CubicSign::Opposite => q(-1),
    };
    let mut rb = RuleBuilder::new();
    for mu in 0..th.dim {
        for nu in 0..th.dim {
            for rho in 0..th.dim {
                let w = [th.vec(mu), th.vec(nu), th.vec(rho)];
                rb.add_plain(&w, th.s_vec(mu), &overall * eta_q(&e, nu, rho));
                rb.add_plain(&w, th.s_vec(nu), &overall * q(-2) * eta_q(&e, mu, rho));
                let last = match reading.variant {
                    CubicVariant::Printed => q(e[nu] as i64),
                    CubicVariant::MuNu => eta_q(&e, mu, nu),
                };
                rb.add_plain(&w, th.s_vec(rho), &overall * last);
            }
        }
    }
    rb.build(c, 3, -1)
}

fn unshift(c: &Arc<GradedCarrier>, th: Theta) -> Result<MultiMap> {
    let mut rb = RuleBuilder::new();
    rb.add_plain(&[th.s_plus()], th.plus(), q(1));
    rb.add_plain(&[th.s_minus()], th.minus(), q(1));
    for mu in 0..th.dim {
        rb.add_plain(&[th.s_vec(mu)], th.vec(mu), q(1));
    }
    rb.build(c, 1, -1)
}

fn key(t: u32, p: &[usize]) -> GeneratingKey {
    GeneratingKey::new(t, p.to_vec()).expect("valid key")
}

fn okey(t: u32, p: &[usize]) -> ObstructionKey {
    ObstructionKey::new(t, p.to_vec()).expect("valid key")
}

fn swap13() -> Permutation {
    Permutation::from_one_line(&[3, 2, 1]).expect("valid")
}

/// The weight-0 row `m₁, m₂, m₃`, truncated at weight 2.
pub fn ym_row(dim: usize, reading: CubicReading) -> Result<GeneratingSet> {
    let c = ym_carrier(dim)?;
    let th = Theta { dim };
    let mut set = GeneratingSet::new(c.clone(), Some(2));
    set.insert(key(0, &[1]), differential(&c, th)?)?;
    set.insert(key(0, &[2]), product(&c, th)?)?;
    set.insert(key(0, &[3]), cubic(&c, th, reading)?)?;
    Ok(set)
}

/// The full generating set: the row, `m¹₁`, `m⁰₁,₁ = [m¹₁, m⁰₂]`,
/// `m⁰₁,₂ = θ₃∘(13)`, `m⁰₁,₁,₁ = [m¹₁, m⁰₁,₂]`, and zero elsewhere up to weight 2.
/// A missing `θ₃` is zero.
pub fn build_ym(
    dim: usize,
    theta3: Option<&MultiMap>,
    reading: CubicReading,
) -> Result<GeneratingSet> {
    let mut set = ym_row(dim, reading)?;
    let c = set.carrier().clone();
    let th = Theta { dim };
    let m11 = unshift(&c, th)?;
    let m2 = set.get(&key(0, &[2]))?;
    let m0_11 = insertion_bracket(&m11, &m2)?;
    let m0_12 = match theta3 {
        None => MultiMap::zero(&c, 3, -2),
        Some(t) => {
            if t.arity() != 3 || t.degree() != -2 {
                return Err(Error::Shape(format!(
                    "θ₃ must have arity 3 and degree -2, got arity {} and degree {}",
                    t.arity(),
                    t.degree()
                )));
            }
            if **t.carrier() != *c {
                return Err(Error::CarrierMismatch);
            }
            t.act(&swap13())?
        }
    };
    let k12 = key(0, &[1, 2]);
    if let Some(v) = symmetry_violations(&k12, &m0_12, set.block_sign())?.first() {
        return Err(Error::Symmetry(format!(
            "θ₃∘(13): {} ({})",
            v.kind, v.witness
        )));
    }
    let m0_111 = insertion_bracket(&m11, &m0_12)?;
    set.insert(key(1, &[1]), m11)?;
    set.insert(key(0, &[1, 1]), m0_11)?;
    set.insert(k12, m0_12)?;
    set.insert(key(0, &[1, 1, 1]), m0_111)?;
    set.fill_zeros_up_to(2);
    Ok(set)
}

/// A random `θ₃` for which `θ₃∘(13)` has the symmetries of `m⁰₁,₂`.
pub fn random_theta3<R: Rng>(rng: &mut R, dim: usize) -> Result<MultiMap> {
    let c = ym_carrier(dim)?;
    let cfg = SampleConfig {
        density: 0.05,
        ..SampleConfig::default()
    };
    let set = GeneratingSet::new(c.clone(), None);
    let m = random_admissible(rng, &c, &key(0, &[1, 2]), set.block_sign(), &cfg)?;
    m.act(&swap13())
}

/// What `verify_ym` runs.
#[derive(Clone, Copy, Debug)]
pub struct YmCheckConfig {
    /// Highest arity of the A∞ relations.
    pub max_arity: usize,
    /// Total polynomial degree of the words used by the pointwise checks.
    pub max_poly_degree: u32,
    /// Highest arity of the pointwise A∞ cross-check.
    pub pointwise_arity: usize,
}

impl Default for YmCheckConfig {
    fn default() -> Self {
        YmCheckConfig {
            max_arity: 5,
            max_poly_degree: 3,
            pointwise_arity: 2,
        }
    }
}

fn combination(parts: &[(i64, &MultiMap)]) -> Result<MultiMap> {
    let refs: Vec<(Rational, &MultiMap)> = parts.iter().map(|(c, m)| (q(*c), *m)).collect();
    MultiMap::linear_combination(&refs)
}

/// Checks the claims about the generating set: the C₍₂₎ relations, symmetries,
/// `n¹₁ = □`, the vanishing obstructions, and the simplified forms of `n¹₃` and
/// `n¹₁,₁,₁`. Those two forms depend on `θ₃` and are asserted only when
/// `m⁰₁,₂ = 0`.
pub fn verify_ym(set: &GeneratingSet, cfg: YmCheckConfig) -> Result<Report> {
    let c = set.carrier().clone();
    let mut report = check_cinfty(set, cfg.max_arity)?;
    report.title = "Yang-Mills kinematic algebra".into();

    for n in 1..=cfg.pointwise_arity.min(cfg.max_arity) {
        report.push(ainfty_pointwise_entry(set, n, cfg.max_poly_degree)?);
    }

    let violations = validate_symmetries(set);
    report.push(match violations.first() {
        None => CheckEntry::pass("symmetries", "block and shuffle symmetries hold"),
        Some(v) => CheckEntry::fail(
            "symmetries",
            format!("{}: {}", v.key, v.kind),
            Some(v.witness.clone()),
        ),
    });

    let n11 = obstruction(set, &okey(1, &[1]))?;
    let boxed = box_operator(&c)?;
    report.push(CheckEntry::vanishing("n^1_1 = box", &n11.sub(&boxed)?));
    let id = "n^1_1 = box pointwise";
    report.push(match n11.first_difference(&boxed, cfg.max_poly_degree)? {
        None => CheckEntry::pass(
            id,
            format!("equal up to polynomial degree {}", cfg.max_poly_degree),
        ),
        Some((w, a, b)) => CheckEntry::fail(
            id,
            "differs",
            Some(format!(
                "{}: {} vs {}",
                c.render_basis(&w[0]),
                a.render(&c),
                b.render(&c)
            )),
        ),
    });

    for (t, p) in [
        (1, vec![2]),
        (2, vec![1]),
        (1, vec![1, 1]),
        (1, vec![1, 2]),
        (2, vec![1, 1]),
        (2, vec![2]),
        (3, vec![1]),
    ] {
        let k = okey(t, &p);
        report.push(CheckEntry::vanishing(
            format!("{k} = 0"),
            &obstruction(set, &k)?,
        ));
    }

    let m11 = set.get(&key(1, &[1]))?;
    let m03 = set.get(&key(0, &[3]))?;
    let m012 = set.get(&key(0, &[1, 2]))?;
    let m021 = set.get(&key(0, &[2, 1]))?;
    let n13 = obstruction(set, &okey(1, &[3]))?;
    let br = insertion_bracket(&m11, &m03)?;
    let printed = n13.sub(&combination(&[(1, &br), (-1, &m012), (-1, &m021)])?)?;
    let entry = CheckEntry::vanishing("n^1_3 = [m^1_1, m^0_3] - m^0_{1,2} - m^0_{2,1}", &printed);
    if m012.is_zero() {
        report.push(entry);
    } else {
        report.push(entry.as_info());
        let corrected = n13.sub(&combination(&[(1, &br), (-1, &m012), (1, &m021)])?)?;
        report.push(
            CheckEntry::vanishing("n^1_3 = [m^1_1, m^0_3] - m^0_{1,2} + m^0_{2,1}", &corrected)
                .as_info(),
        );
    }

    let m0111 = set.get(&key(0, &[1, 1, 1]))?;
    let n1111 = obstruction(set, &okey(1, &[1, 1, 1]))?;
    let entry = CheckEntry::vanishing(
        "n^1_{1,1,1} = [m^1_1, m^0_{1,1,1}]",
        &n1111.sub(&insertion_bracket(&m11, &m0111)?)?,
    );
    report.push(if m012.is_zero() {
        entry
    } else {
        entry.as_info()
    });

    for k in [okey(0, &[1, 1]), okey(0, &[1, 2]), okey(0, &[1, 1, 1])] {
        let n = obstruction(set, &k)?;
        let detail = if n.is_zero() { "vanishes" } else { "nonzero" };
        report.push(CheckEntry::info(format!("{k}"), detail, witness_of(&n)));
    }

    let cl = classify(set, 2)?;
    let id = "cBV(2), not BV";
    report.push(if cl.is_cbv && !cl.is_bv {
        CheckEntry::pass(id, "truncated at weight 2 with n^1_1 nonzero")
    } else {
        CheckEntry::fail(id, format!("cbv={} bv={}", cl.is_cbv, cl.is_bv), None)
    });
    Ok(report)
}
