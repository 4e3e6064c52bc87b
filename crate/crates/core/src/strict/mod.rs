//! Strict commutative, coexact BV, BV and exact BV algebras: relation checkers,
//! derived brackets, tensor products, and polynomial differential-form instances.

mod forms;

use std::sync::Arc;

use num_traits::One;

pub use forms::{box_operator, build_de_rham, build_poisson, constant_operator};

use crate::error::{Error, Result};
use crate::report::{CheckEntry, Report};
use crate::tensor::{
    insertion_bracket, parity, GradedCarrier, Mono, MultiMap, Permutation, Rational, RuleBuilder,
    Sym,
};

/// `(A, d, m)` with an optional degree −1 operator `△` and an optional degree −2
/// operator `∇`.
#[derive(Clone, Debug)]
pub struct StrictStructure {
    pub name: String,
    pub carrier: Arc<GradedCarrier>,
    pub d: MultiMap,
    pub m: MultiMap,
    pub delta: Option<MultiMap>,
    pub nabla: Option<MultiMap>,
}

fn require_shape(what: &str, f: &MultiMap, arity: usize, degree: i32) -> Result<()> {
    if f.arity() != arity {
        return Err(Error::Shape(format!(
            "{what} has arity {}, expected {arity}",
            f.arity()
        )));
    }
    if f.degree() != degree {
        return Err(Error::Degree(format!(
            "{what} has degree {}, expected {degree}",
            f.degree()
        )));
    }
    Ok(())
}

impl StrictStructure {
    pub fn new(
        name: impl Into<String>,
        d: MultiMap,
        m: MultiMap,
        delta: Option<MultiMap>,
        nabla: Option<MultiMap>,
    ) -> Result<Self> {
        require_shape("d", &d, 1, 1)?;
        require_shape("m", &m, 2, 0)?;
        if let Some(x) = &delta {
            require_shape("△", x, 1, -1)?;
        }
        if let Some(x) = &nabla {
            require_shape("∇", x, 1, -2)?;
        }
        let carrier = d.carrier().clone();
        for f in [&m].into_iter().chain(delta.as_ref()).chain(nabla.as_ref()) {
            if **f.carrier() != *carrier {
                return Err(Error::CarrierMismatch);
            }
        }
        Ok(StrictStructure {
            name: name.into(),
            carrier,
            d,
            m,
            delta,
            nabla,
        })
    }

    /// `[d, △]`, the operator whose vanishing makes a cBV-algebra BV.
    pub fn obstruction(&self) -> Result<Option<MultiMap>> {
        self.delta
            .as_ref()
            .map(|x| insertion_bracket(&self.d, x))
            .transpose()
    }
}

fn swap12() -> Permutation {
    Permutation::from_one_line(&[2, 1]).expect("valid")
}

fn swap12_of3() -> Permutation {
    Permutation::from_one_line(&[2, 1, 3]).expect("valid")
}

/// Associativity, symmetry and the derivation property of `(d, m)`, and `d² = 0`.
pub fn check_com(s: &StrictStructure) -> Result<Report> {
    let mut r = Report::new(format!("Com relations: {}", s.name));
    r.push(CheckEntry::vanishing("d-square-zero", &s.d.after(&s.d)?));
    r.push(CheckEntry::vanishing(
        "m-symmetric",
        &s.m.sub(&s.m.act(&swap12())?)?,
    ));
    r.push(CheckEntry::vanishing(
        "m-associative",
        &s.m.compose_at(1, &s.m)?.sub(&s.m.compose_at(2, &s.m)?)?,
    ));
    r.push(CheckEntry::vanishing(
        "d-derivation",
        &insertion_bracket(&s.d, &s.m)?,
    ));
    Ok(r)
}

/// The difference of the two sides of the second-order relation for `op`, as a
/// map of arity 3. For `op` of degree `k` the signs `(−1)^{|a|}` become
/// `(−1)^{k|a|}`.
pub fn second_order_defect(op: &MultiMap, m: &MultiMap) -> Result<MultiMap> {
    require_shape("operator", op, 1, op.degree())?;
    let mm = m.compose_at(1, m)?;
    let op_m = op.after(m)?;
    let lhs = op.after(&mm)?;
    let t1 = m.compose_at(1, &op_m)?;
    let t2 = m.compose_at(2, &op_m)?;
    let t3 = t2.act(&swap12_of3())?;
    let u1 = mm.compose_at(1, op)?;
    let u2 = mm.compose_at(2, op)?;
    let u3 = mm.compose_at(3, op)?;
    let one = Rational::one();
    let neg = -Rational::one();
    MultiMap::linear_combination(&[
        (one.clone(), &lhs),
        (neg.clone(), &t1),
        (neg.clone(), &t2),
        (neg, &t3),
        (one.clone(), &u1),
        (one.clone(), &u2),
        (one, &u3),
    ])
}

/// The second-order relation for `op` with respect to the product of `s`.
pub fn check_second_order(op: &MultiMap, s: &StrictStructure) -> Result<Report> {
    let mut r = Report::new(format!("second-order relation: {}", s.name));
    r.push(CheckEntry::vanishing(
        "second-order",
        &second_order_defect(op, &s.m)?,
    ));
    Ok(r)
}

/// `[op, m]`.
pub fn derived_bracket(op: &MultiMap, m: &MultiMap) -> Result<MultiMap> {
    insertion_bracket(op, m)
}

/// `(b∘₁b)∘(id + (123) + (132))`.
pub fn jacobi_defect(b: &MultiMap) -> Result<MultiMap> {
    let bb = b.compose_at(1, b)?;
    let c1 = Permutation::from_cycles(3, &[vec![1, 2, 3]])?;
    let c2 = Permutation::from_cycles(3, &[vec![1, 3, 2]])?;
    let parts = [bb.clone(), bb.act(&c1)?, bb.act(&c2)?];
    let refs: Vec<(Rational, &MultiMap)> = parts.iter().map(|p| (Rational::one(), p)).collect();
    MultiMap::linear_combination(&refs)
}

/// `b∘₂m − m∘₁b − (m∘₂b)∘(12)`: the bracket with a fixed first argument is a
/// derivation of the product.
pub fn leibniz_defect(b: &MultiMap, m: &MultiMap) -> Result<MultiMap> {
    let lhs = b.compose_at(2, m)?;
    let t1 = m.compose_at(1, b)?;
    let t2 = m.compose_at(2, b)?.act(&swap12_of3())?;
    lhs.sub(&t1)?.sub(&t2)
}

/// Which strict structures `s` carries, with the report of every check.
#[derive(Clone, Debug)]
pub struct StrictClassification {
    pub is_com: bool,
    pub is_cbv: bool,
    pub is_bv: bool,
    pub is_ebv: bool,
    pub report: Report,
}

pub fn classify_strict(s: &StrictStructure) -> Result<StrictClassification> {
    let mut report = check_com(s)?;
    report.title = format!("strict structure: {}", s.name);
    let is_com = report.passed();
    let (mut is_cbv, mut is_bv, mut is_ebv) = (false, false, false);
    if let Some(delta) = &s.delta {
        let sq = CheckEntry::vanishing("delta-square-zero", &delta.after(delta)?);
        let so = CheckEntry::vanishing("delta-second-order", &second_order_defect(delta, &s.m)?);
        is_cbv = is_com && sq.status.is_pass() && so.status.is_pass();
        report.push(sq);
        report.push(so);
        let n = insertion_bracket(&s.d, delta)?;
        let entry = CheckEntry::vanishing("obstruction-[d,delta]", &n);
        is_bv = is_cbv && entry.status.is_pass();
        report.push(entry.as_info());
    }
    if let Some(nabla) = &s.nabla {
        let so = CheckEntry::vanishing("nabla-second-order", &second_order_defect(nabla, &s.m)?);
        let inner = insertion_bracket(nabla, &s.d)?;
        let eq = CheckEntry::vanishing(
            "nabla-[nabla,[nabla,d]]",
            &insertion_bracket(nabla, &inner)?,
        );
        is_ebv = is_com && so.status.is_pass() && eq.status.is_pass();
        report.push(so);
        report.push(eq);
    }
    Ok(StrictClassification {
        is_com,
        is_cbv,
        is_bv,
        is_ebv,
        report,
    })
}

/// Carrier of `A ⊗ B`: basis pairs named `a⊗b` with added degrees; the polynomial
/// variables of `B` follow those of `A`.
pub fn tensor_carrier(a: &GradedCarrier, b: &GradedCarrier) -> Result<GradedCarrier> {
    let mut basis = Vec::new();
    for x in a.symbols() {
        for y in b.symbols() {
            basis.push((
                format!("{}⊗{}", a.name(x), b.name(y)),
                a.degree(x) + b.degree(y),
            ));
        }
    }
    let metric: Vec<i8> = a
        .metric()
        .unwrap_or(&[])
        .iter()
        .chain(b.metric().unwrap_or(&[]))
        .copied()
        .collect();
    if metric.is_empty() {
        GradedCarrier::new(basis)
    } else {
        GradedCarrier::polynomial(basis, metric)
    }
}

fn shift_mono(m: &Mono, by: usize) -> Mono {
    let mut out = Mono::ONE;
    for k in 0..crate::tensor::MAX_VARS - by {
        out.0[k + by] = m.0[k];
    }
    out
}

struct Pairing<'a> {
    a: &'a GradedCarrier,
    b: &'a GradedCarrier,
    carrier: Arc<GradedCarrier>,
}

impl Pairing<'_> {
    fn sym(&self, x: Sym, y: Sym) -> Sym {
        (x as usize * self.b.dim() + y as usize) as Sym
    }

    /// `f ⊗ id` for unary `f` on `A`.
    fn left(&self, f: &MultiMap) -> Result<MultiMap> {
        let mut rb = RuleBuilder::new();
        for (u, terms) in f.rules() {
            for y in self.b.symbols() {
                for t in terms {
                    rb.add(
                        &[self.sym(u[0], y)],
                        self.sym(t.out, y),
                        &[t.derivs[0]],
                        t.coeff.clone(),
                    );
                }
            }
        }
        rb.build(&self.carrier, 1, f.degree())
    }

    /// `id ⊗ g` for unary `g` on `B`, with the Koszul sign of `g` passing `a`.
    fn right(&self, g: &MultiMap) -> Result<MultiMap> {
        let mut rb = RuleBuilder::new();
        let shift = self.a.vars();
        for (u, terms) in g.rules() {
            for x in self.a.symbols() {
                let neg = parity(g.degree() as i64 * self.a.degree(x) as i64);
                for t in terms {
                    let c = if neg {
                        -t.coeff.clone()
                    } else {
                        t.coeff.clone()
                    };
                    rb.add(
                        &[self.sym(x, u[0])],
                        self.sym(x, t.out),
                        &[shift_mono(&t.derivs[0], shift)],
                        c,
                    );
                }
            }
        }
        rb.build(&self.carrier, 1, g.degree())
    }

    /// `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} m_A(a,a') ⊗ m_B(b,b')`.
    fn product(&self, ma: &MultiMap, mb: &MultiMap) -> Result<MultiMap> {
        let mut rb = RuleBuilder::new();
        let shift = self.a.vars();
        for (ua, ta) in ma.rules() {
            for (ub, tb) in mb.rules() {
                let neg = parity(self.b.degree(ub[0]) as i64 * self.a.degree(ua[1]) as i64);
                let word = [self.sym(ua[0], ub[0]), self.sym(ua[1], ub[1])];
                for s in ta {
                    for t in tb {
                        let derivs = [
                            s.derivs[0].mul(&shift_mono(&t.derivs[0], shift)),
                            s.derivs[1].mul(&shift_mono(&t.derivs[1], shift)),
                        ];
                        let c = &s.coeff * &t.coeff;
                        let c = if neg { -c } else { c };
                        rb.add(&word, self.sym(s.out, t.out), &derivs, c);
                    }
                }
            }
        }
        rb.build(&self.carrier, 2, 0)
    }
}

/// The tensor product of two strict structures via the diagonal
/// `m ↦ m ⊗ m`, `d ↦ d ⊗ id + id ⊗ d`, `△ ↦ △ ⊗ id + id ⊗ △`.
/// A missing `△` counts as zero; `∇` is not carried over.
pub fn tensor_strict(a: &StrictStructure, b: &StrictStructure) -> Result<StrictStructure> {
    let carrier = Arc::new(tensor_carrier(&a.carrier, &b.carrier)?);
    if carrier.dim() > Sym::MAX as usize + 1 {
        return Err(Error::Carrier("tensor carrier too large".into()));
    }
    let p = Pairing {
        a: &a.carrier,
        b: &b.carrier,
        carrier: carrier.clone(),
    };
    let d = p.left(&a.d)?.add(&p.right(&b.d)?)?;
    let m = p.product(&a.m, &b.m)?;
    let delta = match (&a.delta, &b.delta) {
        (None, None) => None,
        (x, y) => {
            let zero_a = MultiMap::zero(&a.carrier, 1, -1);
            let zero_b = MultiMap::zero(&b.carrier, 1, -1);
            let l = p.left(x.as_ref().unwrap_or(&zero_a))?;
            let r = p.right(y.as_ref().unwrap_or(&zero_b))?;
            Some(l.add(&r)?)
        }
    };
    StrictStructure::new(format!("{} ⊗ {}", a.name, b.name), d, m, delta, None)
}
