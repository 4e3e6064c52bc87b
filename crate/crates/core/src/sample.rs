//! Random carriers and random maps satisfying the generator symmetries exactly.

use std::sync::Arc;

use num_integer::binomial;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::homotopy::{symmetrize, BlockSign, GeneratingKey, GeneratingSet};
use crate::shuffle::offsets;
use crate::tensor::{GradedCarrier, MultiMap, Permutation, Rational, RuleBuilder, Sym};

/// Shape of the random data.
#[derive(Clone, Copy, Debug)]
pub struct SampleConfig {
    pub min_dim: usize,
    pub max_dim: usize,
    pub min_degree: i32,
    pub max_degree: i32,
    /// Probability that a given (word, output) pair gets a nonzero coefficient.
    pub density: f64,
    /// Coefficients are drawn from `[-coeff_bound, coeff_bound] \ {0}`.
    pub coeff_bound: i64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            min_dim: 4,
            max_dim: 5,
            min_degree: -3,
            max_degree: 3,
            density: 0.7,
            coeff_bound: 3,
        }
    }
}

/// A scalar carrier with at least one even and one odd basis element.
pub fn random_carrier<R: Rng>(rng: &mut R, cfg: &SampleConfig) -> Arc<GradedCarrier> {
    let dim = rng.gen_range(cfg.min_dim.max(2)..=cfg.max_dim.max(2));
    loop {
        let degs: Vec<i32> = (0..dim)
            .map(|_| rng.gen_range(cfg.min_degree..=cfg.max_degree))
            .collect();
        let odd = degs.iter().filter(|d| d.rem_euclid(2) == 1).count();
        if odd == 0 || odd == dim {
            continue;
        }
        let basis = degs
            .iter()
            .enumerate()
            .map(|(i, &d)| (format!("e{i}"), d))
            .collect();
        return Arc::new(GradedCarrier::new(basis).expect("distinct names"));
    }
}

fn random_coeff<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-bound..=bound);
    }
    Rational::from_integer(c.into())
}

/// A homogeneous map with random sparse structure constants and no symmetry.
pub fn random_map<R: Rng>(
    rng: &mut R,
    carrier: &Arc<GradedCarrier>,
    arity: usize,
    degree: i32,
    cfg: &SampleConfig,
) -> MultiMap {
    let dim = carrier.dim();
    let mut b = RuleBuilder::new();
    let mut word: Vec<Sym> = vec![0; arity];
    loop {
        let in_deg: i32 = word.iter().map(|&s| carrier.degree(s)).sum();
        for out in carrier.symbols() {
            if carrier.degree(out) == in_deg + degree && rng.gen_bool(cfg.density) {
                b.add_plain(&word, out, random_coeff(rng, cfg.coeff_bound));
            }
        }
        // next word in lexicographic order
        let mut i = arity;
        loop {
            if i == 0 {
                return b
                    .build(carrier, arity, degree)
                    .expect("homogeneous by construction");
            }
            i -= 1;
            if (word[i] as usize) + 1 < dim {
                word[i] += 1;
                for w in &mut word[i + 1..] {
                    *w = 0;
                }
                break;
            }
        }
    }
}

/// A random square-zero map of degree +1: the basis is split at random into
/// sources and targets, and only sources map, only to targets.
pub fn random_differential<R: Rng>(
    rng: &mut R,
    carrier: &Arc<GradedCarrier>,
    cfg: &SampleConfig,
) -> MultiMap {
    let source: Vec<bool> = carrier.symbols().map(|_| rng.gen_bool(0.5)).collect();
    let mut b = RuleBuilder::new();
    for s in carrier.symbols().filter(|&s| source[s as usize]) {
        for t in carrier.symbols().filter(|&t| !source[t as usize]) {
            if carrier.degree(t) == carrier.degree(s) + 1 && rng.gen_bool(cfg.density) {
                b.add_plain(&[s], t, random_coeff(rng, cfg.coeff_bound));
            }
        }
    }
    b.build(carrier, 1, 1).expect("homogeneous by construction")
}

fn descents(s: &Permutation) -> usize {
    let img = s.images();
    (1..img.len()).filter(|&i| img[i - 1] > img[i]).count()
}

/// The first Eulerian idempotent of the group algebra of `S_n` as a list of
/// `(σ, coefficient)`.
///
/// Under the signed right action `f·σ = sign(σ) f∘σ` it projects multilinear maps
/// onto those killed by every signed shuffle sum.
pub fn eulerian_idempotent(n: usize) -> Vec<(Permutation, Rational)> {
    Permutation::all(n)
        .into_iter()
        .map(|s| {
            let d = descents(&s);
            let den: u64 = n as u64 * binomial(n as u64 - 1, d as u64);
            let mut c = Rational::new(1.into(), den.into());
            if d % 2 == 1 {
                c = -c;
            }
            (s, c)
        })
        .collect()
}

/// Projects `m` onto maps satisfying every shuffle relation inside the blocks of `p`.
pub fn project_shuffles(m: &MultiMap, p: &[usize]) -> Result<MultiMap> {
    let n: usize = p.iter().sum();
    let off = offsets(p);
    let mut cur = m.clone();
    for (i, &size) in p.iter().enumerate() {
        if size < 2 {
            continue;
        }
        let mut parts = Vec::new();
        for (s, c) in eulerian_idempotent(size) {
            let full = s.shift(off[i]).extend(n - off[i] - size);
            let c = if s.is_odd() { -c } else { c };
            parts.push((c, cur.act(&full)?));
        }
        let refs: Vec<(Rational, &MultiMap)> = parts.iter().map(|(c, m)| (c.clone(), m)).collect();
        cur = MultiMap::linear_combination(&refs)?;
    }
    Ok(cur)
}

/// A random map with the block and shuffle symmetries of `key` (blocks in any order).
pub fn random_admissible<R: Rng>(
    rng: &mut R,
    carrier: &Arc<GradedCarrier>,
    key: &GeneratingKey,
    sign: BlockSign,
    cfg: &SampleConfig,
) -> Result<MultiMap> {
    let raw = random_map(rng, carrier, key.arity(), key.degree(), cfg);
    let projected = project_shuffles(&raw, &key.p)?;
    symmetrize(key, &projected, sign)
}

/// Random admissible maps for every key of weight `≤ max_weight`; untruncated.
pub fn random_generating_set<R: Rng>(
    rng: &mut R,
    carrier: &Arc<GradedCarrier>,
    max_weight: u32,
    sign: BlockSign,
    cfg: &SampleConfig,
) -> Result<GeneratingSet> {
    let mut set = GeneratingSet::new(carrier.clone(), None).with_block_sign(sign);
    for w in 0..=max_weight {
        for key in GeneratingKey::all_of_weight(w) {
            let m = random_admissible(rng, carrier, &key, sign, cfg)?;
            set.insert(key, m)?;
        }
    }
    Ok(set)
}

/// A valid generating set truncated at `truncation`.
///
/// The weight-0 row is a random strict dg commutative algebra (see
/// [`random_strict_algebra`]) with vanishing higher products; every other generator
/// of weight `≤ truncation` is a random admissible map.
pub fn random_valid_set<R: Rng>(
    rng: &mut R,
    truncation: u32,
    sign: BlockSign,
    cfg: &SampleConfig,
) -> Result<GeneratingSet> {
    let algebra = random_strict_algebra(rng);
    let carrier = algebra.carrier.clone();
    let mut row = GeneratingSet::new(carrier.clone(), Some(truncation)).with_block_sign(sign);
    row.insert(GeneratingKey::new(0, vec![1])?, algebra.d)?;
    row.insert(GeneratingKey::new(0, vec![2])?, algebra.m)?;
    row.fill_zeros_up_to(truncation);
    let mut extras = Vec::new();
    for w in 1..=truncation {
        for key in GeneratingKey::all_of_weight(w) {
            if key.t == 0 && key.k() == 1 {
                continue;
            }
            extras.push((
                key.clone(),
                random_admissible(rng, &carrier, &key, sign, cfg)?,
            ));
        }
    }
    crate::homotopy::extend_from_cinfty(&row, extras, truncation, false)
}

/// A finite-dimensional dg commutative algebra.
pub struct StrictSample {
    pub carrier: Arc<GradedCarrier>,
    pub d: MultiMap,
    pub m: MultiMap,
}

/// The free graded-commutative algebra on `x` (degree 1), `y` (degree 2) and
/// `z` (degree 3), modulo total degree `> 6`, with the derivation `d x = α y`,
/// `d y = 0`, `d z = β y²` for random nonzero rationals `α, β`. Basis order is
/// shuffled so that symbol indices carry no structure.
pub fn random_strict_algebra<R: Rng>(rng: &mut R) -> StrictSample {
    // Monomials x^a y^b z^c of degree ≤ 6 with a, c ∈ {0,1}.
    let mut monos: Vec<(u8, u8, u8)> = Vec::new();
    for c in 0..=1u8 {
        for a in 0..=1u8 {
            for b in 0..=3u8 {
                let deg = a as i32 + 2 * b as i32 + 3 * c as i32;
                if deg <= 6 {
                    monos.push((a, b, c));
                }
            }
        }
    }
    monos.shuffle(rng);
    let name = |&(a, b, c): &(u8, u8, u8)| {
        let mut s = String::new();
        if a == 1 {
            s.push('x');
        }
        for _ in 0..b {
            s.push('y');
        }
        if c == 1 {
            s.push('z');
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    };
    let degree = |&(a, b, c): &(u8, u8, u8)| a as i32 + 2 * b as i32 + 3 * c as i32;
    let basis: Vec<(String, i32)> = monos.iter().map(|m| (name(m), degree(m))).collect();
    let carrier = Arc::new(GradedCarrier::new(basis).expect("distinct names"));
    let index = |m: (u8, u8, u8)| monos.iter().position(|&x| x == m);

    let mut mb = RuleBuilder::new();
    for (i, &(a1, b1, c1)) in monos.iter().enumerate() {
        for (j, &(a2, b2, c2)) in monos.iter().enumerate() {
            if a1 + a2 > 1 || c1 + c2 > 1 {
                continue;
            }
            let Some(k) = index((a1 + a2, b1 + b2, c1 + c2)) else {
                continue;
            };
            // sign of moving z of the left factor past x of the right factor
            let neg = c1 == 1 && a2 == 1;
            let c = if neg {
                -Rational::one()
            } else {
                Rational::one()
            };
            mb.add_plain(&[i as Sym, j as Sym], k as Sym, c);
        }
    }
    let m = mb.build(&carrier, 2, 0).expect("homogeneous");

    // derivation with d x = α y, d y = 0, d z = β y²; d² = 0 since d(y) = 0
    let alpha = random_nonzero(rng);
    let beta = random_nonzero(rng);
    let mut db = RuleBuilder::new();
    for (i, &(a, b, c)) in monos.iter().enumerate() {
        // d(x^a y^b z^c) = a α y^{b+1} z^c + (−1)^a c β x^a y^{b+2}
        if a == 1 {
            if let Some(k) = index((0, b + 1, c)) {
                db.add_plain(&[i as Sym], k as Sym, alpha.clone());
            }
        }
        if c == 1 {
            if let Some(k) = index((a, b + 2, 0)) {
                let v = if a == 1 { -beta.clone() } else { beta.clone() };
                db.add_plain(&[i as Sym], k as Sym, v);
            }
        }
    }
    let d = db.build(&carrier, 1, 1).expect("homogeneous");
    StrictSample { carrier, d, m }
}

fn random_nonzero<R: Rng>(rng: &mut R) -> Rational {
    let mut n = 0i64;
    while n == 0 {
        n = rng.gen_range(-4..=4);
    }
    let d: i64 = rng.gen_range(1..=3);
    Rational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::symmetry_violations;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn eulerian_idempotent_sums_to_one_on_identity_coefficient() {
        for n in 1..=5 {
            let e = eulerian_idempotent(n);
            let id = e.iter().find(|(s, _)| s.is_identity()).unwrap();
            assert_eq!(id.1, Rational::new(1.into(), (n as i64).into()));
        }
    }

    #[test]
    fn admissible_maps_have_all_symmetries() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = SampleConfig::default();
        for _ in 0..4 {
            let c = random_carrier(&mut rng, &cfg);
            for w in 0..=3 {
                for key in GeneratingKey::all_of_weight(w) {
                    for sign in [BlockSign::Plain, BlockSign::Suspended] {
                        let m = random_admissible(&mut rng, &c, &key, sign, &cfg).unwrap();
                        let v = symmetry_violations(&key, &m, sign).unwrap();
                        assert!(v.is_empty(), "{key}: {v:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn projection_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = SampleConfig::default();
        let c = random_carrier(&mut rng, &cfg);
        let raw = random_map(&mut rng, &c, 4, -1, &cfg);
        let once = project_shuffles(&raw, &[4]).unwrap();
        let twice = project_shuffles(&once, &[4]).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn strict_sample_is_a_dg_commutative_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let s = random_strict_algebra(&mut rng);
            let assoc =
                s.m.compose_at(1, &s.m)
                    .unwrap()
                    .sub(&s.m.compose_at(2, &s.m).unwrap())
                    .unwrap();
            assert!(assoc.is_zero());
            let swap = Permutation::from_one_line(&[2, 1]).unwrap();
            assert_eq!(s.m.act(&swap).unwrap(), s.m);
            assert!(s.d.after(&s.d).unwrap().is_zero());
            let leibniz = crate::tensor::hom_differential(&s.d, &s.m).unwrap();
            assert!(leibniz.is_zero());
        }
    }
}
