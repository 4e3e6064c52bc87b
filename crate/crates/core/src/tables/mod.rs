//! Formal expressions in generating and obstruction maps, the reference
//! expansions of low-weight obstructions, and a randomized evaluation oracle for
//! comparing expressions modulo the generator symmetries.

mod expr;
mod parse;

pub use expr::{ExprTerm, FormalExpr, MapSymbol, SymbolKind, TermRecord, Tree};
pub use parse::{parse_expr, PermReading};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::homotopy::{expand_obstruction, Conventions, Evaluator, ObstructionKey};
use crate::report::witness_of;
use crate::sample::{random_carrier, random_generating_set, SampleConfig};

/// Largest weight with reference expansions.
pub const TABULATED_WEIGHT: u32 = 3;
/// Largest weight `specialize_obstruction` accepts.
pub const MAX_SPECIALIZE_WEIGHT: u32 = 4;

/// The obstruction at `key` expanded symbolically.
pub fn specialize_obstruction(key: &ObstructionKey, conv: Conventions) -> Result<FormalExpr> {
    if key.weight() > MAX_SPECIALIZE_WEIGHT {
        return Err(Error::WeightBound(format!(
            "{key} has weight {}, the bound is {MAX_SPECIALIZE_WEIGHT}",
            key.weight()
        )));
    }
    Ok(expand_obstruction(key, conv)?.simplified())
}

/// Reference expansions by `(t, p̄)` as printed, in the notation of [`parse_expr`].
/// The superscript-free `m_{1,2}` of the `n^0_{1,3}` row is read as `m^0_{1,2}`.
const TABLE: &[(u32, &[usize], &str)] = &[
    (1, &[1], "[m^0_1, m^1_1]"),
    (0, &[1, 1], "[m^0_1, m^0_{1,1}]"),
    (
        0,
        &[1, 2],
        "[m^0_1, m^0_{1,2}] - m^0_2 o_1 m^0_{1,1} - (m^0_2 o_2 m^0_{1,1}) * (12) \
         + m^0_{1,1} o_2 m^0_2",
    ),
    (
        0,
        &[1, 1, 1],
        "[m^0_1, m^0_{1,1,1}] - (m^0_{1,1} o_1 m^0_{1,1}) * {id + (123) + (132)}",
    ),
    (1, &[1, 1], "[m^0_1, m^1_{1,1}] - [m^1_1, m^0_{1,1}]"),
    (1, &[2], "[m^0_1, m^1_2] + [m^1_1, m^0_2] - m^0_{1,1}"),
    (2, &[1], "[m^0_1, m^2_1] + m^1_1 o m^1_1"),
    (
        0,
        &[2, 2],
        "[m^0_1, m^0_{2,2}] + m^0_{1,2} o_1 m^0_2 - m^0_{2,1} o_3 m^0_2 \
         + (m^0_2 o_2 m^0_{1,2}) * (12) - m^0_2 o_2 m^0_{1,2} \
         + (m^0_2 o_2 m^0_{2,1}) * (123) - m^0_2 o_1 m^0_{2,1} \
         + m^0_3 o_2 m^0_{1,1} - (m^0_3 o_3 m^0_{1,1}) * (123) \
         + (m^0_3 o_3 m^0_{1,1}) * (23) + (m^0_3 o_2 m^0_{1,1}) * (1243) \
         - (m^0_3 o_1 m^0_{1,1}) * (23) + (m^0_3 o_1 m^0_{1,1}) * (234)",
    ),
    (
        0,
        &[1, 3],
        "[m^0_1, m^0_{1,3}] - (m^0_2 o_2 m^0_{1,2}) * (12) + m^0_2 o_1 m^0_{1,2} \
         + m^0_{1,2} o_2 m^0_2 - m^0_{1,2} o_3 m^0_2 \
         + m^0_{1,1} o_2 m^0_3 + m^0_3 o_1 m^0_{1,1} \
         + (m^0_3 o_2 m^0_{1,1}) * (12) + (m^0_3 o_3 m^0_{1,1}) * (321)",
    ),
    (
        0,
        &[1, 1, 2],
        "[m^0_1, m^0_{1,1,2}] - m^0_{1,2} o_1 m^0_{1,1} - m^0_{1,2} o_2 m^0_{1,1} \
         - (m^0_{1,2} o_3 m^0_{1,1}) * (23) - (m^0_{1,2} o_2 m^0_{1,1}) * (12) \
         - (m^0_{1,2} o_3 m^0_{1,1}) * (321) + m^0_{1,1} o_2 m^0_{1,2} \
         + (m^0_{1,1} o_2 m^0_{1,2}) * (12) - m^0_2 o_1 m^0_{1,1,1} \
         - (m^0_2 o_1 m^0_{1,1,1}) * (34) + m^0_{1,1,1} o_3 m^0_2",
    ),
    (
        0,
        &[1, 1, 1, 1],
        "[m^0_1, m^0_{1,1,1,1}] \
         + (m^0_{1,1} o_1 m^0_{1,1,1}) * {id + (1234) + (13)(24) + (4321)} \
         + (m^0_{1,1,1} o_1 m^0_{1,1}) * {id + (23) + (234) + (123) + (1342) + (13)(24)}",
    ),
    (
        1,
        &[3],
        "[m^0_1, m^1_3] + [m^1_1, m^0_3] + m^1_2 o_1 m^0_2 - m^1_2 o_2 m^0_2 \
         + m^0_2 o_1 m^1_2 - m^0_2 o_2 m^1_2 - m^0_{1,2} - m^0_{2,1}",
    ),
    (
        1,
        &[1, 2],
        "[m^0_1, m^1_{1,2}] + [m^1_1, m^0_{1,2}] - m^0_2 o_1 m^1_{1,1} \
         - (m^0_2 o_2 m^1_{1,1}) * (12) + m^0_{1,1} o_2 m^1_2 \
         - m^1_2 o_1 m^0_{1,1} - (m^1_2 o_2 m^0_{1,1}) * (12) \
         + m^0_{1,1} o_2 m^1_2 - m^0_{1,1,1}",
    ),
    (
        1,
        &[1, 1, 1],
        "[m^0_1, m^1_{1,1,1}] + [m^1_1, m^0_{1,1,1}] \
         + (m^0_{1,1} o_1 m^1_{1,1}) * {id + (123) + (321)} \
         + (m^1_{1,1} o_1 m^0_{1,1}) * {id + (123) + (321)}",
    ),
    (
        2,
        &[1, 1],
        "[m^0_1, m^2_{1,1}] + [m^1_1, m^1_{1,1}] + [m^2_1, m^0_{1,1}]",
    ),
    (
        2,
        &[2],
        "[m^0_1, m^2_2] + [m^1_1, m^1_2] + [m^2_1, m^0_2] - m^1_{1,1}",
    ),
    (3, &[1], "[m^0_1, m^3_1] + [m^1_1, m^2_1]"),
];

/// A printed row that disagrees with the expansion of the obstruction formula,
/// with the row that agrees.
#[derive(Clone, Copy, Debug)]
pub struct Erratum {
    pub t: u32,
    pub p: &'static [usize],
    pub corrected: &'static str,
    pub note: &'static str,
}

impl Erratum {
    pub fn key(&self) -> ObstructionKey {
        ObstructionKey::new(self.t, self.p.to_vec()).expect("valid key")
    }
}

pub const ERRATA: &[Erratum] = &[
    Erratum {
        t: 0,
        p: &[1, 1, 1],
        corrected: "[m^0_1, m^0_{1,1,1}] + (m^0_{1,1} o_1 m^0_{1,1}) * {id + (123) + (132)}",
        note: "sign of the quadratic term",
    },
    Erratum {
        t: 1,
        p: &[1, 1],
        corrected: "[m^0_1, m^1_{1,1}] + [m^1_1, m^0_{1,1}]",
        note: "sign of the second bracket",
    },
    Erratum {
        t: 0,
        p: &[2, 2],
        corrected: "[m^0_1, m^0_{2,2}] + m^0_{1,2} o_1 m^0_2 - m^0_{2,1} o_3 m^0_2 \
         - (m^0_2 o_2 m^0_{1,2}) * (12) - m^0_2 o_2 m^0_{1,2} \
         + (m^0_2 o_2 m^0_{2,1}) * (123) + m^0_2 o_1 m^0_{2,1} \
         + m^0_3 o_2 m^0_{1,1} - (m^0_3 o_3 m^0_{1,1}) * (123) \
         + (m^0_3 o_3 m^0_{1,1}) * (23) - (m^0_3 o_2 m^0_{1,1}) * (1243) \
         + (m^0_3 o_1 m^0_{1,1}) * (23) - (m^0_3 o_1 m^0_{1,1}) * (243)",
        note: "signs of three terms and the permutations of the m^0_3 o_1 m^0_{1,1} terms; \
               the printed row is not block symmetric",
    },
    Erratum {
        t: 0,
        p: &[1, 1, 1, 1],
        corrected: "[m^0_1, m^0_{1,1,1,1}] \
         + (m^0_{1,1} o_1 m^0_{1,1,1}) * {id + (1234) + (13)(24) + (4321)} \
         + (m^0_{1,1,1} o_1 m^0_{1,1}) * {id + (23) + (234) + (132) + (1342) + (13)(24)}",
        note: "(123) in the second permutation sum reads (132); the printed row is not \
               block symmetric",
    },
    Erratum {
        t: 1,
        p: &[3],
        corrected: "[m^0_1, m^1_3] + [m^1_1, m^0_3] + m^1_2 o_1 m^0_2 - m^1_2 o_2 m^0_2 \
         + m^0_2 o_1 m^1_2 - m^0_2 o_2 m^1_2 - m^0_{1,2} + m^0_{2,1}",
        note: "sign of m^0_{2,1}; the printed row violates the shuffle symmetry",
    },
    Erratum {
        t: 1,
        p: &[1, 2],
        corrected: "[m^0_1, m^1_{1,2}] + [m^1_1, m^0_{1,2}] - m^0_2 o_1 m^1_{1,1} \
         - (m^0_2 o_2 m^1_{1,1}) * (12) + m^0_{1,1} o_2 m^1_2 \
         - m^1_2 o_1 m^0_{1,1} - (m^1_2 o_2 m^0_{1,1}) * (12) \
         + m^1_{1,1} o_2 m^0_2 - m^0_{1,1,1}",
        note: "the term m^0_{1,1} o_2 m^1_2 is listed twice; the second reads m^1_{1,1} o_2 m^0_2",
    },
];

/// The three-term form of the `n^0_{1,1}` row, printed next to the bracket form.
/// It does not expand the bracket: `[m^0_1, m^0_{1,1}]` has `+` on the last two terms.
pub const EXPANDED_N0_11: &str = "m^0_1 o m^0_{1,1} - m^0_{1,1} o_1 m^0_1 - m^0_{1,1} o_2 m^0_1";

/// Keys with a reference expansion, in table order.
pub fn tabulated_keys() -> Vec<ObstructionKey> {
    TABLE
        .iter()
        .map(|(t, p, _)| ObstructionKey::new(*t, p.to_vec()).expect("valid key"))
        .collect()
}

fn printed_text(key: &ObstructionKey) -> Result<&'static str> {
    TABLE
        .iter()
        .find(|(t, p, _)| *t == key.t && *p == key.p.as_slice())
        .map(|(_, _, text)| *text)
        .ok_or_else(|| Error::NotTabulated(key.to_string()))
}

/// The reference expansion of the obstruction at `key` as printed.
pub fn tabulated_obstruction(key: &ObstructionKey, reading: PermReading) -> Result<FormalExpr> {
    parse_expr(printed_text(key)?, reading)
}

/// The erratum for `key`, if its printed row has one.
pub fn erratum(key: &ObstructionKey) -> Option<&'static Erratum> {
    ERRATA
        .iter()
        .find(|e| e.t == key.t && e.p == key.p.as_slice())
}

/// The reference expansion with the errata applied.
pub fn corrected_obstruction(key: &ObstructionKey, reading: PermReading) -> Result<FormalExpr> {
    match erratum(key) {
        Some(e) => parse_expr(e.corrected, reading),
        None => parse_expr(printed_text(key)?, reading),
    }
}

/// Result of comparing two expressions on random admissible generating sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub trials: usize,
    /// Trials on which the first expression evaluated to a nonzero map.
    pub nonzero: usize,
    /// First disagreement: trial index and a rendered witness.
    pub disagreement: Option<(usize, String)>,
}

impl OracleOutcome {
    pub fn agree(&self) -> bool {
        self.disagreement.is_none()
    }
}

/// Options for [`exprs_equal_mod_symmetry`].
#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub trials: usize,
    pub seed: u64,
    pub sample: SampleConfig,
    pub conventions: Conventions,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            trials: 25,
            seed: 0x5eed_cb5,
            sample: SampleConfig::default(),
            conventions: Conventions::default(),
        }
    }
}

/// Evaluates `a` and `b` on `cfg.trials` random generating sets whose maps satisfy
/// the block and shuffle symmetries exactly, and compares the results exactly.
pub fn exprs_equal_mod_symmetry(
    a: &FormalExpr,
    b: &FormalExpr,
    cfg: &OracleConfig,
) -> Result<OracleOutcome> {
    if a.arity() != b.arity() {
        return Err(Error::Arity {
            expected: a.arity(),
            got: b.arity(),
        });
    }
    let max_weight = a
        .symbols()
        .into_iter()
        .chain(b.symbols())
        .map(|s| s.t + s.arity() as u32 - 1)
        .max()
        .unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut outcome = OracleOutcome {
        trials: 0,
        nonzero: 0,
        disagreement: None,
    };
    for trial in 0..cfg.trials {
        let carrier = random_carrier(&mut rng, &cfg.sample);
        let set = random_generating_set(
            &mut rng,
            &carrier,
            max_weight,
            cfg.conventions.block_sign,
            &cfg.sample,
        )?;
        let mut ev = Evaluator::new(&set, cfg.conventions);
        let va = ev.eval(a)?;
        let vb = ev.eval(b)?;
        outcome.trials += 1;
        if !va.is_zero() {
            outcome.nonzero += 1;
        }
        let diff = va.sub(&vb)?;
        if let Some(w) = witness_of(&diff) {
            outcome.disagreement = Some((trial, w));
            break;
        }
    }
    Ok(outcome)
}

/// Human-readable listing of the specialized obstructions of weight `w`.
pub fn render_table(w: u32, conv: Conventions) -> Result<String> {
    let mut out = String::new();
    for key in ObstructionKey::all_of_weight(w) {
        let e = specialize_obstruction(&key, conv)?;
        out.push_str(&format!("{key} = {}\n", e.render()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
