//! JSON structure files.
//!
//! ```json
//! {
//!   "name": "example",
//!   "truncation": 2,
//!   "carrier": { "basis": [["x", 0], ["y", 1]], "metric": [1, -1] },
//!   "maps": {
//!     "0;2": [ { "input": ["x", "y"], "terms": [ { "out": "y", "coeff": "1/2" } ] } ]
//!   }
//! }
//! ```
//!
//! Maps are keyed `t;p1,...,pk` for a generating set, or `d`, `m`, `delta`, `nabla`
//! for a strict structure. `derivs` holds one exponent vector per input when the
//! carrier has polynomial coefficients. Generators that are not listed are zero up
//! to the truncation order.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use cbv_core::homotopy::{GeneratingKey, GeneratingSet};
use cbv_core::strict::StrictStructure;
use cbv_core::tensor::RuleBuilder;
use cbv_core::{GradedCarrier, Mono, MultiMap, Rational};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub name: String,
    /// Verification suite to run instead of the generic one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
    pub carrier: CarrierSpec,
    pub maps: BTreeMap<String, Vec<RuleSpec>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    YangMills,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierSpec {
    pub basis: Vec<(String, i32)>,
    /// Diagonal metric of the polynomial coefficients; absent for scalars.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<i8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSpec {
    pub input: Vec<String>,
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub out: String,
    pub coeff: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub derivs: Vec<Vec<u8>>,
}

/// A parsed structure file.
#[derive(Clone, Debug)]
pub enum Structure {
    Generating {
        name: String,
        suite: Option<Suite>,
        set: GeneratingSet,
    },
    Strict(StrictStructure),
}

const STRICT_KEYS: [&str; 4] = ["d", "m", "delta", "nabla"];

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

/// Parses `num/den`.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let (n, d) = s
        .split_once('/')
        .ok_or_else(|| parse_err(format!("coefficient {s:?} is not of the form num/den")))?;
    let n = n
        .trim()
        .parse()
        .map_err(|_| parse_err(format!("bad numerator in {s:?}")))?;
    let d: num_bigint::BigInt = d
        .trim()
        .parse()
        .map_err(|_| parse_err(format!("bad denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(parse_err(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl StructureFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| parse_err(format!("structure file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("structure files serialize");
        s.push('\n');
        s
    }

    pub fn carrier(&self) -> Result<Arc<GradedCarrier>, CliError> {
        let basis = self.carrier.basis.clone();
        let c = match &self.carrier.metric {
            Some(metric) => GradedCarrier::polynomial(basis, metric.clone()),
            None => GradedCarrier::new(basis),
        };
        Ok(Arc::new(c.map_err(|e| parse_err(e.to_string()))?))
    }

    fn is_strict(&self) -> Result<bool, CliError> {
        let strict = self
            .maps
            .keys()
            .filter(|k| STRICT_KEYS.contains(&k.as_str()))
            .count();
        match strict {
            0 => Ok(false),
            n if n == self.maps.len() => Ok(true),
            _ => Err(parse_err(
                "maps mix strict names (d, m, delta, nabla) with generating keys",
            )),
        }
    }

    /// Builds the structure the file describes.
    pub fn parse(&self) -> Result<Structure, CliError> {
        let carrier = self.carrier()?;
        if self.is_strict()? {
            if self.suite.is_some() {
                return Err(parse_err("suites apply to generating sets only"));
            }
            let get = |name: &str, arity: usize, degree: i32| {
                self.maps
                    .get(name)
                    .map(|rules| build_map(&carrier, name, rules, arity, degree))
                    .transpose()
            };
            let d = get("d", 1, 1)?.ok_or_else(|| parse_err("strict structure needs d"))?;
            let m = get("m", 2, 0)?.ok_or_else(|| parse_err("strict structure needs m"))?;
            let delta = get("delta", 1, -1)?;
            let nabla = get("nabla", 1, -2)?;
            let s = StrictStructure::new(self.name.clone(), d, m, delta, nabla)
                .map_err(|e| parse_err(e.to_string()))?;
            return Ok(Structure::Strict(s));
        }
        let n = self
            .truncation
            .ok_or_else(|| parse_err("a generating set needs a truncation order"))?;
        let mut set = GeneratingSet::new(carrier.clone(), Some(n));
        for (code, rules) in &self.maps {
            let key: GeneratingKey = code
                .parse()
                .map_err(|e: cbv_core::Error| parse_err(e.to_string()))?;
            if set.stored(&key.canonical()).is_some() {
                return Err(parse_err(format!(
                    "{key} is listed twice up to block order"
                )));
            }
            let m = build_map(&carrier, code, rules, key.arity(), key.degree())?;
            set.insert(key, m).map_err(|e| parse_err(e.to_string()))?;
        }
        set.fill_zeros_up_to(n);
        Ok(Structure::Generating {
            name: self.name.clone(),
            suite: self.suite,
            set,
        })
    }

    /// The map listed under `name`, read with the given shape.
    pub fn map_named(&self, name: &str, arity: usize, degree: i32) -> Result<MultiMap, CliError> {
        let rules = self
            .maps
            .get(name)
            .ok_or_else(|| parse_err(format!("no map named {name}")))?;
        build_map(&self.carrier()?, name, rules, arity, degree)
    }

    /// The file of a generating set; zero maps are left out.
    pub fn from_generating(name: &str, suite: Option<Suite>, set: &GeneratingSet) -> Self {
        let maps = set
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(k, m)| (k.code(), rules_of(m)))
            .collect();
        StructureFile {
            name: name.into(),
            suite,
            truncation: set.truncation(),
            carrier: carrier_spec(set.carrier()),
            maps,
        }
    }

    pub fn from_strict(s: &StrictStructure) -> Self {
        let mut maps = BTreeMap::new();
        maps.insert("d".to_string(), rules_of(&s.d));
        maps.insert("m".to_string(), rules_of(&s.m));
        if let Some(x) = &s.delta {
            maps.insert("delta".to_string(), rules_of(x));
        }
        if let Some(x) = &s.nabla {
            maps.insert("nabla".to_string(), rules_of(x));
        }
        StructureFile {
            name: s.name.clone(),
            suite: None,
            truncation: None,
            carrier: carrier_spec(&s.carrier),
            maps,
        }
    }
}

impl Structure {
    pub fn to_file(&self) -> StructureFile {
        match self {
            Structure::Generating { name, suite, set } => {
                StructureFile::from_generating(name, *suite, set)
            }
            Structure::Strict(s) => StructureFile::from_strict(s),
        }
    }
}

fn carrier_spec(c: &GradedCarrier) -> CarrierSpec {
    CarrierSpec {
        basis: c
            .symbols()
            .map(|s| (c.name(s).to_string(), c.degree(s)))
            .collect(),
        metric: c.metric().map(|m| m.to_vec()),
    }
}

fn rules_of(m: &MultiMap) -> Vec<RuleSpec> {
    let c = m.carrier();
    let vars = c.vars();
    m.rules()
        .map(|(word, terms)| RuleSpec {
            input: word.iter().map(|&s| c.name(s).to_string()).collect(),
            terms: terms
                .iter()
                .map(|t| TermSpec {
                    out: c.name(t.out).to_string(),
                    coeff: format_rational(&t.coeff),
                    derivs: if t.derivs.iter().all(|d| d.is_one()) {
                        Vec::new()
                    } else {
                        t.derivs.iter().map(|d| d.0[..vars].to_vec()).collect()
                    },
                })
                .collect(),
        })
        .collect()
}

fn build_map(
    c: &Arc<GradedCarrier>,
    what: &str,
    rules: &[RuleSpec],
    arity: usize,
    degree: i32,
) -> Result<MultiMap, CliError> {
    let sym = |name: &str| {
        c.index_of(name)
            .ok_or_else(|| parse_err(format!("{what}: unknown basis symbol {name:?}")))
    };
    let mut rb = RuleBuilder::new();
    for rule in rules {
        if rule.input.len() != arity {
            return Err(parse_err(format!(
                "{what}: input {:?} has arity {}, expected {arity}",
                rule.input,
                rule.input.len()
            )));
        }
        let word = rule
            .input
            .iter()
            .map(|s| sym(s))
            .collect::<Result<Vec<_>, _>>()?;
        for t in &rule.terms {
            let derivs = if t.derivs.is_empty() {
                vec![Mono::ONE; arity]
            } else {
                if t.derivs.len() != arity || t.derivs.iter().any(|d| d.len() != c.vars()) {
                    return Err(parse_err(format!(
                        "{what}: derivs need {arity} exponent vectors of length {}",
                        c.vars()
                    )));
                }
                t.derivs.iter().map(|d| Mono::from_exponents(d)).collect()
            };
            let coeff = parse_rational(&t.coeff)?;
            rb.add(&word, sym(&t.out)?, &derivs, coeff);
        }
    }
    rb.build(c, arity, degree)
        .map_err(|e| parse_err(format!("{what}: {e}")))
}
