use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use super::{BlockSign, GeneratingKey};
use crate::error::{Error, Result};
use crate::shuffle::offsets;
use crate::tensor::{koszul_sign, GradedCarrier, MultiMap, Permutation, Rational};

/// A family of generating maps `m^t_{p̄}` on one carrier.
///
/// Keys are stored with blocks sorted; other block orders are answered through the
/// block symmetry. With a truncation order `n`, keys of weight above `n` read as zero.
#[derive(Clone, Debug)]
pub struct GeneratingSet {
    carrier: Arc<GradedCarrier>,
    maps: BTreeMap<GeneratingKey, MultiMap>,
    truncation: Option<u32>,
    block_sign: BlockSign,
}

/// Permutation of letters induced by sending block `j` of `p_src` to block
/// `target[j]`, together with the extra block sign (true means negative).
pub fn block_layout(p_src: &[usize], target: &[usize], sign: BlockSign) -> (Permutation, bool) {
    let k = p_src.len();
    let mut p_tgt = vec![0; k];
    for j in 0..k {
        p_tgt[target[j]] = p_src[j];
    }
    let src_off = offsets(p_src);
    let tgt_off = offsets(&p_tgt);
    let mut images = vec![0; p_src.iter().sum()];
    for j in 0..k {
        for a in 0..p_src[j] {
            images[src_off[j] + a] = tgt_off[target[j]] + a;
        }
    }
    let perm = Permutation::from_images(images).expect("block layout is a bijection");
    let neg = match sign {
        BlockSign::Plain => false,
        BlockSign::Suspended => {
            let blocks = Permutation::from_images(target.to_vec()).expect("block bijection");
            let degs: Vec<i32> = p_src.iter().map(|&x| x as i32 - 1).collect();
            koszul_sign(&blocks, &degs)
        }
    };
    (perm, neg)
}

/// Target block index for each block of `p`, sending it to sorted order
/// (stable among equal sizes).
pub(crate) fn sorting_target(p: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&j| (p[j], j));
    let mut target = vec![0; p.len()];
    for (pos, &j) in order.iter().enumerate() {
        target[j] = pos;
    }
    target
}

/// All block permutations (as targets) that preserve the block sizes of `p`.
pub(crate) fn size_preserving(p: &[usize]) -> Vec<Vec<usize>> {
    Permutation::all(p.len())
        .into_iter()
        .filter(|s| (0..p.len()).all(|j| p[s.image(j)] == p[j]))
        .map(|s| s.images().to_vec())
        .collect()
}

/// `m_{p'}` from the map stored for the sorted shape.
pub(crate) fn reshape(
    canonical: &MultiMap,
    p_query: &[usize],
    sign: BlockSign,
) -> Result<MultiMap> {
    let target = sorting_target(p_query);
    if target.iter().enumerate().all(|(j, &t)| j == t) {
        return Ok(canonical.clone());
    }
    let (perm, neg) = block_layout(p_query, &target, sign);
    let m = canonical.act(&perm)?;
    Ok(if neg { m.scale(&-Rational::one()) } else { m })
}

impl GeneratingSet {
    pub fn new(carrier: Arc<GradedCarrier>, truncation: Option<u32>) -> Self {
        GeneratingSet {
            carrier,
            maps: BTreeMap::new(),
            truncation,
            block_sign: BlockSign::default(),
        }
    }

    pub fn with_block_sign(mut self, sign: BlockSign) -> Self {
        self.block_sign = sign;
        self
    }

    pub fn carrier(&self) -> &Arc<GradedCarrier> {
        &self.carrier
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn block_sign(&self) -> BlockSign {
        self.block_sign
    }

    /// Stores `m` under `key`. A key with unsorted blocks is converted to the sorted
    /// shape through the block symmetry.
    pub fn insert(&mut self, key: GeneratingKey, m: MultiMap) -> Result<()> {
        if m.arity() != key.arity() {
            return Err(Error::Arity {
                expected: key.arity(),
                got: m.arity(),
            });
        }
        if m.degree() != key.degree() {
            return Err(Error::Degree(format!(
                "{key} has degree {}, map has degree {}",
                key.degree(),
                m.degree()
            )));
        }
        if !Arc::ptr_eq(m.carrier(), &self.carrier) && **m.carrier() != *self.carrier {
            return Err(Error::CarrierMismatch);
        }
        if let Some(n) = self.truncation {
            if key.weight() > n && !m.is_zero() {
                return Err(Error::Shape(format!(
                    "{key} has weight {} above the truncation order {n}",
                    key.weight()
                )));
            }
        }
        let canon = key.canonical();
        let stored = if key.is_canonical() {
            m
        } else {
            // m_{p'} = ε m_p∘σ̄, so m_p = ε m_{p'}∘σ̄⁻¹
            let target = sorting_target(&key.p);
            let (perm, neg) = block_layout(&key.p, &target, self.block_sign);
            let back = m.act(&perm.inverse())?;
            if neg {
                back.scale(&-Rational::one())
            } else {
                back
            }
        };
        self.maps.insert(canon, stored);
        Ok(())
    }

    /// The map for `key` in the given block order.
    pub fn get(&self, key: &GeneratingKey) -> Result<MultiMap> {
        let canon = key.canonical();
        match self.maps.get(&canon) {
            Some(m) => reshape(m, &key.p, self.block_sign),
            None => match self.truncation {
                Some(n) if key.weight() > n => {
                    Ok(MultiMap::zero(&self.carrier, key.arity(), key.degree()))
                }
                _ => Err(Error::MissingGenerator(key.to_string())),
            },
        }
    }

    /// The stored map for a sorted key, if present.
    pub fn stored(&self, key: &GeneratingKey) -> Option<&MultiMap> {
        self.maps.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GeneratingKey, &MultiMap)> {
        self.maps.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &GeneratingKey> {
        self.maps.keys()
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Largest weight among nonzero stored maps.
    pub fn max_weight(&self) -> Option<u32> {
        self.maps
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(k, _)| k.weight())
            .max()
    }

    /// Inserts the zero map for every key of weight `≤ w` not yet present.
    pub fn fill_zeros_up_to(&mut self, w: u32) {
        for wt in 0..=w {
            for key in GeneratingKey::all_of_weight(wt) {
                if !self.maps.contains_key(&key) {
                    let z = MultiMap::zero(&self.carrier, key.arity(), key.degree());
                    self.maps.insert(key, z);
                }
            }
        }
    }
}
