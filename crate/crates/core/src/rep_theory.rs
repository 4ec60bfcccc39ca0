//! Finite-type character arithmetic: the Weyl dimension formula,
//! Freudenthal weight multiplicities, and Klimyk tensor-product
//! decomposition, all over exact rationals.
//!
//! The inner product on the weight space is normalized by
//! `(alpha_i, lambda) = d_i <alpha_i^vee, lambda>` with `d` the minimal
//! symmetrizer, which is all the dimension and multiplicity formulas need.

use crate::linalg::{rat_int, QMatrix, Rat};
use crate::model_checker::{model_generators, sph_generators, ModelError};
use crate::report::CheckRecord;
use crate::root_system::{Family, Gcm, RootSystemError, RootVector, Weight};
use num::{BigInt, One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum RepError {
    #[error(transparent)]
    Root(#[from] RootSystemError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("rank {0} exceeds the supported bound {1}")]
    RankBound(usize, usize),
    #[error("dimension {0} exceeds the supported bound {1}")]
    DimBound(BigInt, u64),
    #[error("internal arithmetic error: {0}")]
    Internal(String),
}

type Result<T> = std::result::Result<T, RepError>;

const MAX_RANK: usize = 8;
const MAX_DIM: u64 = 200_000;
const BOX_CAP: usize = 5_000_000;
const ORBIT_CAP: usize = 1_000_000;

/// Multiplicities of the dominant weights of one irreducible module.
#[derive(Debug, Clone)]
pub struct WeightMultiplicityTable {
    pub top: Weight,
    pub entries: BTreeMap<Weight, BigInt>,
}

/// A finite-type Cartan matrix with the cached data the formulas use.
pub struct FiniteRootSystem {
    pub gcm: Gcm,
    pub positive_roots: Vec<RootVector>,
    pub rho: Weight,
    /// Symmetrizer entries as rationals.
    d: Vec<Rat>,
    inv_cartan: QMatrix,
    /// Fundamental coordinates of each positive root.
    root_weights: Vec<Weight>,
    all_nodes: Vec<usize>,
}

impl FiniteRootSystem {
    pub fn new(gcm: Gcm) -> Result<Self> {
        if !gcm.is_finite_type() {
            return Err(RepError::Root(RootSystemError::NotFiniteType));
        }
        if gcm.size() > MAX_RANK {
            return Err(RepError::RankBound(gcm.size(), MAX_RANK));
        }
        let positive_roots = gcm.positive_roots()?;
        let root_weights = positive_roots
            .iter()
            .map(|r| gcm.root_to_weight(r))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let d = gcm
            .symmetrizer()
            .iter()
            .map(|x| Rat::from_integer(x.clone()))
            .collect();
        let inv_cartan = gcm.inverse_cartan()?;
        let rho = Weight(vec![1; gcm.size()]);
        let all_nodes = (0..gcm.size()).collect();
        Ok(FiniteRootSystem {
            gcm,
            positive_roots,
            rho,
            d,
            inv_cartan,
            root_weights,
            all_nodes,
        })
    }

    pub fn rank(&self) -> usize {
        self.gcm.size()
    }

    /// `(alpha, lambda)` for a root vector `alpha = sum c_i alpha_i`:
    /// `sum_i c_i d_i <alpha_i^vee, lambda>`.
    fn ip_root_weight(&self, alpha: &RootVector, lambda: &Weight) -> Rat {
        alpha
            .0
            .iter()
            .zip(&self.d)
            .zip(&lambda.0)
            .map(|((c, d), m)| rat_int(*c) * d * rat_int(*m))
            .sum()
    }

    /// `(lambda, mu)` for two weights.
    fn ip_weight(&self, lambda: &Weight, mu: &Weight) -> Rat {
        let coords = self.inv_cartan.mul_vec(&lambda.to_rat());
        coords
            .iter()
            .zip(&self.d)
            .zip(&mu.0)
            .map(|((c, d), m)| c * d * rat_int(*m))
            .sum()
    }

    /// Exact dimension of the irreducible module with highest weight
    /// `lambda`.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<BigInt> {
        if !lambda.is_dominant() {
            return Err(RepError::NotDominant(lambda.clone()));
        }
        let shifted = lambda + &self.rho;
        let mut product = Rat::one();
        for alpha in &self.positive_roots {
            product *= self.ip_root_weight(alpha, &shifted) / self.ip_root_weight(alpha, &self.rho);
        }
        if !product.is_integer() {
            return Err(RepError::Internal(format!(
                "dimension product {product} is not an integer"
            )));
        }
        Ok(product.to_integer())
    }

    /// Freudenthal's recursion: multiplicities of all dominant weights of
    /// the module with highest weight `lambda`.
    pub fn freudenthal(&self, lambda: &Weight) -> Result<WeightMultiplicityTable> {
        if !lambda.is_dominant() {
            return Err(RepError::NotDominant(lambda.clone()));
        }
        let dim = self.weyl_dim(lambda)?;
        if dim > BigInt::from(MAX_DIM) {
            return Err(RepError::DimBound(dim, MAX_DIM));
        }
        // Ascending distance from lambda, so the recursion only ever looks
        // upward at already-computed entries.
        let candidates = self.gcm.dominated_dominant(lambda, BOX_CAP)?;
        let lambda_sq = {
            let s = lambda + &self.rho;
            self.ip_weight(&s, &s)
        };
        let mut entries: BTreeMap<Weight, BigInt> = BTreeMap::new();
        entries.insert(lambda.clone(), BigInt::one());
        for mu in candidates.iter().skip(1) {
            let mut rhs = Rat::zero();
            for (alpha, alpha_w) in self.positive_roots.iter().zip(&self.root_weights) {
                let mut nu = mu.clone();
                loop {
                    nu = &nu + alpha_w;
                    let (dom, _) = self.gcm.to_dominant(&nu)?;
                    match entries.get(&dom) {
                        // The alpha-string through mu leaves the weight
                        // system for good once a lookup misses.
                        None => break,
                        Some(m) => {
                            rhs += Rat::from_integer(m.clone()) * self.ip_root_weight(alpha, &nu)
                        }
                    }
                }
            }
            let mu_sq = {
                let s = mu + &self.rho;
                self.ip_weight(&s, &s)
            };
            let m = rat_int(2) * rhs / (&lambda_sq - &mu_sq);
            if !m.is_integer() || !m.is_positive() {
                return Err(RepError::Internal(format!(
                    "multiplicity of {mu} computed as {m}"
                )));
            }
            entries.insert(mu.clone(), m.to_integer());
        }
        Ok(WeightMultiplicityTable {
            top: lambda.clone(),
            entries,
        })
    }

    /// Orbit size of a weight under the full Weyl group.
    pub fn orbit_size(&self, mu: &Weight) -> Result<usize> {
        Ok(self.gcm.orbit(mu, &self.all_nodes, ORBIT_CAP)?.len())
    }

    /// Total dimension of a multiplicity table after orbit expansion.
    pub fn expanded_total(&self, table: &WeightMultiplicityTable) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (mu, m) in &table.entries {
            total += m * BigInt::from(self.orbit_size(mu)?);
        }
        Ok(total)
    }

    /// Klimyk's alternating sum: decompose the tensor product of the
    /// irreducibles with highest weights `lambda` and `mu`.
    pub fn tensor_decompose(
        &self,
        lambda: &Weight,
        mu: &Weight,
    ) -> Result<BTreeMap<Weight, BigInt>> {
        if !lambda.is_dominant() {
            return Err(RepError::NotDominant(lambda.clone()));
        }
        let table = self.freudenthal(mu)?;
        let shifted = lambda + &self.rho;
        let mut acc: BTreeMap<Weight, BigInt> = BTreeMap::new();
        for (nu, m) in &table.entries {
            for gamma in self.gcm.orbit(nu, &self.all_nodes, ORBIT_CAP)? {
                let xi = &shifted + &gamma;
                if xi.0.contains(&0) {
                    continue;
                }
                let (dom, steps) = self.gcm.to_dominant(&xi)?;
                // A zero coordinate after conjugation means xi was singular
                // (orthogonal to some non-simple coroot): no contribution.
                if dom.0.contains(&0) {
                    continue;
                }
                let target = &dom - &self.rho;
                let signed = if steps % 2 == 0 {
                    m.clone()
                } else {
                    -m.clone()
                };
                *acc.entry(target).or_insert_with(BigInt::zero) += signed;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        for (nu, v) in &acc {
            if v.is_negative() {
                return Err(RepError::Internal(format!(
                    "negative multiplicity {v} at {nu}"
                )));
            }
        }
        Ok(acc)
    }

    /// Multiplicity of the irreducible with highest weight `nu` inside the
    /// tensor product of those with highest weights `lambda` and `mu`.
    pub fn tensor_mult(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<BigInt> {
        Ok(self
            .tensor_decompose(lambda, mu)?
            .remove(nu)
            .unwrap_or_else(BigInt::zero))
    }
}

impl WeightMultiplicityTable {
    pub fn multiplicity(&self, mu: &Weight) -> BigInt {
        self.entries.get(mu).cloned().unwrap_or_else(BigInt::zero)
    }
}

/// Decompositions of the iterated tensor powers of the first generator,
/// `V_{eps_1}^{tensor j}` for `j = 1..=max_power`.
fn eps1_powers(
    rs: &FiniteRootSystem,
    eps1: &Weight,
    max_power: usize,
) -> Result<Vec<BTreeMap<Weight, BigInt>>> {
    let mut powers = Vec::with_capacity(max_power);
    let mut current = BTreeMap::new();
    current.insert(eps1.clone(), BigInt::one());
    powers.push(current);
    for _ in 2..=max_power {
        let prev = powers.last().unwrap();
        let mut next: BTreeMap<Weight, BigInt> = BTreeMap::new();
        for (nu, m) in prev {
            for (tau, c) in rs.tensor_decompose(nu, eps1)? {
                *next.entry(tau).or_insert_with(BigInt::zero) += m * c;
            }
        }
        powers.push(next);
    }
    Ok(powers)
}

/// The generator `eps_i` first appears in the `i`-th tensor power of
/// `eps_1`, with multiplicity one, and in no earlier power.
pub fn verify_mod1(family: Family, rank: usize, i: usize) -> Result<Vec<CheckRecord>> {
    const MAX_POWER: usize = 4;
    if rank > 4 || i > MAX_POWER {
        return Err(RepError::RankBound(rank.max(i), 4));
    }
    if i == 0 || i > rank {
        return Err(RepError::Internal(format!(
            "generator index {i} out of range for rank {rank}"
        )));
    }
    let data = model_generators(family, rank)?;
    let rs = FiniteRootSystem::new(data.gcm.clone())?;
    let powers = eps1_powers(&rs, &data.generators[0], i)?;
    let eps_i = &data.generators[i - 1];
    let mut records = Vec::new();
    let at_i = powers[i - 1]
        .get(eps_i)
        .cloned()
        .unwrap_or_else(BigInt::zero);
    records.push(CheckRecord::of(
        format!("mod1-eps{i}-at-power-{i}"),
        &data.label,
        rank,
        at_i == BigInt::one(),
        format!("multiplicity {at_i}, expected 1"),
    ));
    for j in 1..i {
        let at_j = powers[j - 1]
            .get(eps_i)
            .cloned()
            .unwrap_or_else(BigInt::zero);
        records.push(CheckRecord::of(
            format!("mod1-eps{i}-at-power-{j}"),
            &data.label,
            rank,
            at_j.is_zero(),
            format!("multiplicity {at_j}, expected 0"),
        ));
    }
    Ok(records)
}

/// Both multiplicity-one containments of the spherical case:
/// `V_{eps_2}` in `V_{eps_1} (x) V_{omega_{p-1}}` and
/// `V_{eps_3}` in `V_{eps_2} (x) V_{eps_1}`.
pub fn verify_sph1(n: usize, p: usize) -> Result<Vec<CheckRecord>> {
    if n > 6 {
        return Err(RepError::RankBound(n, 6));
    }
    let data = sph_generators(n, p)?;
    let rs = FiniteRootSystem::new(data.gcm.clone())?;
    let label = &data.label;
    let eps1 = &data.generators[0];
    let eps2 = &data.generators[1];
    let eps3 = &data.generators[2];
    let omega_prev = Weight::fundamental(n, p - 2);

    let m1 = rs.tensor_mult(&omega_prev, eps1, eps2)?;
    let m2 = rs.tensor_mult(eps2, eps1, eps3)?;
    Ok(vec![
        CheckRecord::of(
            "sph1-eps2",
            label,
            n,
            m1 == BigInt::one(),
            format!("multiplicity {m1}, expected 1"),
        ),
        CheckRecord::of(
            "sph1-eps3",
            label,
            n,
            m2 == BigInt::one(),
            format!("multiplicity {m2}, expected 1"),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::CheckStatus;

    fn rs(family: Family, rank: usize) -> FiniteRootSystem {
        FiniteRootSystem::new(Gcm::finite(family, rank).unwrap()).unwrap()
    }

    fn dim(r: &FiniteRootSystem, coords: &[i64]) -> BigInt {
        r.weyl_dim(&Weight(coords.to_vec())).unwrap()
    }

    #[test]
    fn weyl_dim_basics() {
        let a3 = rs(Family::A, 3);
        assert_eq!(dim(&a3, &[0, 0, 0]), BigInt::from(1));
        for l in 1..=4 {
            let r = rs(Family::A, l);
            let mut c = vec![0; l];
            c[0] = 1;
            assert_eq!(dim(&r, &c), BigInt::from(l as i64 + 1));
        }
        assert!(a3.weyl_dim(&Weight(vec![-1, 0, 0])).is_err());
    }

    #[test]
    fn weyl_dim_frozen_values() {
        let b3 = rs(Family::B, 3);
        assert_eq!(dim(&b3, &[0, 1, 0]), BigInt::from(21));
        assert_eq!(dim(&b3, &[0, 0, 1]), BigInt::from(8));
        let c3 = rs(Family::C, 3);
        assert_eq!(dim(&c3, &[0, 1, 0]), BigInt::from(14));
        assert_eq!(dim(&c3, &[0, 0, 1]), BigInt::from(14));
        let d4 = rs(Family::D, 4);
        assert_eq!(dim(&d4, &[1, 0, 0, 0]), BigInt::from(8));
        assert_eq!(dim(&d4, &[0, 1, 0, 0]), BigInt::from(28));
        assert_eq!(dim(&d4, &[0, 0, 1, 0]), BigInt::from(8));
        assert_eq!(dim(&d4, &[0, 0, 0, 1]), BigInt::from(8));
        let a4 = rs(Family::A, 4);
        assert_eq!(dim(&rs(Family::A, 3), &[0, 2, 0]), BigInt::from(20));
        assert_eq!(dim(&a4, &[0, 2, 0, 0]), BigInt::from(50));
        assert_eq!(dim(&rs(Family::A, 3), &[0, 3, 0]), BigInt::from(50));
        assert_eq!(dim(&a4, &[0, 3, 0, 0]), BigInt::from(175));
    }

    #[test]
    fn freudenthal_small_modules() {
        let a1 = rs(Family::A, 1);
        let t = a1.freudenthal(&Weight(vec![2])).unwrap();
        assert_eq!(t.entries.len(), 2);
        assert_eq!(t.multiplicity(&Weight(vec![2])), BigInt::one());
        assert_eq!(t.multiplicity(&Weight(vec![0])), BigInt::one());

        let a2 = rs(Family::A, 2);
        let adj = a2.freudenthal(&Weight(vec![1, 1])).unwrap();
        assert_eq!(adj.multiplicity(&Weight(vec![0, 0])), BigInt::from(2));
        assert_eq!(a2.expanded_total(&adj).unwrap(), BigInt::from(8));
    }

    #[test]
    fn freudenthal_totals_match_weyl_dim() {
        for (family, rank) in [
            (Family::A, 2),
            (Family::B, 2),
            (Family::C, 3),
            (Family::D, 4),
        ] {
            let r = rs(family, rank);
            let lambda = Weight(vec![1; rank]);
            let table = r.freudenthal(&lambda).unwrap();
            assert_eq!(
                r.expanded_total(&table).unwrap(),
                r.weyl_dim(&lambda).unwrap(),
                "total mismatch for {family}{rank}"
            );
        }
    }

    #[test]
    fn tensor_basics() {
        let a2 = rs(Family::A, 2);
        let w1 = Weight(vec![1, 0]);
        let dec = a2.tensor_decompose(&w1, &w1).unwrap();
        assert_eq!(dec.get(&Weight(vec![2, 0])), Some(&BigInt::one()));
        assert_eq!(dec.get(&Weight(vec![0, 1])), Some(&BigInt::one()));
        assert_eq!(dec.len(), 2);
        // Tensoring with the trivial module.
        assert_eq!(
            a2.tensor_mult(&w1, &Weight(vec![0, 0]), &w1).unwrap(),
            BigInt::one()
        );

        let c2 = rs(Family::C, 2);
        let v = Weight(vec![1, 0]);
        assert_eq!(
            c2.tensor_mult(&v, &v, &Weight(vec![0, 1])).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn tensor_dimension_identity() {
        let b2 = rs(Family::B, 2);
        let lambda = Weight(vec![1, 1]);
        let mu = Weight(vec![0, 2]);
        let dec = b2.tensor_decompose(&lambda, &mu).unwrap();
        let mut total = BigInt::zero();
        for (nu, m) in &dec {
            total += m * b2.weyl_dim(nu).unwrap();
        }
        assert_eq!(
            total,
            b2.weyl_dim(&lambda).unwrap() * b2.weyl_dim(&mu).unwrap()
        );
    }

    #[test]
    fn tensor_symmetry() {
        let c3 = rs(Family::C, 3);
        let lambda = Weight(vec![1, 0, 1]);
        let mu = Weight(vec![0, 1, 0]);
        assert_eq!(
            c3.tensor_decompose(&lambda, &mu).unwrap(),
            c3.tensor_decompose(&mu, &lambda).unwrap()
        );
    }

    #[test]
    fn mod1_examples() {
        for (family, rank, i) in [
            (Family::A, 3, 2),
            (Family::C, 3, 3),
            (Family::B, 2, 2),
            (Family::A, 2, 1),
        ] {
            let recs = verify_mod1(family, rank, i).unwrap();
            for r in &recs {
                assert_eq!(
                    r.status,
                    CheckStatus::Pass,
                    "{} failed for {family}{rank}, i={i}: {:?}",
                    r.check,
                    r.witness
                );
            }
        }
    }

    #[test]
    fn sph1_examples() {
        for (n, p) in [(4, 2), (5, 3)] {
            let recs = verify_sph1(n, p).unwrap();
            for r in &recs {
                assert_eq!(
                    r.status,
                    CheckStatus::Pass,
                    "{} failed for ({n},{p}): {:?}",
                    r.check,
                    r.witness
                );
            }
        }
    }
}
