//! Root systems of the simple Lie algebras, the Weyl dimension formula,
//! weight multiplicities by Freudenthal's recursion, and decompositions of
//! tensor products and alternating cubes into irreducibles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::polyexact::{Coeff, Mat, Rational};

/// Weight in the basis of fundamental weights.
pub type Weight = Vec<i64>;

/// Dominant weights with their multiplicities in a decomposition.
pub type DecompList = BTreeMap<Weight, u64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("no simple Lie algebra of type {0}{1}")]
    InvalidType(char, usize),
    #[error("weight {0:?} is not dominant")]
    NonDominantWeight(Weight),
    #[error("weight {0:?} has {1} coordinates, expected the rank {2}")]
    WrongRank(Weight, usize, usize),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootType {
    pub fn letter(self) -> char {
        match self {
            RootType::A => 'A',
            RootType::B => 'B',
            RootType::C => 'C',
            RootType::D => 'D',
            RootType::E => 'E',
            RootType::F => 'F',
            RootType::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => RootType::A,
            'B' => RootType::B,
            'C' => RootType::C,
            'D' => RootType::D,
            'E' => RootType::E,
            'F' => RootType::F,
            'G' => RootType::G,
            _ => return None,
        })
    }

    /// Whether `(self, rank)` names a simple Lie algebra, counting each
    /// isomorphism class once (B from rank 2, C from rank 3, D from rank 4).
    pub fn is_valid(self, rank: usize) -> bool {
        match self {
            RootType::A => rank >= 1,
            RootType::B => rank >= 2,
            RootType::C => rank >= 3,
            RootType::D => rank >= 4,
            RootType::E => (6..=8).contains(&rank),
            RootType::F => rank == 4,
            RootType::G => rank == 2,
        }
    }
}

/// Root system given by the symmetric Gram matrix of its simple roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: RootType,
    rank: usize,
    /// `(α_i, α_j)`.
    gram: Vec<Vec<Rational>>,
    /// `⟨α_i, α_j^∨⟩ = 2(α_i, α_j)/(α_j, α_j)`; row i is α_i in fundamental weights.
    cartan: Vec<Vec<i64>>,
    /// Converts fundamental-weight coordinates to simple-root coordinates.
    fund_to_root: Mat,
    /// Positive roots in simple-root coordinates.
    positive: Vec<Vec<i64>>,
}

fn q(n: i64, d: i64) -> Rational {
    crate::polyexact::q(n, d)
}

fn simple_gram(kind: RootType, rank: usize) -> Vec<Vec<Rational>> {
    let mut g = vec![vec![q(0, 1); rank]; rank];
    let mut link = |a: usize, b: usize, v: Rational| {
        g[a - 1][b - 1] = v.clone();
        g[b - 1][a - 1] = v;
    };
    let chain = |link: &mut dyn FnMut(usize, usize, Rational), upto: usize, v: Rational| {
        for i in 1..upto {
            link(i, i + 1, v.clone());
        }
    };
    let mut lengths = vec![q(2, 1); rank];
    match kind {
        RootType::A => chain(&mut link, rank, q(-1, 1)),
        RootType::B => {
            chain(&mut link, rank, q(-1, 1));
            lengths[rank - 1] = q(1, 1);
        }
        RootType::C => {
            chain(&mut link, rank - 1, q(-1, 2));
            link(rank - 1, rank, q(-1, 1));
            for l in lengths.iter_mut().take(rank - 1) {
                *l = q(1, 1);
            }
        }
        RootType::D => {
            chain(&mut link, rank - 1, q(-1, 1));
            link(rank - 2, rank, q(-1, 1));
        }
        RootType::E => {
            link(1, 3, q(-1, 1));
            link(2, 4, q(-1, 1));
            for i in 3..rank {
                link(i, i + 1, q(-1, 1));
            }
        }
        RootType::F => {
            link(1, 2, q(-1, 1));
            link(2, 3, q(-1, 1));
            link(3, 4, q(-1, 2));
            lengths[2] = q(1, 1);
            lengths[3] = q(1, 1);
        }
        RootType::G => {
            link(1, 2, q(-3, 1));
            lengths = vec![q(2, 1), q(6, 1)];
        }
    }
    for (i, l) in lengths.into_iter().enumerate() {
        g[i][i] = l;
    }
    g
}

/// Build a root system, generating positive roots by closing the simple
/// roots under simple reflections.
pub fn root_system(kind: RootType, rank: usize) -> Result<RootSystem, RepError> {
    if !kind.is_valid(rank) {
        return Err(RepError::InvalidType(kind.letter(), rank));
    }
    let gram = simple_gram(kind, rank);
    let cartan: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    let a = &gram[i][j] * q(2, 1) / &gram[j][j];
                    a.to_integer()
                        .to_i64()
                        .expect("Cartan entries are small integers")
                })
                .collect()
        })
        .collect();
    // μ_fund = Aᵀ · c_root
    let root_to_fund = Mat::from_fn(rank, rank, |i, j| Rational::from_i64(cartan[j][i]));
    let fund_to_root = root_to_fund
        .inverse()
        .expect("Cartan matrices are invertible");

    let mut positive: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect();
    positive.extend(frontier.iter().cloned());
    while let Some(beta) = frontier.pop() {
        for i in 0..rank {
            let pairing: i64 = (0..rank).map(|j| beta[j] * cartan[j][i]).sum();
            let mut image = beta.clone();
            image[i] -= pairing;
            if image.iter().all(|&c| c >= 0)
                && image.iter().any(|&c| c > 0)
                && positive.insert(image.clone())
            {
                frontier.push(image);
            }
        }
    }
    Ok(RootSystem {
        kind,
        rank,
        gram,
        cartan,
        fund_to_root,
        positive: positive.into_iter().collect(),
    })
}

impl RootSystem {
    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind.letter(), self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Dimension of the Lie algebra: `2·|Φ⁺| + rank`.
    pub fn algebra_dim(&self) -> usize {
        2 * self.positive.len() + self.rank
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        (0..self.rank).map(|j| i64::from(j + 1 == i)).collect()
    }

    /// ρ, the sum of the fundamental weights.
    pub fn rho(&self) -> Weight {
        vec![1; self.rank]
    }

    /// Fundamental-weight coordinates of a root given in simple-root coordinates.
    pub fn root_as_weight(&self, beta: &[i64]) -> Weight {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| beta[j] * self.cartan[j][i]).sum())
            .collect()
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn weight_to_root_coords(&self, mu: &[i64]) -> Vec<Rational> {
        let v: Vec<Rational> = mu.iter().map(|&m| Rational::from_i64(m)).collect();
        self.fund_to_root.mul_vec(&v)
    }

    /// `(μ, β)` for a weight μ and a root β in simple-root coordinates.
    fn pair_root(&self, mu: &[i64], beta: &[i64]) -> Rational {
        let mut total = Rational::zero();
        for j in 0..self.rank {
            if beta[j] != 0 && mu[j] != 0 {
                total +=
                    &self.gram[j][j] * Rational::from_i64(mu[j] * beta[j]) / Rational::from_i64(2);
            }
        }
        total
    }

    /// `(μ, ν)` for weights.
    pub fn inner(&self, mu: &[i64], nu: &[i64]) -> Rational {
        let a = self.weight_to_root_coords(mu);
        let b = self.weight_to_root_coords(nu);
        let mut total = Rational::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                total += &a[i] * &self.gram[i][j] * &b[j];
            }
        }
        total
    }

    /// Height `Σ c_i` of a weight written as `Σ c_i α_i`.
    pub fn height(&self, mu: &[i64]) -> Rational {
        self.weight_to_root_coords(mu)
            .into_iter()
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// The simple reflection `s_i` (1-based) acting on a weight.
    pub fn reflect(&self, i: usize, mu: &[i64]) -> Weight {
        let k = mu[i - 1];
        mu.iter()
            .zip(&self.cartan[i - 1])
            .map(|(m, a)| m - k * a)
            .collect()
    }

    fn check(&self, lambda: &[i64]) -> Result<(), RepError> {
        if lambda.len() != self.rank {
            return Err(RepError::WrongRank(
                lambda.to_vec(),
                lambda.len(),
                self.rank,
            ));
        }
        if lambda.iter().any(|&c| c < 0) {
            return Err(RepError::NonDominantWeight(lambda.to_vec()));
        }
        Ok(())
    }
}

/// Dimension of the irreducible representation with highest weight λ.
pub fn weyl_dim(rs: &RootSystem, lambda: &[i64]) -> Result<BigInt, RepError> {
    rs.check(lambda)?;
    let shifted: Weight = lambda.iter().map(|c| c + 1).collect();
    let rho = rs.rho();
    let mut num = Rational::one();
    for beta in rs.positive_roots() {
        num *= rs.pair_root(&shifted, beta) / rs.pair_root(&rho, beta);
    }
    debug_assert!(num.is_integer());
    Ok(num.to_integer())
}

/// Weight multiplicities of an irreducible representation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Character {
    rank: usize,
    mults: BTreeMap<Weight, u64>,
}

impl Character {
    pub fn from_map(rank: usize, mults: BTreeMap<Weight, u64>) -> Self {
        Character {
            rank,
            mults: mults.into_iter().filter(|(_, m)| *m > 0).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mults(&self) -> &BTreeMap<Weight, u64> {
        &self.mults
    }

    pub fn mult(&self, mu: &[i64]) -> u64 {
        self.mults.get(mu).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.mults.values().sum()
    }

    /// Weights repeated according to multiplicity, in sorted order.
    pub fn slots(&self) -> Vec<Weight> {
        self.mults
            .iter()
            .flat_map(|(w, &m)| std::iter::repeat(w.clone()).take(m as usize))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        weights_to_json(&self.mults)
    }
}

/// Freudenthal's recursion, level by level below the highest weight.
pub fn irr_character(rs: &RootSystem, lambda: &[i64]) -> Result<Character, RepError> {
    rs.check(lambda)?;
    let rho = rs.rho();
    let add = |a: &[i64], b: &[i64]| -> Weight { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let top_norm = {
        let lr = add(lambda, &rho);
        rs.inner(&lr, &lr)
    };
    let roots: Vec<(Vec<i64>, Weight)> = rs
        .positive_roots()
        .iter()
        .map(|b| (b.clone(), rs.root_as_weight(b)))
        .collect();
    let simple: Vec<Weight> = (0..rs.rank).map(|i| rs.cartan[i].clone()).collect();

    let mut mults: BTreeMap<Weight, u64> = BTreeMap::new();
    mults.insert(lambda.to_vec(), 1);
    let mut level: BTreeSet<Weight> = BTreeSet::from([lambda.to_vec()]);
    while !level.is_empty() {
        let candidates: BTreeSet<Weight> = level
            .iter()
            .flat_map(|mu| {
                simple
                    .iter()
                    .map(move |a| mu.iter().zip(a).map(|(x, y)| x - y).collect::<Weight>())
            })
            .collect();
        let mut next = BTreeSet::new();
        for mu in candidates {
            let mr = add(&mu, &rho);
            let denom = &top_norm - rs.inner(&mr, &mr);
            if denom.is_zero() {
                continue;
            }
            let mut sum = Rational::zero();
            for (beta, beta_w) in &roots {
                let mut shifted = add(&mu, beta_w);
                while let Some(&m) = mults.get(&shifted) {
                    sum += Rational::from_i64(m as i64) * rs.pair_root(&shifted, beta);
                    shifted = add(&shifted, beta_w);
                }
            }
            let m = sum * Rational::from_i64(2) / denom;
            debug_assert!(m.is_integer() && !m.is_negative());
            let m = m.to_integer().to_u64().expect("multiplicity fits in u64");
            if m > 0 {
                mults.insert(mu.clone(), m);
                next.insert(mu);
            }
        }
        level = next;
    }
    Ok(Character {
        rank: rs.rank,
        mults,
    })
}

/// Split a (virtual) character with nonnegative result into irreducibles,
/// always removing the highest remaining dominant weight first (largest
/// height, ties broken by the larger weight in lexicographic order).
pub fn peel(rs: &RootSystem, mut chi: BTreeMap<Weight, i64>) -> DecompList {
    let mut out = DecompList::new();
    loop {
        chi.retain(|_, m| *m != 0);
        let top = chi
            .iter()
            .filter(|(w, m)| **m > 0 && w.iter().all(|&c| c >= 0))
            .map(|(w, _)| (rs.height(w), w.clone()))
            .max();
        let Some((_, top)) = top else { break };
        let m = chi[&top];
        let irr = irr_character(rs, &top).expect("dominant by construction");
        for (w, k) in irr.mults() {
            *chi.entry(w.clone()).or_insert(0) -= m * *k as i64;
        }
        *out.entry(top).or_insert(0) += m as u64;
    }
    debug_assert!(chi.is_empty(), "character was not a sum of irreducibles");
    out
}

/// `V(λ) ⊗ V(μ)` by convolving the weight multisets and peeling.
pub fn tensor_decompose(
    rs: &RootSystem,
    lambda: &[i64],
    mu: &[i64],
) -> Result<DecompList, RepError> {
    let a = irr_character(rs, lambda)?;
    let b = irr_character(rs, mu)?;
    let mut chi: BTreeMap<Weight, i64> = BTreeMap::new();
    for (wa, ma) in a.mults() {
        for (wb, mb) in b.mults() {
            let sum: Weight = wa.iter().zip(wb).map(|(x, y)| x + y).collect();
            *chi.entry(sum).or_insert(0) += (ma * mb) as i64;
        }
    }
    Ok(peel(rs, chi))
}

/// Character of `∧³ V(λ)`: sums over 3-element subsets of weight slots.
pub fn alt3_character(rs: &RootSystem, lambda: &[i64]) -> Result<BTreeMap<Weight, i64>, RepError> {
    let slots = irr_character(rs, lambda)?.slots();
    let mut chi: BTreeMap<Weight, i64> = BTreeMap::new();
    for i in 0..slots.len() {
        for j in i + 1..slots.len() {
            let ij: Weight = slots[i].iter().zip(&slots[j]).map(|(x, y)| x + y).collect();
            for k in j + 1..slots.len() {
                let sum: Weight = ij.iter().zip(&slots[k]).map(|(x, y)| x + y).collect();
                *chi.entry(sum).or_insert(0) += 1;
            }
        }
    }
    Ok(chi)
}

/// `∧³ V(λ)` decomposed into irreducibles.
pub fn alt3_decompose(rs: &RootSystem, lambda: &[i64]) -> Result<DecompList, RepError> {
    Ok(peel(rs, alt3_character(rs, lambda)?))
}

/// Total dimension `Σ mult · weyl_dim` of a decomposition.
pub fn decomp_dim(rs: &RootSystem, d: &DecompList) -> BigInt {
    d.iter()
        .map(|(w, &m)| {
            weyl_dim(rs, w).expect("decompositions hold dominant weights") * BigInt::from(m)
        })
        .fold(BigInt::from(0), |a, b| a + b)
}

/// Every dominant λ with `weyl_dim(λ) = d`. The dimension grows strictly
/// in each coordinate, so each coordinate can be raised until the
/// dimension with all later coordinates zero exceeds `d`.
pub fn irreps_of_dim(rs: &RootSystem, d: u64) -> Vec<Weight> {
    fn search(rs: &RootSystem, d: &BigInt, lambda: &mut Weight, pos: usize, out: &mut Vec<Weight>) {
        if pos == lambda.len() {
            if &weyl_dim(rs, lambda).expect("dominant") == d {
                out.push(lambda.clone());
            }
            return;
        }
        loop {
            if &weyl_dim(rs, lambda).expect("dominant") > d {
                break;
            }
            search(rs, d, lambda, pos + 1, out);
            lambda[pos] += 1;
        }
        lambda[pos] = 0;
    }
    let mut out = Vec::new();
    search(rs, &BigInt::from(d), &mut vec![0; rs.rank], 0, &mut out);
    out.sort();
    out
}

/// One row of the table of simple Lie algebras: the algebra dimension and
/// the dimension of a distinguished small representation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraRow {
    pub name: String,
    pub algebra_dim: usize,
    pub rep_weight: Weight,
    pub rep_dim: BigInt,
    pub adjoint_dim: BigInt,
}

/// Closed-form algebra dimension and smallest-representation dimension of
/// the classical families.
pub fn classical_formula(kind: RootType, n: usize) -> Option<(usize, usize)> {
    Some(match kind {
        RootType::A => ((n + 1) * (n + 1) - 1, n + 1),
        RootType::B => (n * (2 * n + 1), 2 * n + 1),
        RootType::C => (n * (2 * n + 1), 2 * n),
        RootType::D => (n * (2 * n - 1), 2 * n),
        _ => return None,
    })
}

/// Highest weight of the tabulated representation: the first fundamental
/// weight, except E₇ (the seventh) and F₄ (the fourth).
fn table_weight(kind: RootType, rank: usize) -> usize {
    match (kind, rank) {
        (RootType::E, 7) => 7,
        (RootType::F, _) => 4,
        _ => 1,
    }
}

/// Highest root of the root system as a weight (the adjoint representation).
pub fn highest_root_weight(rs: &RootSystem) -> Weight {
    let top = rs
        .positive_roots()
        .iter()
        .max_by_key(|b| b.iter().sum::<i64>())
        .expect("nonempty");
    rs.root_as_weight(top)
}

/// Rows for the classical families at the given ranks and for E₆, E₇, E₈,
/// F₄, G₂.
pub fn table45(classical_ranks: std::ops::RangeInclusive<usize>) -> Vec<AlgebraRow> {
    let mut specs: Vec<(RootType, usize)> = Vec::new();
    for kind in [RootType::A, RootType::B, RootType::C, RootType::D] {
        specs.extend(
            classical_ranks
                .clone()
                .filter(|&n| kind.is_valid(n))
                .map(|n| (kind, n)),
        );
    }
    specs.extend([
        (RootType::E, 6),
        (RootType::E, 7),
        (RootType::E, 8),
        (RootType::F, 4),
        (RootType::G, 2),
    ]);
    specs
        .into_iter()
        .map(|(kind, n)| {
            let rs = root_system(kind, n).expect("valid by construction");
            let rep_weight = rs.fundamental_weight(table_weight(kind, n));
            AlgebraRow {
                name: rs.name(),
                algebra_dim: rs.algebra_dim(),
                rep_dim: weyl_dim(&rs, &rep_weight).expect("dominant"),
                adjoint_dim: weyl_dim(&rs, &highest_root_weight(&rs)).expect("dominant"),
                rep_weight,
            }
        })
        .collect()
}

/// All simple Lie algebras of the given dimension.
pub fn simple_algebras_of_dim(d: usize) -> Vec<String> {
    let mut out = Vec::new();
    for kind in [RootType::A, RootType::B, RootType::C, RootType::D] {
        for n in 1.. {
            let (dim, _) = classical_formula(kind, n).expect("classical");
            if dim > d {
                break;
            }
            if dim == d && kind.is_valid(n) {
                out.push(format!("{}{n}", kind.letter()));
            }
        }
    }
    for (kind, n, dim) in [
        (RootType::E, 6, 78),
        (RootType::E, 7, 133),
        (RootType::E, 8, 248),
        (RootType::F, 4, 52),
        (RootType::G, 2, 14),
    ] {
        if dim == d {
            out.push(format!("{}{n}", kind.letter()));
        }
    }
    out
}

/// Parse names like `A3` or `e8`.
pub fn parse_type(s: &str) -> Result<(RootType, usize), RepError> {
    let mut chars = s.trim().chars();
    let kind = chars
        .next()
        .and_then(RootType::from_letter)
        .ok_or_else(|| RepError::Parse(s.into()))?;
    let rank = usize::from_str(chars.as_str()).map_err(|_| RepError::Parse(s.into()))?;
    Ok((kind, rank))
}

/// Parse comma-separated weight coordinates like `1,0,1`.
pub fn parse_weight(s: &str) -> Result<Weight, RepError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| RepError::Parse(s.into()))
        })
        .collect()
}

pub fn weight_to_string(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// `{"[a,b,…]": mult}` with keys in weight order.
pub fn weights_to_json<M: Copy + Into<i128>>(m: &BTreeMap<Weight, M>) -> Value {
    let mut obj = Map::new();
    for (w, &k) in m {
        obj.insert(weight_to_string(w), json!(k.into() as i64));
    }
    Value::Object(obj)
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        let (k, n) = parse_type(s).unwrap();
        root_system(k, n).unwrap()
    }

    fn dim(s: &str, w: &[i64]) -> u64 {
        weyl_dim(&rs(s), w).unwrap().to_u64().unwrap()
    }

    #[test]
    fn algebra_dimensions() {
        assert_eq!(rs("A2").algebra_dim(), 8);
        assert_eq!(rs("G2").algebra_dim(), 14);
        assert_eq!(rs("D4").algebra_dim(), 28);
        assert_eq!(rs("F4").algebra_dim(), 52);
        assert_eq!(rs("E6").algebra_dim(), 78);
        assert_eq!(rs("E7").algebra_dim(), 133);
        assert_eq!(rs("E8").algebra_dim(), 248);
        assert_eq!(
            root_system(RootType::G, 3).unwrap_err(),
            RepError::InvalidType('G', 3)
        );
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(dim("A2", &[1, 1]), 8);
        assert_eq!(dim("A2", &[2, 2]), 27);
        assert_eq!(dim("A3", &[1, 0, 1]), 15);
        assert_eq!(dim("A3", &[2, 0, 0]), 10);
        assert_eq!(dim("A3", &[0, 2, 0]), 20);
        assert_eq!(dim("A3", &[0, 1, 0]), 6);
        assert_eq!(dim("G2", &[1, 0]), 7);
        assert_eq!(dim("F4", &[0, 0, 0, 1]), 26);
        assert_eq!(dim("E6", &[1, 0, 0, 0, 0, 0]), 27);
        assert_eq!(dim("E7", &[0, 0, 0, 0, 0, 0, 1]), 56);
        assert_eq!(dim("E8", &[1, 0, 0, 0, 0, 0, 0, 0]), 3875);
        assert_eq!(dim("E8", &[0, 0, 0, 0, 0, 0, 0, 1]), 248);
        assert!(matches!(
            weyl_dim(&rs("A2"), &[-1, 0]),
            Err(RepError::NonDominantWeight(_))
        ));
    }

    #[test]
    fn characters() {
        let a2 = rs("A2");
        let fund = irr_character(&a2, &[1, 0]).unwrap();
        assert_eq!(fund.mults().len(), 3);
        assert!(fund.mults().values().all(|&m| m == 1));
        let adj = irr_character(&a2, &[1, 1]).unwrap();
        assert_eq!(adj.mult(&[0, 0]), 2);
        assert_eq!(adj.dim(), 8);
        for (s, w) in [
            ("B3", vec![1, 1, 0]),
            ("G2", vec![1, 1]),
            ("C3", vec![0, 1, 1]),
            ("D4", vec![1, 0, 0, 1]),
        ] {
            let r = rs(s);
            let chi = irr_character(&r, &w).unwrap();
            assert_eq!(BigInt::from(chi.dim()), weyl_dim(&r, &w).unwrap(), "{s}");
            for i in 1..=r.rank() {
                for (mu, m) in chi.mults() {
                    assert_eq!(chi.mult(&r.reflect(i, mu)), *m);
                }
            }
        }
    }

    #[test]
    fn adjoint_squared() {
        let a2 = rs("A2");
        let d = tensor_decompose(&a2, &[1, 1], &[1, 1]).unwrap();
        let expected: DecompList = [
            (vec![0, 0], 1),
            (vec![1, 1], 2),
            (vec![3, 0], 1),
            (vec![0, 3], 1),
            (vec![2, 2], 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expected);
        assert_eq!(decomp_dim(&a2, &d), BigInt::from(64));
        assert_eq!(
            tensor_decompose(&a2, &[2, 1], &[0, 0]).unwrap(),
            [(vec![2, 1], 1)].into_iter().collect()
        );
    }

    #[test]
    fn alternating_cube_of_adjoint() {
        let a2 = rs("A2");
        let d = alt3_decompose(&a2, &[1, 1]).unwrap();
        assert_eq!(d.get(&vec![0, 0]), Some(&1));
        assert_eq!(decomp_dim(&a2, &d), BigInt::from(56));
        let expected: DecompList = [
            (vec![0, 0], 1),
            (vec![1, 1], 1),
            (vec![3, 0], 1),
            (vec![0, 3], 1),
            (vec![2, 2], 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expected);
    }

    #[test]
    fn eight_dimensional_irreps() {
        assert_eq!(irreps_of_dim(&rs("A2"), 8), vec![vec![1, 1]]);
        assert!(irreps_of_dim(&rs("A3"), 8).is_empty());
        let d4 = irreps_of_dim(&rs("D4"), 8);
        assert_eq!(
            d4,
            vec![vec![0, 0, 0, 1], vec![0, 0, 1, 0], vec![1, 0, 0, 0]]
        );
    }

    #[test]
    fn classical_rows_match_formulas() {
        for row in table45(1..=6) {
            let (kind, n) = parse_type(&row.name).unwrap();
            if let Some((alg, rep)) = classical_formula(kind, n) {
                assert_eq!(row.algebra_dim, alg, "{}", row.name);
                assert_eq!(row.rep_dim, BigInt::from(rep), "{}", row.name);
            }
            assert_eq!(
                row.adjoint_dim,
                BigInt::from(row.algebra_dim),
                "{}",
                row.name
            );
        }
    }

    #[test]
    fn screening_by_dimension() {
        let hits: Vec<(usize, Vec<String>)> = [16, 18, 26, 28, 35, 36, 43, 45, 53, 55]
            .into_iter()
            .map(|d| (d, simple_algebras_of_dim(d)))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        let names: Vec<(usize, Vec<&str>)> = hits
            .iter()
            .map(|(d, v)| (*d, v.iter().map(String::as_str).collect()))
            .collect();
        assert_eq!(
            names,
            vec![
                (28, vec!["D4"]),
                (35, vec!["A5"]),
                (36, vec!["B4", "C4"]),
                (45, vec!["D5"]),
                (55, vec!["B5", "C5"])
            ]
        );
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_type("e8").unwrap(), (RootType::E, 8));
        assert!(parse_type("X2").is_err());
        assert_eq!(parse_weight("1, 0,1").unwrap(), vec![1, 0, 1]);
        let d: DecompList = [(vec![1, 1], 2)].into_iter().collect();
        assert_eq!(weights_to_json(&d).to_string(), r#"{"[1,1]":2}"#);
    }
}
