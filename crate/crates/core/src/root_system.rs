//! Generalized Cartan matrices, weights in fundamental coordinates and
//! Weyl-group words.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * the Cartan pairing is stored as `a[i][j] = <alpha_i^vee, alpha_j>`;
//! * a [`Weight`] is the vector of its pairings against all simple coroots;
//! * a [`RootVector`] is a vector of coordinates in the simple-root basis;
//! * a [`WeylWord`] `[l1, l2, ..., lm]` denotes `s_{l1} s_{l2} ... s_{lm}`
//!   and acts on weights with the rightmost letter applied first.
//!
//! Finite families use Bourbaki numbering. Word reduction relies only on the
//! exchange property, so lengths and coset representatives are valid for any
//! symmetrizable generalized Cartan matrix, not just finite ones.

use crate::linalg::{rat_int, QMatrix, Rat};
use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("diagonal entry at {0} is not 2")]
    BadDiagonal(usize),
    #[error("off-diagonal entry ({0},{1}) is positive")]
    PositiveOffDiagonal(usize, usize),
    #[error("zero pattern is not symmetric at ({0},{1})")]
    AsymmetricZero(usize, usize),
    #[error("matrix admits no positive symmetrizer")]
    NotSymmetrizable,
    #[error("operation requires a finite-type matrix")]
    NotFiniteType,
    #[error("rank {rank} is not admissible for family {family}")]
    RankRange { family: Family, rank: usize },
    #[error("spherical parameters n={n}, p={p} must satisfy 2 <= p <= n-2")]
    SphRange { n: usize, p: usize },
    #[error("node index {0} out of range")]
    BadIndex(usize),
    #[error("coordinate vector has length {got}, expected {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("iteration bound exceeded while conjugating to the dominant chamber")]
    ConjugationBound,
    #[error("enumeration exceeded the configured bound of {0}")]
    ResourceBound(usize),
}

type Result<T> = std::result::Result<T, RootSystemError>;

/// Finite Dynkin families in Bourbaki numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::C => write!(f, "C"),
            Family::D => write!(f, "D"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}

/// Weight in fundamental coordinates: entry `i` is the pairing with
/// `alpha_i^vee`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// The fundamental weight at node `i`.
    pub fn fundamental(n: usize, i: usize) -> Self {
        let mut w = vec![0; n];
        w[i] = 1;
        Weight(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.0.iter().map(|&c| rat_int(c)).collect()
    }
}

impl std::ops::Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl std::ops::Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coords(&self.0, f)
    }
}

/// Vector of coordinates in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn simple(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        RootVector(c)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All coordinates nonnegative and not all zero.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c != 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c != 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl std::ops::Add for &RootVector {
    type Output = RootVector;
    fn add(self, rhs: &RootVector) -> RootVector {
        assert_eq!(self.len(), rhs.len(), "root length mismatch");
        RootVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coords(&self.0, f)
    }
}

fn fmt_coords(coords: &[i64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    for (k, c) in coords.iter().enumerate() {
        if k > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

/// Word in the simple reflections; letter `i` means `s_i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation `self * rhs` as words.
    pub fn then(&self, rhs: &WeylWord) -> WeylWord {
        let mut out = self.0.clone();
        out.extend_from_slice(&rhs.0);
        WeylWord(out)
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

/// A validated generalized Cartan matrix together with its symmetrizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gcm {
    a: Vec<Vec<i64>>,
    labels: Vec<String>,
    /// Minimal positive integer symmetrizer: `d[i] * a[i][j] = d[j] * a[j][i]`.
    sym: Vec<BigInt>,
}

impl Gcm {
    /// Validate and wrap a generalized Cartan matrix.
    pub fn new(a: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self> {
        let n = a.len();
        if a.iter().any(|row| row.len() != n) {
            return Err(RootSystemError::NotSquare);
        }
        if labels.len() != n {
            return Err(RootSystemError::LengthMismatch {
                got: labels.len(),
                want: n,
            });
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(RootSystemError::BadDiagonal(i));
            }
            for j in 0..n {
                if i != j {
                    if a[i][j] > 0 {
                        return Err(RootSystemError::PositiveOffDiagonal(i, j));
                    }
                    if (a[i][j] == 0) != (a[j][i] == 0) {
                        return Err(RootSystemError::AsymmetricZero(i, j));
                    }
                }
            }
        }
        let sym = symmetrizer(&a)?;
        Ok(Gcm { a, labels, sym })
    }

    fn from_edges(
        n: usize,
        edges: &[(usize, usize, i64, i64)],
        labels: Vec<String>,
    ) -> Result<Self> {
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            a[i][i] = 2;
        }
        for &(i, j, aij, aji) in edges {
            a[i][j] = aij;
            a[j][i] = aji;
        }
        Gcm::new(a, labels)
    }

    /// Cartan matrix of a finite family in Bourbaki numbering.
    pub fn finite(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        };
        if rank < min {
            return Err(RootSystemError::RankRange { family, rank });
        }
        let labels = (1..=rank).map(|i| format!("a{i}")).collect();
        let mut edges: Vec<(usize, usize, i64, i64)> = Vec::new();
        match family {
            Family::A => {
                for i in 0..rank - 1 {
                    edges.push((i, i + 1, -1, -1));
                }
            }
            Family::B => {
                // alpha_rank is the short root: <alpha_rank^vee, alpha_{rank-1}> = -2.
                for i in 0..rank - 2 {
                    edges.push((i, i + 1, -1, -1));
                }
                edges.push((rank - 2, rank - 1, -1, -2));
            }
            Family::C => {
                // alpha_rank is the long root: <alpha_{rank-1}^vee, alpha_rank> = -2.
                for i in 0..rank - 2 {
                    edges.push((i, i + 1, -1, -1));
                }
                edges.push((rank - 2, rank - 1, -2, -1));
            }
            Family::D => {
                for i in 0..rank - 2 {
                    edges.push((i, i + 1, -1, -1));
                }
                edges.push((rank - 3, rank - 1, -1, -1));
            }
        }
        Gcm::from_edges(rank, &edges, labels)
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn symmetrizer(&self) -> &[BigInt] {
        &self.sym
    }

    /// Restriction to a subset of nodes (in the given order).
    pub fn sub(&self, nodes: &[usize]) -> Result<Gcm> {
        for &i in nodes {
            if i >= self.size() {
                return Err(RootSystemError::BadIndex(i));
            }
        }
        let a = nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| self.a[i][j]).collect())
            .collect();
        let labels = nodes.iter().map(|&i| self.labels[i].clone()).collect();
        Gcm::new(a, labels)
    }

    fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.len() != self.size() {
            return Err(RootSystemError::LengthMismatch {
                got: w.len(),
                want: self.size(),
            });
        }
        Ok(())
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i >= self.size() {
            return Err(RootSystemError::BadIndex(i));
        }
        Ok(())
    }

    /// `alpha_j` written in fundamental coordinates (the `j`-th column).
    pub fn simple_root_weight(&self, j: usize) -> Result<Weight> {
        self.check_node(j)?;
        Ok(Weight((0..self.size()).map(|i| self.a[i][j]).collect()))
    }

    /// Fundamental coordinates of a root vector: the matrix-vector product
    /// with the Cartan matrix.
    pub fn root_to_weight(&self, r: &RootVector) -> Result<Weight> {
        if r.len() != self.size() {
            return Err(RootSystemError::LengthMismatch {
                got: r.len(),
                want: self.size(),
            });
        }
        Ok(Weight(
            (0..self.size())
                .map(|i| (0..self.size()).map(|j| self.a[i][j] * r.0[j]).sum())
                .collect(),
        ))
    }

    /// Rational simple-root coordinates of a weight (finite type only).
    pub fn weight_to_root(&self, w: &Weight) -> Result<Vec<Rat>> {
        self.check_weight(w)?;
        let inv = self.inverse_cartan()?;
        Ok(inv.mul_vec(&w.to_rat()))
    }

    /// Exact inverse of the Cartan matrix; errors for non finite type.
    pub fn inverse_cartan(&self) -> Result<QMatrix> {
        if !self.is_finite_type() {
            return Err(RootSystemError::NotFiniteType);
        }
        let m = QMatrix::from_int_rows(&self.a);
        Ok(m.inverse()
            .expect("finite-type Cartan matrix is invertible"))
    }

    /// Finite type iff the symmetrized matrix is positive definite.
    pub fn is_finite_type(&self) -> bool {
        let n = self.size();
        let mut b = QMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                b[(i, j)] = Rat::from_integer(self.sym[i].clone() * BigInt::from(self.a[i][j]));
            }
        }
        b.is_positive_definite()
    }

    /// Pairing `<alpha_i^vee, lambda>` (just a coordinate lookup).
    pub fn pairing(&self, i: usize, w: &Weight) -> Result<i64> {
        self.check_node(i)?;
        self.check_weight(w)?;
        Ok(w.0[i])
    }

    /// Pairing `<alpha_i^vee, beta>` for a root vector `beta`.
    pub fn pairing_root(&self, i: usize, r: &RootVector) -> Result<i64> {
        self.check_node(i)?;
        if r.len() != self.size() {
            return Err(RootSystemError::LengthMismatch {
                got: r.len(),
                want: self.size(),
            });
        }
        Ok((0..self.size()).map(|j| self.a[i][j] * r.0[j]).sum())
    }

    /// Simple reflection on a weight:
    /// `s_i(lambda) = lambda - <alpha_i^vee, lambda> alpha_i`.
    pub fn reflect(&self, i: usize, w: &Weight) -> Result<Weight> {
        self.check_node(i)?;
        self.check_weight(w)?;
        let c = w.0[i];
        Ok(Weight(
            (0..self.size())
                .map(|j| w.0[j] - c * self.a[j][i])
                .collect(),
        ))
    }

    /// Simple reflection on a root vector.
    pub fn reflect_root(&self, i: usize, r: &RootVector) -> Result<RootVector> {
        let p = self.pairing_root(i, r)?;
        let mut out = r.0.clone();
        out[i] -= p;
        Ok(RootVector(out))
    }

    /// Apply a word to a weight, rightmost letter first.
    pub fn act(&self, w: &WeylWord, lambda: &Weight) -> Result<Weight> {
        let mut cur = lambda.clone();
        for &i in w.0.iter().rev() {
            cur = self.reflect(i, &cur)?;
        }
        Ok(cur)
    }

    /// Apply a word to a root vector, rightmost letter first.
    pub fn act_on_root(&self, w: &WeylWord, r: &RootVector) -> Result<RootVector> {
        let mut cur = r.clone();
        for &i in w.0.iter().rev() {
            cur = self.reflect_root(i, &cur)?;
        }
        Ok(cur)
    }

    /// Reduce a word to an equivalent reduced word via the exchange property.
    ///
    /// Letters are consumed left to right; appending `s_i` to a reduced `r`
    /// extends it when `r(alpha_i) > 0` and otherwise deletes the unique
    /// letter the strong exchange property points at.
    pub fn reduce(&self, word: &WeylWord) -> Result<WeylWord> {
        let mut r: Vec<usize> = Vec::new();
        for &i in &word.0 {
            self.check_node(i)?;
            let image =
                self.act_on_root(&WeylWord(r.clone()), &RootVector::simple(self.size(), i))?;
            if image.is_positive() {
                r.push(i);
            } else {
                // Find t with (s_{r[t+1]} ... s_{r[m]})(alpha_i) = alpha_{r[t]}.
                let mut v = RootVector::simple(self.size(), i);
                let mut deleted = None;
                for t in (0..r.len()).rev() {
                    if v == RootVector::simple(self.size(), r[t]) {
                        deleted = Some(t);
                        break;
                    }
                    v = self.reflect_root(r[t], &v)?;
                }
                let t = deleted.expect("exchange property must yield a deletion point");
                r.remove(t);
            }
        }
        Ok(WeylWord(r))
    }

    /// Coxeter length via reduction.
    pub fn length(&self, word: &WeylWord) -> Result<usize> {
        Ok(self.reduce(word)?.len())
    }

    /// Whether two words represent the same group element.
    pub fn same_element(&self, a: &WeylWord, b: &WeylWord) -> Result<bool> {
        // w = v iff w v^{-1} reduces to the identity.
        Ok(self.reduce(&a.then(&b.inverse()))?.is_empty())
    }

    /// Minimal length representative of the coset `w * W_subset`.
    pub fn min_coset_rep(&self, word: &WeylWord, subset: &[usize]) -> Result<WeylWord> {
        for &i in subset {
            self.check_node(i)?;
        }
        let mut w = self.reduce(word)?;
        loop {
            let mut descended = false;
            for &i in subset {
                let image = self.act_on_root(&w, &RootVector::simple(self.size(), i))?;
                if image.is_negative() {
                    let mut ext = w.0.clone();
                    ext.push(i);
                    w = self.reduce(&WeylWord(ext))?;
                    descended = true;
                    break;
                }
            }
            if !descended {
                return Ok(w);
            }
        }
    }

    /// Longest element of the parabolic generated by `subset`
    /// (requires the sub-matrix to be of finite type).
    pub fn longest_element(&self, subset: &[usize]) -> Result<WeylWord> {
        let sub = self.sub(subset)?;
        if !sub.is_finite_type() {
            return Err(RootSystemError::NotFiniteType);
        }
        let mut w = WeylWord::identity();
        loop {
            let mut ascended = false;
            for &i in subset {
                let image = self.act_on_root(&w, &RootVector::simple(self.size(), i))?;
                if image.is_positive() {
                    let mut ext = w.0.clone();
                    ext.push(i);
                    w = WeylWord(ext);
                    ascended = true;
                    break;
                }
            }
            if !ascended {
                return Ok(w);
            }
        }
    }

    /// All positive roots of a finite-type matrix, by reflection closure.
    pub fn positive_roots(&self) -> Result<Vec<RootVector>> {
        if !self.is_finite_type() {
            return Err(RootSystemError::NotFiniteType);
        }
        let n = self.size();
        let mut seen: std::collections::BTreeSet<RootVector> =
            (0..n).map(|i| RootVector::simple(n, i)).collect();
        let mut queue: Vec<RootVector> = seen.iter().cloned().collect();
        while let Some(r) = queue.pop() {
            for i in 0..n {
                let s = self.reflect_root(i, &r)?;
                if s.is_positive() && !seen.contains(&s) {
                    seen.insert(s.clone());
                    queue.push(s);
                }
            }
        }
        let mut out: Vec<RootVector> = seen.into_iter().collect();
        out.sort_by_key(|r| (r.height(), r.0.clone()));
        Ok(out)
    }

    /// Dominance order: `lambda <= mu` iff `mu - lambda` is a nonnegative
    /// integer combination of simple roots (finite type only).
    pub fn dominance_leq(&self, lambda: &Weight, mu: &Weight) -> Result<bool> {
        self.check_weight(lambda)?;
        self.check_weight(mu)?;
        let diff = mu - lambda;
        let coords = self.weight_to_root(&diff)?;
        Ok(coords.iter().all(|c| c.is_integer() && !c.is_negative()))
    }

    /// All dominant weights `mu <= lambda` in dominance order, for a
    /// dominant `lambda` of a finite-type matrix.
    ///
    /// Writes `mu = lambda - A k`; since the inverse Cartan matrix has
    /// nonnegative entries, `k` ranges over the integer box bounded by the
    /// rational vector `A^{-1} lambda`. `cap` bounds the number of box
    /// points visited.
    pub fn dominated_dominant(&self, lambda: &Weight, cap: usize) -> Result<Vec<Weight>> {
        self.check_weight(lambda)?;
        let n = self.size();
        let inv = self.inverse_cartan()?;
        let coords = inv.mul_vec(&lambda.to_rat());
        let bounds: Vec<i64> = coords
            .iter()
            .map(|c| {
                use num::ToPrimitive;
                c.floor().to_integer().to_i64().unwrap_or(i64::MAX).max(0)
            })
            .collect();
        let mut total: u128 = 1;
        for &b in &bounds {
            total = total.saturating_mul(b as u128 + 1);
            if total > cap as u128 {
                return Err(RootSystemError::ResourceBound(cap));
            }
        }
        let mut out = Vec::new();
        let mut k = vec![0i64; n];
        loop {
            let mu = Weight(
                (0..n)
                    .map(|i| lambda.0[i] - (0..n).map(|j| self.a[i][j] * k[j]).sum::<i64>())
                    .collect(),
            );
            if mu.is_dominant() {
                out.push((k.iter().sum::<i64>(), k.clone(), mu));
            }
            // Odometer step through the box.
            let mut pos = 0;
            loop {
                if pos == n {
                    out.sort();
                    return Ok(out.into_iter().map(|(_, _, mu)| mu).collect());
                }
                if k[pos] < bounds[pos] {
                    k[pos] += 1;
                    break;
                }
                k[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Orbit of a weight under the reflections at the given nodes, by
    /// breadth-first closure. `cap` bounds the orbit size.
    pub fn orbit(&self, lambda: &Weight, nodes: &[usize], cap: usize) -> Result<Vec<Weight>> {
        self.check_weight(lambda)?;
        for &i in nodes {
            self.check_node(i)?;
        }
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(lambda.clone());
        let mut queue = vec![lambda.clone()];
        while let Some(w) = queue.pop() {
            for &i in nodes {
                let r = self.reflect(i, &w)?;
                if !seen.contains(&r) {
                    if seen.len() >= cap {
                        return Err(RootSystemError::ResourceBound(cap));
                    }
                    seen.insert(r.clone());
                    queue.push(r);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Conjugate a weight into the dominant chamber, counting reflections.
    /// The parity of the count is the sign of the conjugating element.
    pub fn to_dominant(&self, lambda: &Weight) -> Result<(Weight, usize)> {
        self.check_weight(lambda)?;
        let mut cur = lambda.clone();
        let mut steps = 0usize;
        let cap = 1_000_000usize;
        loop {
            match (0..self.size()).find(|&i| cur.0[i] < 0) {
                None => return Ok((cur, steps)),
                Some(i) => {
                    cur = self.reflect(i, &cur)?;
                    steps += 1;
                    if steps > cap {
                        return Err(RootSystemError::ConjugationBound);
                    }
                }
            }
        }
    }
}

/// Minimal positive integer symmetrizer of a candidate matrix, or an error
/// when none exists.
fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<BigInt>> {
    let n = a.len();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rat::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_i a_ij = d_j a_ji  =>  d_j = d_i a_ij / a_ji.
                let dj = &di * rat_int(a[i][j]) / rat_int(a[j][i]);
                match &d[j] {
                    Some(old) => {
                        if *old != dj {
                            return Err(RootSystemError::NotSymmetrizable);
                        }
                    }
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                }
            }
        }
    }
    let d: Vec<Rat> = d.into_iter().map(|x| x.unwrap()).collect();
    if d.iter().any(|x| !x.is_positive()) {
        return Err(RootSystemError::NotSymmetrizable);
    }
    // Verify the defining identity globally, then clear denominators.
    for i in 0..n {
        for j in 0..n {
            if &d[i] * rat_int(a[i][j]) != &d[j] * rat_int(a[j][i]) {
                return Err(RootSystemError::NotSymmetrizable);
            }
        }
    }
    let lcm = d.iter().fold(BigInt::one(), |acc, x| {
        num::integer::lcm(acc, x.denom().clone())
    });
    let scaled: Vec<BigInt> = d.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = scaled
        .iter()
        .fold(BigInt::zero(), |acc, x| num::integer::gcd(acc, x.clone()));
    Ok(scaled.into_iter().map(|x| x / &gcd).collect())
}

/// Which diagram extension an [`ExtendedGcm`] was built by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KExtension {
    /// Two extra nodes joined to `alpha_1` by simple edges.
    Model(Family),
    /// `alpha_0` joined to `alpha_1`, `beta_0` joined to `alpha_{p-1}`.
    Sph { p: usize },
}

/// A finite diagram together with two extra nodes `alpha_0`, `beta_0`.
///
/// Node order of the extended matrix: `alpha_0`, `beta_0`, then the finite
/// diagram's nodes in their own order, so the finite node `i` (1-based) sits
/// at extended index `i + 1`.
#[derive(Debug, Clone)]
pub struct ExtendedGcm {
    pub gcm: Gcm,
    pub g: Gcm,
    pub g_rank: usize,
    pub kind: KExtension,
}

pub const ALPHA0: usize = 0;
pub const BETA0: usize = 1;

impl ExtendedGcm {
    /// Extend a finite diagram by `alpha_0` and `beta_0`, both joined to
    /// `alpha_1` by simple edges.
    pub fn model_k(family: Family, rank: usize) -> Result<Self> {
        let g = Gcm::finite(family, rank)?;
        let n = rank + 2;
        let mut labels = vec!["a0".to_string(), "b0".to_string()];
        labels.extend((1..=rank).map(|i| format!("a{i}")));
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            a[i][i] = 2;
        }
        for i in 1..=rank {
            for j in 1..=rank {
                a[i + 1][j + 1] = g.entry(i - 1, j - 1);
            }
        }
        a[ALPHA0][2] = -1;
        a[2][ALPHA0] = -1;
        a[BETA0][2] = -1;
        a[2][BETA0] = -1;
        Ok(ExtendedGcm {
            gcm: Gcm::new(a, labels)?,
            g,
            g_rank: rank,
            kind: KExtension::Model(family),
        })
    }

    /// Extend `B_n` by `alpha_0` joined to `alpha_1` and `beta_0` joined to
    /// `alpha_{p-1}`, both by simple edges.
    pub fn sph_k(n: usize, p: usize) -> Result<Self> {
        if p < 2 || p + 2 > n {
            return Err(RootSystemError::SphRange { n, p });
        }
        let g = Gcm::finite(Family::B, n)?;
        let size = n + 2;
        let mut labels = vec!["a0".to_string(), "b0".to_string()];
        labels.extend((1..=n).map(|i| format!("a{i}")));
        let mut a = vec![vec![0; size]; size];
        for i in 0..size {
            a[i][i] = 2;
        }
        for i in 1..=n {
            for j in 1..=n {
                a[i + 1][j + 1] = g.entry(i - 1, j - 1);
            }
        }
        a[ALPHA0][2] = -1;
        a[2][ALPHA0] = -1;
        let attach = (p - 1) + 1; // extended index of alpha_{p-1}
        a[BETA0][attach] = -1;
        a[attach][BETA0] = -1;
        Ok(ExtendedGcm {
            gcm: Gcm::new(a, labels)?,
            g,
            g_rank: n,
            kind: KExtension::Sph { p },
        })
    }

    /// Extended index of the finite node `i` (1-based).
    pub fn g_node(&self, i: usize) -> usize {
        i + 1
    }

    /// Extended indices of all finite nodes.
    pub fn g_nodes(&self) -> Vec<usize> {
        (1..=self.g_rank).map(|i| self.g_node(i)).collect()
    }

    /// Nodes of the extending sub-diagram `{alpha_0, beta_0, alpha_1, ...,
    /// alpha_{rank-1}}` (for the model extension this is a type-D diagram).
    pub fn levi_nodes(&self) -> Vec<usize> {
        let mut nodes = vec![ALPHA0, BETA0];
        nodes.extend((1..self.g_rank).map(|i| self.g_node(i)));
        nodes
    }

    /// Lift a weight of the finite diagram, putting zero coordinates at
    /// `alpha_0` and `beta_0`.
    pub fn lift(&self, w: &Weight) -> Result<Weight> {
        if w.len() != self.g_rank {
            return Err(RootSystemError::LengthMismatch {
                got: w.len(),
                want: self.g_rank,
            });
        }
        let mut out = vec![0; self.gcm.size()];
        out[2..].copy_from_slice(&w.0);
        Ok(Weight(out))
    }

    /// Restriction of an extended weight to the finite nodes.
    pub fn restrict(&self, w: &Weight) -> Result<Weight> {
        if w.len() != self.gcm.size() {
            return Err(RootSystemError::LengthMismatch {
                got: w.len(),
                want: self.gcm.size(),
            });
        }
        Ok(Weight(w.0[2..].to_vec()))
    }

    /// Restriction of an extended weight to an arbitrary node subset.
    pub fn restrict_to(&self, w: &Weight, nodes: &[usize]) -> Result<Weight> {
        if w.len() != self.gcm.size() {
            return Err(RootSystemError::LengthMismatch {
                got: w.len(),
                want: self.gcm.size(),
            });
        }
        Ok(Weight(nodes.iter().map(|&i| w.0[i]).collect()))
    }

    /// Embed a word over the finite diagram (0-based letters) into the
    /// extension.
    pub fn embed_word(&self, w: &WeylWord) -> WeylWord {
        WeylWord(w.0.iter().map(|&i| self.g_node(i + 1)).collect())
    }
}
