//! Standard monomial theory for the Grassmannian Gr(k,n): Plücker columns
//! under the componentwise order, tableaux as column multisets,
//! straightening of nonstandard products, Schubert and ridge restriction,
//! and an evaluation oracle that certifies every relation against minors of
//! random rational matrices.

use crate::linalg::{rank_mod_p, rat_int, QMatrix, Rat, RANK_PRIME};
use crate::report::CheckRecord;
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum PlueckerError {
    #[error("columns have different shapes: ({0},{1}) vs ({2},{3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("bad column: {0}")]
    BadColumn(String),
    #[error("columns are comparable; no straightening relation applies")]
    ComparablePair,
    #[error("matrix must be {0}x{1}")]
    MatrixShape(usize, usize),
    #[error("enumeration would exceed {0} tableaux")]
    SizeBound(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

type Result<T> = std::result::Result<T, PlueckerError>;

/// Number of random matrices used to certify each straightening relation.
const CERT_SAMPLES: usize = 20;
/// Cap on enumeration sizes and rewrite steps.
const ENUM_CAP: usize = 1_000_000;
const STEP_CAP: usize = 10_000_000;

/// A Plücker coordinate: a strictly increasing k-tuple from 1..=n.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Column {
    indices: Vec<u8>,
    n: u8,
}

impl Column {
    pub fn new(indices: Vec<u8>, n: u8) -> Result<Self> {
        if indices.is_empty() {
            return Err(PlueckerError::BadColumn("empty index tuple".into()));
        }
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(PlueckerError::BadColumn(format!(
                    "indices not strictly increasing: {indices:?}"
                )));
            }
        }
        if indices[0] < 1 || *indices.last().unwrap() > n {
            return Err(PlueckerError::BadColumn(format!(
                "indices {indices:?} out of range 1..={n}"
            )));
        }
        Ok(Column { indices, n })
    }

    pub fn k(&self) -> usize {
        self.indices.len()
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    /// The minimum column (1, 2, ..., k).
    pub fn minimum(k: usize, n: u8) -> Result<Self> {
        Column::new((1..=k as u8).collect(), n)
    }

    pub fn parse(token: &str, n: u8) -> Result<Self> {
        let indices = token
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u8>()
                    .map_err(|e| PlueckerError::Parse(format!("column index {s:?}: {e}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Column::new(indices, n)
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Componentwise comparison of two columns of the same shape.
pub fn leq_columns(a: &Column, b: &Column) -> Result<bool> {
    if a.k() != b.k() || a.n != b.n {
        return Err(PlueckerError::ShapeMismatch(
            a.k(),
            a.n as usize,
            b.k(),
            b.n as usize,
        ));
    }
    Ok(a.indices.iter().zip(&b.indices).all(|(x, y)| x <= y))
}

fn comparable(a: &Column, b: &Column) -> Result<bool> {
    Ok(leq_columns(a, b)? || leq_columns(b, a)?)
}

/// A monomial in Plücker coordinates: a multiset of columns of a common
/// shape, stored sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    columns: Vec<Column>,
    k: usize,
    n: u8,
}

impl Tableau {
    pub fn new(mut columns: Vec<Column>, k: usize, n: u8) -> Result<Self> {
        for c in &columns {
            if c.k() != k || c.n != n {
                return Err(PlueckerError::ShapeMismatch(
                    c.k(),
                    c.n as usize,
                    k,
                    n as usize,
                ));
            }
        }
        columns.sort();
        Ok(Tableau { columns, k, n })
    }

    pub fn empty(k: usize, n: u8) -> Self {
        Tableau {
            columns: Vec::new(),
            k,
            n,
        }
    }

    pub fn single(c: Column) -> Self {
        let (k, n) = (c.k(), c.n);
        Tableau {
            columns: vec![c],
            k,
            n,
        }
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn degree(&self) -> usize {
        self.columns.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// Multiply by one more column.
    pub fn times(&self, c: Column) -> Result<Tableau> {
        let mut cols = self.columns.clone();
        cols.push(c);
        Tableau::new(cols, self.k, self.n)
    }

    /// A tableau is standard when its columns form a componentwise chain.
    /// Since componentwise order refines the lexicographic storage order,
    /// it suffices to compare adjacent columns.
    pub fn is_standard(&self) -> bool {
        self.columns
            .windows(2)
            .all(|w| leq_columns(&w[0], &w[1]).unwrap())
    }

    /// First adjacent incomparable pair, present exactly when the tableau
    /// is nonstandard.
    fn violation(&self) -> Option<(usize, usize)> {
        (0..self.columns.len().saturating_sub(1))
            .find(|&i| !comparable(&self.columns[i], &self.columns[i + 1]).unwrap())
            .map(|i| (i, i + 1))
    }

    /// Key for the monomial order: total degree, then the sorted multiset
    /// of all entries, then the sorted column sequence. The shape comes
    /// last so that the order stays consistent with equality.
    fn order_key(&self) -> (usize, Vec<u8>, Vec<Vec<u8>>, usize, u8) {
        let mut flat: Vec<u8> = self
            .columns
            .iter()
            .flat_map(|c| c.indices.iter().copied())
            .collect();
        flat.sort_unstable();
        (
            self.degree(),
            flat,
            self.columns.iter().map(|c| c.indices.clone()).collect(),
            self.k,
            self.n,
        )
    }

    pub fn parse(token: &str, n: u8) -> Result<Self> {
        let cols = token
            .split('|')
            .map(|t| Column::parse(t, n))
            .collect::<Result<Vec<_>>>()?;
        if cols.is_empty() {
            return Err(PlueckerError::Parse("no columns in token".into()));
        }
        let k = cols[0].k();
        Tableau::new(cols, k, n)
    }
}

impl PartialOrd for Tableau {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tableau {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A finite rational combination of standard tableaux, evaluation-equal to
/// the monomial it straightens.
#[derive(Debug, Clone, PartialEq)]
pub struct Straightening {
    pub combo: BTreeMap<Tableau, Rat>,
}

impl Straightening {
    pub fn evaluate(&self, m: &QMatrix) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (t, c) in &self.combo {
            acc += evaluate_tableau(t, m)? * c;
        }
        Ok(acc)
    }
}

/// Evaluate one monomial at an n-by-k rational matrix: the product over
/// columns of the k-by-k minor on the column's rows.
pub fn evaluate_tableau(t: &Tableau, m: &QMatrix) -> Result<Rat> {
    if m.rows != t.n as usize || m.cols != t.k {
        return Err(PlueckerError::MatrixShape(t.n as usize, t.k));
    }
    let mut acc = Rat::one();
    for c in &t.columns {
        acc *= column_minor(c, m);
    }
    Ok(acc)
}

/// The k-by-k minor of an n-by-k matrix on the rows named by a column
/// (1-based).
pub fn column_minor(c: &Column, m: &QMatrix) -> Rat {
    let k = c.k();
    let mut sub = QMatrix::zero(k, k);
    for (i, &row) in c.indices.iter().enumerate() {
        for j in 0..k {
            sub[(i, j)] = m[(row as usize - 1, j)].clone();
        }
    }
    sub.det()
}

/// Random n-by-k matrix with integer entries in -9..=9.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, k: usize) -> QMatrix {
    let mut m = QMatrix::zero(n, k);
    for i in 0..n {
        for j in 0..k {
            m[(i, j)] = rat_int(rng.gen_range(-9..=9));
        }
    }
    m
}

/// Random matrix with every k-by-k minor nonzero; degenerate draws are
/// rejected and redrawn.
pub fn random_generic_matrix(rng: &mut ChaCha8Rng, n: usize, k: usize) -> QMatrix {
    loop {
        let m = random_matrix(rng, n, k);
        let generic = basis_columns(k, n as u8)
            .iter()
            .all(|c| !column_minor(c, &m).is_zero());
        if generic {
            return m;
        }
    }
}

/// All columns of shape (k, n) in lexicographic order.
pub fn basis_columns(k: usize, n: u8) -> Vec<Column> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=k as u8).collect();
    if k == 0 || k > n as usize {
        return out;
    }
    loop {
        out.push(Column::new(cur.clone(), n).unwrap());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (k - 1 - i) as u8 {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Sort a tuple, reporting the permutation sign; `None` on a repeated
/// entry (the corresponding minor vanishes).
fn sort_with_sign(mut v: Vec<u8>) -> Option<(Vec<u8>, i64)> {
    let mut sign = 1i64;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Straightening relation for an incomparable product: `a*b` equals the
/// returned combination of strictly smaller column pairs. The shuffle runs
/// over the union of the head of `b` and the tail of `a` at the first
/// violated position, and the resulting identity is certified by evaluation
/// at random matrices before being returned.
pub fn garnir_relation(a: &Column, b: &Column) -> Result<BTreeMap<Tableau, Rat>> {
    if comparable(a, b)? {
        return Err(PlueckerError::ComparablePair);
    }
    let t = a
        .indices
        .iter()
        .zip(&b.indices)
        .position(|(x, y)| x > y)
        .expect("incomparable columns have a violated position");
    let k = a.k();
    // The k+1 shuffled values b[0..=t], a[t..]; both remainders stay fixed.
    let pool: Vec<u8> = b.indices[..=t]
        .iter()
        .chain(&a.indices[t..])
        .copied()
        .collect();
    let head: Vec<u8> = a.indices[..t].to_vec();
    let tail: Vec<u8> = b.indices[t + 1..].to_vec();

    let mut relation: BTreeMap<Tableau, Rat> = BTreeMap::new();
    let input = Tableau::new(vec![a.clone(), b.clone()], k, a.n)?;
    for positions in subsets(pool.len(), t + 1) {
        let mut in_x = vec![false; pool.len()];
        for &p in &positions {
            in_x[p] = true;
        }
        let x: Vec<u8> = (0..pool.len())
            .filter(|&i| in_x[i])
            .map(|i| pool[i])
            .collect();
        let y: Vec<u8> = (0..pool.len())
            .filter(|&i| !in_x[i])
            .map(|i| pool[i])
            .collect();
        // Shuffle sign: inversions between the X block and the Y block.
        let inversions = x
            .iter()
            .map(|&xv| y.iter().filter(|&&yv| yv < xv).count())
            .sum::<usize>();
        let shuffle_sign = if inversions % 2 == 0 { 1 } else { -1 };
        let Some((new_b, sign_b)) = sort_with_sign([x.as_slice(), &tail].concat()) else {
            continue;
        };
        let Some((new_a, sign_a)) = sort_with_sign([head.as_slice(), &y].concat()) else {
            continue;
        };
        let pair = Tableau::new(
            vec![Column::new(new_a, a.n)?, Column::new(new_b, a.n)?],
            k,
            a.n,
        )?;
        let coeff = rat_int(shuffle_sign * sign_a * sign_b);
        let entry = relation.entry(pair).or_insert_with(Rat::zero);
        *entry += coeff;
    }
    relation.retain(|_, v| !v.is_zero());
    // The identity split contributes the input pair with coefficient one;
    // everything else moves to the other side.
    let lead = relation
        .remove(&input)
        .ok_or_else(|| PlueckerError::Internal("shuffle relation lost its leading term".into()))?;
    if !lead.is_one() {
        return Err(PlueckerError::Internal(format!(
            "leading coefficient {lead} in shuffle relation"
        )));
    }
    let result: BTreeMap<Tableau, Rat> = relation.into_iter().map(|(t, c)| (t, -c)).collect();
    for term in result.keys() {
        if term >= &input {
            return Err(PlueckerError::Internal(format!(
                "straightening term {term} does not decrease below {input}"
            )));
        }
    }
    certify_relation(&input, &result)?;
    Ok(result)
}

/// Strictly increasing position tuples, reused as a subset odometer.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Evaluation certificate: the relation must reproduce the input product
/// exactly at random matrices. Failure is an implementation bug, never data.
fn certify_relation(input: &Tableau, relation: &BTreeMap<Tableau, Rat>) -> Result<()> {
    let (n, k) = (input.n as usize, input.k);
    let mut rng = cert_rng(k, n);
    for _ in 0..CERT_SAMPLES {
        let m = random_matrix(&mut rng, n, k);
        let lhs = evaluate_tableau(input, &m)?;
        let mut rhs = Rat::zero();
        for (t, c) in relation {
            rhs += evaluate_tableau(t, &m)? * c;
        }
        if lhs != rhs {
            return Err(PlueckerError::Internal(format!(
                "straightening relation for {input} failed evaluation certification"
            )));
        }
    }
    Ok(())
}

fn cert_rng(k: usize, n: usize) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(0x517A_11ED ^ ((n as u64) << 8) ^ k as u64)
}

/// Rewrite a monomial into the standard basis. Each step replaces the
/// largest nonstandard term using a certified straightening relation and
/// asserts that every replacement is strictly smaller in the monomial
/// order, so the rewriting terminates.
pub fn straighten(t: &Tableau) -> Result<Straightening> {
    let mut work: BTreeMap<Tableau, Rat> = BTreeMap::new();
    work.insert(t.clone(), Rat::one());
    let mut out: BTreeMap<Tableau, Rat> = BTreeMap::new();
    let mut cache: HashMap<(Column, Column), BTreeMap<Tableau, Rat>> = HashMap::new();
    let mut steps = 0usize;
    while let Some((top, coeff)) = work.pop_last() {
        if top.is_standard() {
            let entry = out.entry(top).or_insert_with(Rat::zero);
            *entry += coeff;
            continue;
        }
        steps += 1;
        if steps > STEP_CAP {
            return Err(PlueckerError::Internal(
                "straightening exceeded the rewrite step cap".into(),
            ));
        }
        let (i, j) = top
            .violation()
            .expect("nonstandard tableau has a violation");
        let (ca, cb) = (top.columns[i].clone(), top.columns[j].clone());
        let mut rest = top.columns.clone();
        rest.remove(j);
        rest.remove(i);
        let relation = match cache.entry((ca.clone(), cb.clone())) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => e.insert(garnir_relation(&ca, &cb)?),
        };
        for (pair, c) in relation.iter() {
            let mut cols = rest.clone();
            cols.extend(pair.columns.iter().cloned());
            let replacement = Tableau::new(cols, top.k, top.n)?;
            // Decreasing-measure check: rewriting must move strictly down
            // in the monomial order.
            if replacement >= top {
                return Err(PlueckerError::Internal(format!(
                    "rewrite does not decrease: {replacement} from {top}"
                )));
            }
            let entry = work.entry(replacement).or_insert_with(Rat::zero);
            *entry += coeff.clone() * c;
        }
        work.retain(|_, v| !v.is_zero());
    }
    out.retain(|_, v| !v.is_zero());
    Ok(Straightening { combo: out })
}

/// All standard tableaux of degree `d`: componentwise chains of length `d`.
pub fn enumerate_standard(k: usize, n: u8, d: usize) -> Result<Vec<Tableau>> {
    let columns = basis_columns(k, n);
    let mut out = Vec::new();
    let mut chain: Vec<Column> = Vec::new();
    fn extend(
        columns: &[Column],
        chain: &mut Vec<Column>,
        d: usize,
        k: usize,
        n: u8,
        out: &mut Vec<Tableau>,
    ) -> Result<()> {
        if chain.len() == d {
            out.push(Tableau::new(chain.clone(), k, n).expect("chains are valid tableaux"));
            if out.len() > ENUM_CAP {
                return Err(PlueckerError::SizeBound(ENUM_CAP));
            }
            return Ok(());
        }
        for c in columns {
            if chain.last().map_or(Ok(true), |prev| leq_columns(prev, c))? {
                chain.push(c.clone());
                extend(columns, chain, d, k, n, out)?;
                chain.pop();
            }
        }
        Ok(())
    }
    extend(&columns, &mut chain, d, k, n, &mut out)?;
    Ok(out)
}

/// Columns surviving restriction to the Schubert variety of `c`:
/// everything componentwise below `c`.
pub fn schubert_restrict(c: &Column) -> Vec<Column> {
    basis_columns(c.k(), c.n)
        .into_iter()
        .filter(|b| leq_columns(b, c).unwrap())
        .collect()
}

/// Schubert survivors minus the minimum column, which realizes the
/// lowest-weight vector.
pub fn ridge_restrict(c: &Column) -> Vec<Column> {
    let min = Column::minimum(c.k(), c.n).unwrap();
    schubert_restrict(c)
        .into_iter()
        .filter(|b| *b != min)
        .collect()
}

/// All degree-`d` monomials (multisets of `d` columns, standard or not).
pub fn all_monomials(k: usize, n: u8, d: usize) -> Result<Vec<Tableau>> {
    let columns = basis_columns(k, n);
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn extend(
        columns: &[Column],
        stack: &mut Vec<usize>,
        start: usize,
        d: usize,
        k: usize,
        n: u8,
        out: &mut Vec<Tableau>,
    ) -> Result<()> {
        if stack.len() == d {
            let cols = stack.iter().map(|&i| columns[i].clone()).collect();
            out.push(Tableau::new(cols, k, n)?);
            if out.len() > ENUM_CAP {
                return Err(PlueckerError::SizeBound(ENUM_CAP));
            }
            return Ok(());
        }
        for i in start..columns.len() {
            stack.push(i);
            extend(columns, stack, i, d, k, n, out)?;
            stack.pop();
        }
        Ok(())
    }
    extend(&columns, &mut stack, 0, d, k, n, &mut out)?;
    Ok(out)
}

/// Rank of the evaluation matrix of the given monomials at `samples`
/// random generic matrices, computed modulo a large prime. The modular
/// rank never exceeds the rational rank, so reaching a known upper bound
/// certifies exactness; short ranks trigger a redraw with more samples.
pub fn evaluation_rank(
    monomials: &[Tableau],
    expected: usize,
    rng: &mut ChaCha8Rng,
) -> Result<usize> {
    if monomials.is_empty() {
        return Ok(0);
    }
    let (k, n) = (monomials[0].k, monomials[0].n as usize);
    let mut samples = monomials.len() + 5;
    for _round in 0..3 {
        let rank = evaluation_rank_once(monomials, samples, k, n, rng)?;
        if rank >= expected {
            return Ok(rank);
        }
        samples *= 2;
    }
    evaluation_rank_once(monomials, samples, k, n, rng)
}

fn evaluation_rank_once(
    monomials: &[Tableau],
    samples: usize,
    k: usize,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<usize> {
    let p = RANK_PRIME;
    let to_mod = |r: &Rat| -> u64 {
        let numer = r.numer().mod_floor_u64(p);
        let denom = r.denom().mod_floor_u64(p);
        debug_assert_eq!(denom, 1, "minor products are integers");
        numer
    };
    let mut rows: Vec<Vec<u64>> = vec![Vec::with_capacity(samples); monomials.len()];
    for _ in 0..samples {
        let m = random_generic_matrix(rng, n, k);
        let mut minors: HashMap<&Column, u64> = HashMap::new();
        for (row, t) in rows.iter_mut().zip(monomials) {
            let mut acc: u64 = 1;
            for c in t.columns() {
                let v = *minors
                    .entry(c)
                    .or_insert_with(|| to_mod(&column_minor(c, &m)));
                acc = ((acc as u128 * v as u128) % p as u128) as u64;
            }
            row.push(acc);
        }
    }
    Ok(rank_mod_p(rows, p))
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = self % BigInt::from(p);
        let m = if m.is_negative() {
            m + BigInt::from(p)
        } else {
            m
        };
        m.to_u64().expect("reduced value fits in u64")
    }
}

/// Full report on the degree-`d` standard basis: the standard monomials
/// evaluate to a full-rank family, and in degree two the number of
/// relations among all monomials matches the dimension count.
pub fn verify_basis(k: usize, n: u8, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<CheckRecord>> {
    let label = format!("Gr({k},{n})");
    let standard = enumerate_standard(k, n, d)?;
    let rank = evaluation_rank(&standard, standard.len(), rng)?;
    let mut rec = CheckRecord::of(
        format!("basis-rank-d{d}"),
        &label,
        d,
        rank == standard.len(),
        "",
    );
    rec.witness = Some(format!(
        "rank {rank} of {} standard monomials",
        standard.len()
    ));
    let mut records = vec![rec];
    if d == 2 {
        let monomials = all_monomials(k, n, 2)?;
        let dim = standard.len();
        let rank2 = evaluation_rank(&monomials, dim, rng)?;
        let relations = monomials.len() - rank2;
        let expected = monomials.len() - dim;
        let mut rec = CheckRecord::of(
            "basis-quadratic-relations",
            &label,
            d,
            relations == expected,
            "",
        );
        rec.witness = Some(format!("{relations} relations, expected {expected}"));
        records.push(rec);
    }
    Ok(records)
}

/// The degree-three span of monomial multiples of degree-two straightening
/// relations, as exact coefficient vectors over the degree-three monomial
/// basis. Its dimension must be the full space of degree-three relations.
pub fn relation_span_degree3(k: usize, n: u8) -> Result<(usize, usize)> {
    let monomials3 = all_monomials(k, n, 3)?;
    let index: BTreeMap<&Tableau, usize> =
        monomials3.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for m in all_monomials(k, n, 2)? {
        if m.is_standard() {
            continue;
        }
        let straightened = straighten(&m)?;
        // Relation m - straighten(m), multiplied by every column.
        for c in basis_columns(k, n) {
            let mut row = vec![Rat::zero(); monomials3.len()];
            row[index[&m.times(c.clone())?]] += Rat::one();
            for (s, coeff) in &straightened.combo {
                row[index[&s.times(c.clone())?]] -= coeff;
            }
            rows.push(row);
        }
    }
    let span = QMatrix::from_rows(rows).rank();
    let dim3 = enumerate_standard(k, n, 3)?.len();
    let expected = monomials3.len() - dim3;
    Ok((span, expected))
}
