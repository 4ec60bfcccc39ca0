//! Shared fixtures for the criterion benchmarks.

use plucker_core::{Column, PlueckerError, Tableau};

/// A degree-`degree` monomial alternating the crossing pair
/// `(1, …, k−1, n)` and `(k, …, 2k−1)`.  The two columns are incomparable
/// (the first wins in the last row, loses in the first), so the product is
/// as far from standard as the shape allows and exercises the full
/// rewriting loop.
pub fn crossing_monomial(k: usize, n: u8, degree: usize) -> Result<Tableau, PlueckerError> {
    let mut low: Vec<u8> = (1..k as u8).collect();
    low.push(n);
    let high: Vec<u8> = (k as u8..2 * k as u8).collect();
    let a = Column::new(low, n)?;
    let b = Column::new(high, n)?;
    let columns = (0..degree)
        .map(|i| if i % 2 == 0 { a.clone() } else { b.clone() })
        .collect();
    Tableau::new(columns, k, n)
}
