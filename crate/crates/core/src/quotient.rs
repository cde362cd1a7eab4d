//! Canonical coset indices for full-rank sublattices of ℤ².

use num_integer::Integer;

use crate::error::{Error, Result};

/// A sublattice of ℤ² in Hermite normal form, basis `{(g, shift), (0, d)}`
/// with `g, d > 0` and `0 ≤ shift < d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeQuotient {
    g: i64,
    shift: i64,
    d: i64,
}

impl LatticeQuotient {
    pub fn from_basis(v1: (i64, i64), v2: (i64, i64)) -> Result<Self> {
        let (x1, y1) = v1;
        let (x2, y2) = v2;
        if x1 == 0 && x2 == 0 {
            return Err(Error::InvalidParameters("singular lattice basis".into()));
        }
        let e = x1.extended_gcd(&x2);
        let (g, s, t) = if e.gcd < 0 { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
        debug_assert_eq!(s * x1 + t * x2, g);
        let shift = s * y1 + t * y2;
        let d = ((x2 / g) * y1 - (x1 / g) * y2).abs();
        if d == 0 {
            return Err(Error::InvalidParameters("singular lattice basis".into()));
        }
        Ok(LatticeQuotient {
            g,
            shift: shift.rem_euclid(d),
            d,
        })
    }

    /// Number of cosets, i.e. the determinant.
    pub fn index(&self) -> u64 {
        (self.g * self.d) as u64
    }

    /// Coset id in `0..index()`.
    pub fn reduce(&self, i: i64, j: i64) -> u64 {
        let k = i.div_euclid(self.g);
        let i0 = i - k * self.g;
        let j0 = (j - k * self.shift).rem_euclid(self.d);
        (i0 * self.d + j0) as u64
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        self.reduce(i, j) == 0
    }

    /// One representative per coset, in coset-id order.
    pub fn representatives(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (0..self.g).flat_map(move |i| (0..self.d).map(move |j| (i, j)))
    }

    pub fn basis(&self) -> [(i64, i64); 2] {
        [(self.g, self.shift), (0, self.d)]
    }
}
