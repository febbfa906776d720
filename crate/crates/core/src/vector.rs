use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::lattice::gcd_all;

/// A point of `Z^n`, used for both the lattice `N` and its dual `M`.
///
/// Ordering is lexicographic on coordinates, which fixes every enumeration
/// order in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        assert!(!coords.is_empty(), "lattice vectors need dimension >= 1");
        LatticeVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticeVector::new(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector::new(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = LatticeVector::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    /// The standard pairing `<self, other>`.
    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// gcd of the coordinates.
    pub fn content(&self) -> BigInt {
        gcd_all(&self.0)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| x * k).collect())
    }

    /// Coordinates as `i64`, when they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| i64::try_from(x).ok()).collect()
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<BigInt>> for LatticeVector {
    fn from(v: Vec<BigInt>) -> Self {
        LatticeVector::new(v)
    }
}
