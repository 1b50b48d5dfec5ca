use crate::error::{Error, Result};
use crate::rational::{factorial, frac, self_power, Rational};
use num_bigint::BigInt;
use serde::Serialize;

/// The oriented star `S_{k,l}`: a center with `k` out-leaves and `l`
/// in-leaves, leaves pairwise non-adjacent.
///
/// Construction normalizes to `k >= l`. Reversing every arc of a graph and
/// swapping `k` and `l` preserves all counts, so the optimization side only
/// ever sees the normalized pair; [`StarSpec::out_leaves`] and
/// [`StarSpec::in_leaves`] keep the orientation that was asked for, and the
/// counting code uses those.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StarSpec {
    k: usize,
    l: usize,
    reversed: bool,
}

impl StarSpec {
    pub fn new(out_leaves: usize, in_leaves: usize) -> Result<Self> {
        if out_leaves == 0 || in_leaves == 0 {
            return Err(Error::EllZero {
                k: out_leaves,
                l: in_leaves,
            });
        }
        let reversed = out_leaves < in_leaves;
        let (k, l) = if reversed {
            (in_leaves, out_leaves)
        } else {
            (out_leaves, in_leaves)
        };
        Ok(StarSpec { k, l, reversed })
    }

    /// Normalized larger side.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Normalized smaller side.
    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of leaves `m = k + l`.
    pub fn m(&self) -> usize {
        self.k + self.l
    }

    /// Vertices in one copy, `m + 1`.
    pub fn order(&self) -> usize {
        self.m() + 1
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn is_symmetric(&self) -> bool {
        self.k == self.l
    }

    /// Out-degree of the center of the star as requested.
    pub fn out_leaves(&self) -> usize {
        if self.reversed {
            self.l
        } else {
            self.k
        }
    }

    /// In-degree of the center of the star as requested.
    pub fn in_leaves(&self) -> usize {
        if self.reversed {
            self.k
        } else {
            self.l
        }
    }

    /// The star with all arcs reversed.
    pub fn reverse(&self) -> StarSpec {
        StarSpec {
            reversed: !self.reversed && self.k != self.l,
            ..*self
        }
    }

    /// `k^k l^l / m^m`.
    pub fn lambda0(&self) -> Rational {
        let num = self_power(self.k) * self_power(self.l);
        frac(BigInt::from(num), BigInt::from(self_power(self.m())))
    }

    /// `k^k l (l-1)^(l-1) / (m-1)^(m-1)`.
    pub fn lambda1(&self) -> Rational {
        let num = self_power(self.k) * self.l * self_power(self.l - 1);
        frac(BigInt::from(num), BigInt::from(self_power(self.m() - 1)))
    }

    /// `(k-1)^(k-1) l^l / (m-1)^(m-1)`, the weight of the second term of the
    /// objective and the slope of the linear piece of the majorant.
    pub fn tangent_slope(&self) -> Rational {
        let num = self_power(self.k - 1) * self_power(self.l);
        frac(BigInt::from(num), BigInt::from(self_power(self.m() - 1)))
    }

    /// `(m+1)! / (k! l!)`, the factor between `s` and the induced density in
    /// the limit.
    pub fn prefactor(&self) -> Rational {
        frac(
            BigInt::from(factorial(self.m() + 1)),
            BigInt::from(factorial(self.k) * factorial(self.l)),
        )
    }

    /// `k! l!`, the number of maps onto one fixed copy.
    pub fn automorphisms(&self) -> u128 {
        crate::rational::factorial_u128(self.k) * crate::rational::factorial_u128(self.l)
    }
}

impl std::fmt::Display for StarSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S_{{{},{}}}", self.out_leaves(), self.in_leaves())
    }
}
