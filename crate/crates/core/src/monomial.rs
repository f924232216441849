//! Monomials of `F_p[x_1..x_e]` and the local (negative degree reverse
//! lexicographic) term order.
//!
//! Exponents are packed one byte per variable into a `u64`; the top byte is
//! unused so that the order key can be formed with a single subtraction.
//! Degrees are bounded by the engine's degree cap, far below 128, which keeps
//! every byte-wise addition carry-free.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 7;
const LOW7: u64 = 0x00FF_FFFF_FFFF_FFFF;
const HIGH_BITS: u64 = 0x0080_8080_8080_8080;
const MAX_EXPONENT: u32 = 127;

/// A monomial `x^a`. `Ord` is the local order: `a > b` means `a` leads.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut packed = 0u64;
        let mut total = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            total += e;
            if e > MAX_EXPONENT || total > MAX_EXPONENT {
                return Err(Error::invalid(format!(
                    "exponent vector {exps:?} too large"
                )));
            }
            packed |= (e as u64) << (8 * i);
        }
        Ok(Monomial(packed))
    }

    /// The variable `x_i`.
    pub fn var(i: usize) -> Self {
        debug_assert!(i < MAX_VARS);
        Monomial(1u64 << (8 * i))
    }

    #[inline]
    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> (8 * i)) & 0xFF) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    pub fn degree(self) -> u32 {
        (self.0.wrapping_mul(0x0101_0101_0101_0101) >> 56) as u32
    }

    #[inline]
    fn key(self) -> u64 {
        ((255 - self.degree() as u64) << 56) | (LOW7 - self.0)
    }

    #[inline]
    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial(self.0 + other.0)
    }

    #[inline]
    pub fn divides(self, other: Monomial) -> bool {
        ((other.0 | HIGH_BITS) - self.0) & HIGH_BITS == HIGH_BITS
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(self, other: Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0 - self.0))
        } else {
            None
        }
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        let mut out = 0u64;
        for i in 0..MAX_VARS {
            out |= (self.exponent(i).max(other.exponent(i)) as u64) << (8 * i);
        }
        Monomial(out)
    }

    pub fn gcd(self, other: Monomial) -> Monomial {
        let mut out = 0u64;
        for i in 0..MAX_VARS {
            out |= (self.exponent(i).min(other.exponent(i)) as u64) << (8 * i);
        }
        Monomial(out)
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Support is contained in the given variable set (bitmask).
    pub fn supported_in(self, mask: u32) -> bool {
        (0..MAX_VARS).all(|i| self.exponent(i) == 0 || mask & (1 << i) != 0)
    }

    /// Every monomial of total degree `d` in `nvars` variables, leading first.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; nvars];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == exps.len() {
                exps[i] = left;
                out.push(Monomial::from_exponents(exps).expect("bounded exponents"));
                return;
            }
            for e in 0..=left {
                exps[i] = e;
                rec(i + 1, left - e, exps, out);
            }
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(0, d, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// All monomials of degree `< d`, leading first.
    pub fn all_below_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        (0..d)
            .flat_map(|k| Monomial::all_of_degree(nvars, k))
            .collect()
    }
}

impl Ord for Monomial {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<u32> = (0..MAX_VARS).map(|i| self.exponent(i)).collect();
        let last = exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "x{:?}", &exps[..last])
    }
}

/// Compare two exponent vectors under the local order, checking arity.
pub fn local_compare(a: &[u32], b: &[u32]) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::ArityMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(Monomial::from_exponents(a)?.cmp(&Monomial::from_exponents(b)?))
}
