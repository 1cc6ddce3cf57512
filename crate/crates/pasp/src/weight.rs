//! Exact certainty degrees in `[0, 1]` and finite certainty scales.
//!
//! Degrees are rationals, never floats: the semantics hinges on exact
//! identities such as `g(a) = 1 - g(a)` and on exact equality between
//! valuations, which floating point would silently break.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::Error;

/// An exact certainty degree in `[0, 1]`.
///
/// Ordering, `min`/`max` and the complement `1 - w` are all exact. The
/// surface syntax only produces decimal weights (at most six fractional
/// digits), but any rational in range is a valid degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Ratio<i64>);

impl Weight {
    pub const fn zero() -> Self {
        Weight(Ratio::new_raw(0, 1))
    }

    pub const fn one() -> Self {
        Weight(Ratio::new_raw(1, 1))
    }

    /// Builds `numer/denom`, rejecting values outside `[0, 1]`.
    pub fn new(numer: i64, denom: i64) -> Result<Self, Error> {
        if denom == 0 {
            return Err(Error::WeightOutOfRange {
                literal: format!("{numer}/0"),
            });
        }
        let r = Ratio::new(numer, denom);
        if r < Ratio::zero() || r > Ratio::one() {
            return Err(Error::WeightOutOfRange {
                literal: format!("{numer}/{denom}"),
            });
        }
        Ok(Weight(r))
    }

    /// The dual degree `1 - w`. An involution: `w.complement().complement() == w`.
    pub fn complement(self) -> Self {
        Weight(Ratio::one() - self.0)
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(self) -> bool {
        self.0.is_one()
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    /// Parses a decimal weight literal with at most six fractional digits,
    /// e.g. `1`, `0.2`, `0.375`.
    pub fn parse_decimal(literal: &str) -> Result<Self, Error> {
        let (int_part, frac_part, dotted) = match literal.split_once('.') {
            Some((i, f)) => (i, f, true),
            None => (literal, "", false),
        };
        let valid = !int_part.is_empty()
            && int_part.bytes().all(|b| b.is_ascii_digit())
            && frac_part.bytes().all(|b| b.is_ascii_digit())
            && (!dotted || !frac_part.is_empty());
        if !valid {
            return Err(Error::MalformedWeight {
                literal: literal.to_string(),
            });
        }
        if frac_part.len() > 6 {
            return Err(Error::TooManyFractionDigits {
                literal: literal.to_string(),
            });
        }
        let int: i64 = int_part.parse().map_err(|_| Error::MalformedWeight {
            literal: literal.to_string(),
        })?;
        let denom = 10_i64.pow(frac_part.len() as u32);
        let frac: i64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| Error::MalformedWeight {
                literal: literal.to_string(),
            })?
        };
        let r = Ratio::new(int * denom + frac, denom);
        if r > Ratio::one() {
            return Err(Error::WeightOutOfRange {
                literal: literal.to_string(),
            });
        }
        Ok(Weight(r))
    }
}

impl fmt::Display for Weight {
    /// Renders the exact value: as a finite decimal when the denominator is
    /// of the form `2^a * 5^b`, otherwise as a fraction `n/d`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numer = *self.0.numer();
        let mut denom = *self.0.denom();
        let mut twos = 0u32;
        let mut fives = 0u32;
        while denom % 2 == 0 {
            denom /= 2;
            twos += 1;
        }
        while denom % 5 == 0 {
            denom /= 5;
            fives += 1;
        }
        if denom != 1 {
            return write!(f, "{}/{}", numer, self.0.denom());
        }
        let digits = twos.max(fives);
        if digits == 0 {
            return write!(f, "{numer}");
        }
        // Scale to digits decimal places: numer/denom * 10^digits is integral.
        let scaled = numer as i128 * 10_i128.pow(digits) / *self.0.denom() as i128;
        let int = scaled / 10_i128.pow(digits);
        let mut frac = (scaled % 10_i128.pow(digits)).to_string();
        while frac.len() < digits as usize {
            frac.insert(0, '0');
        }
        while frac.ends_with('0') {
            frac.pop();
        }
        write!(f, "{int}.{frac}")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts both decimal literals (`0.2`) and fractions (`1/3`).
    fn from_str(s: &str) -> Result<Self, Error> {
        if let Some((n, d)) = s.split_once('/') {
            let numer: i64 = n.trim().parse().map_err(|_| Error::MalformedWeight {
                literal: s.to_string(),
            })?;
            let denom: i64 = d.trim().parse().map_err(|_| Error::MalformedWeight {
                literal: s.to_string(),
            })?;
            if denom == 0 {
                return Err(Error::MalformedWeight {
                    literal: s.to_string(),
                });
            }
            Weight::new(numer, denom)
        } else {
            Weight::parse_decimal(s)
        }
    }
}

/// A finite set of certainty degrees containing 0 and 1 and closed under
/// `x -> 1 - x`. Serves both as the search grid for the solvers and as the
/// level scale for the classical translation.
///
/// The invariants hold by construction: every constructor closes its input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertaintyScale {
    degrees: Vec<Weight>, // sorted ascending, deduplicated
}

impl CertaintyScale {
    /// The smallest scale containing `weights`, 0 and 1, closed under
    /// complement. Since the complement is an involution a single closure
    /// pass suffices.
    pub fn closure<I: IntoIterator<Item = Weight>>(weights: I) -> Self {
        let mut degrees: Vec<Weight> = vec![Weight::zero(), Weight::one()];
        for w in weights {
            degrees.push(w);
            degrees.push(w.complement());
        }
        degrees.sort();
        degrees.dedup();
        CertaintyScale { degrees }
    }

    pub fn contains(&self, w: Weight) -> bool {
        self.degrees.binary_search(&w).is_ok()
    }

    /// The least scale degree strictly above `w`, if any.
    pub fn next_above(&self, w: Weight) -> Option<Weight> {
        self.degrees.iter().copied().find(|d| *d > w)
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always contains 0 and 1
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Weight> + '_ {
        self.degrees.iter().copied()
    }

    pub fn degrees(&self) -> &[Weight] {
        &self.degrees
    }

    /// Position of `w` in the ascending scale; used for scaled-atom naming.
    pub fn index_of(&self, w: Weight) -> Option<usize> {
        self.degrees.binary_search(&w).ok()
    }
}
