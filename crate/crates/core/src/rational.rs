//! Exact rational values used for every utility and welfare quantity.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// Exact rational number. `i128` components leave plenty of headroom for
/// the common denominators that show up at desk scale.
pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{input}` as a rational: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

pub fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

pub fn frac(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: s.to_string(),
        reason,
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty string"));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| err("bad numerator"))?;
        let q: i128 = q.trim().parse().map_err(|_| err("bad denominator"))?;
        if q == 0 {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, fraction)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if fraction.is_empty() && whole_digits.is_empty() {
            return Err(err("no digits"));
        }
        if !whole_digits.chars().all(|c| c.is_ascii_digit())
            || !fraction.chars().all(|c| c.is_ascii_digit())
        {
            return Err(err("bad decimal digits"));
        }
        if fraction.len() > 30 {
            return Err(err("too many decimal places"));
        }
        let denom = 10i128.pow(fraction.len() as u32);
        let w: i128 = if whole_digits.is_empty() {
            0
        } else {
            whole_digits
                .parse()
                .map_err(|_| err("integer part overflows"))?
        };
        let f: i128 = if fraction.is_empty() {
            0
        } else {
            fraction.parse().map_err(|_| err("fraction overflows"))?
        };
        let magnitude = w
            .checked_mul(denom)
            .and_then(|x| x.checked_add(f))
            .ok_or_else(|| err("decimal overflows"))?;
        let numer = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(numer, denom));
    }
    t.parse::<i128>()
        .map(Rational::from_integer)
        .map_err(|_| err("not an integer, fraction or decimal"))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `numerator / denominator` with 0/0 read as 1.
///
/// Returns `None` when only the denominator is zero.
pub fn welfare_ratio(numerator: Rational, denominator: Rational) -> Option<Rational> {
    if denominator.is_zero() {
        if numerator.is_zero() {
            Some(Rational::one())
        } else {
            None
        }
    } else {
        Some(numerator / denominator)
    }
}

/// Least common multiple of the denominators, or `None` on overflow.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<i128> {
    let mut l: i128 = 1;
    for v in values {
        let d = *v.denom();
        let g = l.gcd(&d);
        l = (l / g).checked_mul(d)?;
    }
    Some(l)
}

/// Approximate display helper for human-readable reports.
pub struct Approx<'a>(pub &'a Rational);

impl fmt::Display for Approx<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = *self.0.numer() as f64 / *self.0.denom() as f64;
        write!(f, "{} (~{:.4})", format_rational(self.0), v)
    }
}
