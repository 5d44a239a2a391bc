//! Local symbols over ℚ: Hilbert symbols and square tests at each place.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::QuadFormError;
use crate::scalars::{pow_mod, Scalar};

/// A place of ℚ. Primes sort before the real place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Place {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "oo" | "∞" => Ok(Place::Infinity),
            t => {
                let p: u64 = t.parse().map_err(|_| format!("bad place {s:?}"))?;
                let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
                if prime {
                    Ok(Place::Prime(p))
                } else {
                    Err(format!("{p} is not prime"))
                }
            }
        }
    }
}

/// `n · d` for `n/d`: an integer in the same square class.
pub(crate) fn integral_rep(a: &Scalar) -> Result<BigInt, QuadFormError> {
    let q = a.as_rational().ok_or(QuadFormError::NotRational)?;
    if q.is_zero() {
        return Err(QuadFormError::ZeroInput);
    }
    Ok(q.numer() * q.denom())
}

/// Splits `n = p^v · u` with `p ∤ u`.
fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut u = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = u.div_rem(&p);
        if !r.is_zero() {
            return (v, u);
        }
        u = q;
        v += 1;
    }
}

fn residue(u: &BigInt, m: u64) -> u64 {
    u.mod_floor(&BigInt::from(m)).to_u64().expect("small residue")
}

/// Legendre symbol `(u | p)` for odd `p ∤ u`.
fn legendre(u: &BigInt, p: u64) -> i8 {
    if pow_mod(residue(u, p), (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

fn sign_from_parity(e: u64) -> i8 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Hilbert symbol `(a, b)_v` of nonzero integers.
pub(crate) fn hilbert_int(a: &BigInt, b: &BigInt, place: Place) -> i8 {
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(a, 2);
            let (beta, v) = split_valuation(b, 2);
            let (u, v) = (residue(&u, 8), residue(&v, 8));
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u) * eps(v) + alpha as u64 * omega(v) + beta as u64 * omega(u);
            sign_from_parity(e)
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let eps = ((p - 1) / 2) % 2;
            let mut s = sign_from_parity(alpha as u64 * beta as u64 * eps);
            if beta % 2 == 1 {
                s *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&v, p);
            }
            s
        }
    }
}

/// The Hilbert symbol `(a, b)` at a place of ℚ.
pub fn hilbert_symbol(a: &Scalar, b: &Scalar, place: Place) -> Result<i8, QuadFormError> {
    let a = integral_rep(a)?;
    let b = integral_rep(b)?;
    Ok(hilbert_int(&a, &b, place))
}

/// Whether the nonzero integer `d` is a square in the completion at `place`.
pub(crate) fn is_local_square(d: &BigInt, place: Place) -> bool {
    match place {
        Place::Infinity => d.is_positive(),
        Place::Prime(2) => {
            let (v, u) = split_valuation(d, 2);
            v % 2 == 0 && residue(&u, 8) == 1
        }
        Place::Prime(p) => {
            let (v, u) = split_valuation(d, p);
            v % 2 == 0 && legendre(&u, p) == 1
        }
    }
}

/// `∞`, `2` and every odd prime dividing one of the integers.
pub(crate) fn relevant_places<'a>(
    ints: impl IntoIterator<Item = &'a BigInt>,
) -> Result<Vec<Place>, QuadFormError> {
    let mut primes = std::collections::BTreeSet::from([2u64]);
    for n in ints {
        if n.magnitude().is_one() {
            continue;
        }
        for (p, _) in crate::scalars::factorize(n.magnitude())? {
            primes.insert(p);
        }
    }
    let mut out: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
    out.push(Place::Infinity);
    Ok(out)
}
