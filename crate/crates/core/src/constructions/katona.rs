//! Shadow lower bound for `t`-intersecting uniform families.

use num_integer::Integer;
use serde::Serialize;

use super::bounds::binomial;
use crate::error::{Error, Result};
use crate::family::{shadow, SetFamily};

/// Outcome of comparing `|σ_ℓ(F)|` against `C(2k-t, ℓ) / C(2k-t, k) · |F|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShadowBoundCheck {
    pub holds: bool,
    pub lhs: u128,
    /// Reduced numerator of the bound.
    pub rhs_num: u128,
    /// Reduced denominator of the bound, always positive.
    pub rhs_den: u128,
    /// `lhs` equals the bound exactly.
    pub equality: bool,
    /// Equality as predicted from the shape of the family: `ℓ = k`, or `F`
    /// empty, or `F` is every `k`-subset of a `(2k-t)`-set.
    pub equality_predicted: bool,
}

/// Checks the shadow bound for a `k`-uniform, `t`-intersecting family with
/// `0 <= k - t <= ell <= k`.
pub fn shadow_bound_check(family: &SetFamily, t: usize, ell: usize) -> Result<ShadowBoundCheck> {
    if t == 0 {
        return Err(Error::argument("t must be at least 1"));
    }
    let k = match family.uniform_size() {
        Some(k) => k,
        None if family.is_empty() => {
            return Err(Error::argument("the empty family has no uniformity"))
        }
        None => return Err(Error::argument("family is not uniform")),
    };
    if t > k {
        return Err(Error::argument(format!("need t <= k, got t = {t}, k = {k}")));
    }
    if ell < k - t || ell > k {
        return Err(Error::argument(format!(
            "need k - t <= ell <= k, got ell = {ell}, k = {k}, t = {t}"
        )));
    }
    let members = family.members();
    for (idx, a) in members.iter().enumerate() {
        if let Some(b) = members[idx + 1..].iter().find(|b| a.intersection(b).len() < t) {
            return Err(Error::argument(format!("{a} and {b} share fewer than {t} elements")));
        }
    }

    let lhs = shadow(family, ell)?.len() as u128;
    let m = 2 * k - t;
    let num = binomial(m, ell) * family.len() as u128;
    let den = binomial(m, k);
    let g = num.gcd(&den);
    let (rhs_num, rhs_den) = (num / g, den / g);
    let scaled = lhs * rhs_den;

    let support = members.iter().fold(0u64, |acc, a| acc | a.bits());
    let full_on_support = support.count_ones() as usize == m
        && family.len() as u128 == binomial(m, k);
    Ok(ShadowBoundCheck {
        holds: scaled >= rhs_num,
        lhs,
        rhs_num,
        rhs_den,
        equality: scaled == rhs_num,
        equality_predicted: ell == k || full_on_support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::star;

    #[test]
    fn complete_family_on_three_points() {
        let c = shadow_bound_check(&SetFamily::uniform(3, 2).unwrap(), 1, 1).unwrap();
        assert!(c.holds && c.equality && c.equality_predicted);
        assert_eq!((c.lhs, c.rhs_num, c.rhs_den), (3, 3, 1));
    }

    #[test]
    fn star_shadow_holds_strictly() {
        let c = shadow_bound_check(&star(5, 3, 1).unwrap(), 1, 2).unwrap();
        assert!(c.holds);
        assert!(!c.equality && !c.equality_predicted);
        // 6 star members, bound C(5,2)/C(5,3) * 6 = 6; shadow has 4 + 6 = 10 pairs
        assert_eq!(c.lhs, 10);
        assert_eq!((c.rhs_num, c.rhs_den), (6, 1));
    }

    #[test]
    fn precondition_errors() {
        let f = SetFamily::uniform(4, 2).unwrap();
        assert!(shadow_bound_check(&f, 0, 1).is_err());
        // C([4],2) is not 1-intersecting
        assert!(shadow_bound_check(&f, 1, 1).is_err());
        assert!(shadow_bound_check(&star(5, 3, 1).unwrap(), 1, 1).is_err());
        assert!(shadow_bound_check(&SetFamily::empty(4).unwrap(), 1, 1).is_err());
    }
}
