//! Closed-form size bounds, computed exactly in `u128`.
//!
//! Every binomial here has `n <= 64`, so `C(n, k) < 2^63` and the partial
//! products `C(n, i) * (n - i)` stay below `2^70`.

use serde::Serialize;

use crate::error::{Error, Result};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c
}

/// `C(n, k)` extended by zero to negative `k`.
fn binomial_signed(n: usize, k: isize) -> u128 {
    if k < 0 {
        0
    } else {
        binomial(n, k as usize)
    }
}

/// Which bound governs `(2, s)`-conditionally intersecting families whose
/// members have at most `u` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CapRegime {
    /// `u >= s - 1`: no small-set penalty, bound attained by the top slices.
    Wide,
    /// `s/2 < u < s - 1`: same formula, extremal only for large `n`.
    Intermediate,
    /// `u <= floor(s/2)`: the family is intersecting, a union of stars.
    Narrow,
}

impl CapRegime {
    pub fn of(s: usize, u: usize) -> CapRegime {
        if u + 1 >= s {
            CapRegime::Wide
        } else if u <= s / 2 {
            CapRegime::Narrow
        } else {
            CapRegime::Intermediate
        }
    }
}

/// Half-size threshold `k` paired with `s`: `s/2` for even `s`, `(s+1)/2`
/// for odd.
pub fn half_threshold(s: usize) -> usize {
    s.div_ceil(2)
}

fn check_ns(n: usize, s: usize) -> Result<()> {
    if s == 0 {
        return Err(Error::argument("s must be at least 1"));
    }
    if s > n {
        return Err(Error::argument(format!("need s <= n, got s = {s}, n = {n}")));
    }
    Ok(())
}

fn top_slices(n: usize, s: usize, u: usize) -> u128 {
    let k = half_threshold(s);
    if s % 2 == 0 {
        binomial_signed(n - 1, k as isize - 1) + (k + 1..=u).map(|i| binomial(n, i)).sum::<u128>()
    } else {
        (k..=u).map(|i| binomial(n, i)).sum()
    }
}

/// Maximum size of a `(2, s)`-conditionally intersecting subfamily of
/// `2^[n]`: `C(n-1, k-1) + Σ_{i>k} C(n, i)` for `s = 2k`, and
/// `Σ_{i>=k} C(n, i)` for `s = 2k - 1`.
pub fn power_set_bound(n: usize, s: usize) -> Result<u128> {
    check_ns(n, s)?;
    Ok(top_slices(n, s, n))
}

/// The bound for members of size at most `u`, in the requested regime. The
/// regime must be the one [`CapRegime::of`] assigns to `(s, u)`, except that
/// at `s = 2, u = 1` both wide and narrow apply (and agree).
pub fn capped_bound(n: usize, s: usize, u: usize, regime: CapRegime) -> Result<u128> {
    check_ns(n, s)?;
    if u == 0 || u > n {
        return Err(Error::argument(format!("need 1 <= u <= n, got u = {u}")));
    }
    let fits = match regime {
        CapRegime::Wide => u + 1 >= s,
        CapRegime::Narrow => u <= s / 2,
        CapRegime::Intermediate => 2 * u > s && u + 1 < s,
    };
    if !fits {
        return Err(Error::argument(format!(
            "(s, u) = ({s}, {u}) is outside the {} regime: {}",
            regime_name(regime),
            regime_hypothesis(regime)
        )));
    }
    Ok(match regime {
        CapRegime::Wide | CapRegime::Intermediate => top_slices(n, s, u),
        CapRegime::Narrow => (1..=u).map(|r| binomial(n - 1, r - 1)).sum(),
    })
}

pub fn regime_name(regime: CapRegime) -> &'static str {
    match regime {
        CapRegime::Wide => "wide",
        CapRegime::Intermediate => "intermediate",
        CapRegime::Narrow => "narrow",
    }
}

pub fn regime_hypothesis(regime: CapRegime) -> &'static str {
    match regime {
        CapRegime::Wide => "u >= s - 1",
        CapRegime::Intermediate => "s/2 < u < s - 1",
        CapRegime::Narrow => "u <= floor(s/2)",
    }
}
