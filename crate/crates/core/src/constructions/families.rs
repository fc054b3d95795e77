//! Named families over `C([n], k)`.

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::{check_ground, k_subset_masks, ElementSet};

fn check_uniform(n: usize, k: usize) -> Result<()> {
    check_ground(n)?;
    if k == 0 || k > n {
        return Err(Error::argument(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    Ok(())
}

fn check_element(n: usize, name: &str, e: usize) -> Result<()> {
    if e == 0 || e > n {
        return Err(Error::argument(format!("{name} = {e} is outside 1..={n}")));
    }
    Ok(())
}

fn filter_uniform(n: usize, k: usize, keep: impl Fn(u64) -> bool) -> SetFamily {
    SetFamily::from_masks(n, k_subset_masks(n, k).filter(|&m| keep(m)))
}

/// All `k`-subsets of `[n]` containing `center`.
pub fn star(n: usize, k: usize, center: usize) -> Result<SetFamily> {
    check_uniform(n, k)?;
    check_element(n, "center", center)?;
    let bit = 1u64 << (center - 1);
    Ok(filter_uniform(n, k, |m| m & bit != 0))
}

/// `[n]` cut into `k` contiguous intervals whose sizes differ by at most one,
/// larger intervals first.
pub fn near_equal_parts(n: usize, k: usize) -> Result<Vec<ElementSet>> {
    check_uniform(n, k)?;
    let (base, extra) = (n / k, n % k);
    let mut parts = Vec::with_capacity(k);
    let mut start = 0;
    for idx in 0..k {
        let len = base + usize::from(idx < extra);
        let bits = ((1u64 << len) - 1) << start;
        parts.push(ElementSet::from_bits_unchecked(n, bits));
        start += len;
    }
    Ok(parts)
}

/// `k`-sets meeting every part of [`near_equal_parts`] in exactly one
/// element. Size is the product of the part sizes.
pub fn transversal_family(n: usize, k: usize) -> Result<SetFamily> {
    let parts = near_equal_parts(n, k)?;
    Ok(filter_uniform(n, k, |m| {
        parts.iter().all(|p| (m & p.bits()).count_ones() == 1)
    }))
}

/// `k`-sets meeting `[t + 2j]` in at least `t + j` elements.
pub fn ahlswede_khachatrian_family(n: usize, k: usize, t: usize, j: usize) -> Result<SetFamily> {
    check_uniform(n, k)?;
    if t == 0 {
        return Err(Error::argument("t must be at least 1"));
    }
    if t + 2 * j > n {
        return Err(Error::argument(format!("need t + 2j <= n, got {} > {n}", t + 2 * j)));
    }
    if t + j > k {
        return Err(Error::argument(format!("need t + j <= k, got {} > {k}", t + j)));
    }
    let core = (1u64 << (t + 2 * j)) - 1;
    Ok(filter_uniform(n, k, |m| (m & core).count_ones() as usize >= t + j))
}

/// `k`-sets containing `[t]` and meeting `[k+1] - [t]`, together with the
/// `k+1` sets `[k+1] - {i}`.
pub fn small_kernel_family(n: usize, k: usize, t: usize) -> Result<SetFamily> {
    check_uniform(n, k)?;
    if t == 0 || t > k {
        return Err(Error::argument(format!("need 1 <= t <= k, got t = {t}")));
    }
    if k + 1 > n {
        return Err(Error::argument(format!("need k + 1 <= n, got k = {k}, n = {n}")));
    }
    let kernel = (1u64 << t) - 1;
    let block = (1u64 << (k + 1)) - 1;
    let rest = block & !kernel;
    let mut masks: Vec<u64> = k_subset_masks(n, k)
        .filter(|&m| m & kernel == kernel && m & rest != 0)
        .collect();
    masks.extend((0..=k).map(|i| block & !(1u64 << i)));
    Ok(SetFamily::from_masks(n, masks))
}

/// The `n - 2` pairs `{z, c(z)}` where every `z` outside `{x, y}` is joined to
/// its assigned centre `c(z)` in `{x, y}`. Both centres must be used, so the
/// family always has a disjoint pair.
pub fn twin_2_star(n: usize, x: usize, y: usize, assignment: &[(usize, usize)]) -> Result<SetFamily> {
    check_ground(n)?;
    check_element(n, "x", x)?;
    check_element(n, "y", y)?;
    if x == y {
        return Err(Error::argument("centres x and y must differ"));
    }
    let mut seen = vec![false; n + 1];
    let mut members = Vec::with_capacity(n.saturating_sub(2));
    for &(z, c) in assignment {
        check_element(n, "assigned element", z)?;
        if z == x || z == y {
            return Err(Error::argument(format!("{z} is a centre and cannot be assigned")));
        }
        if c != x && c != y {
            return Err(Error::argument(format!("{z} is assigned to {c}, which is not a centre")));
        }
        if std::mem::replace(&mut seen[z], true) {
            return Err(Error::argument(format!("{z} is assigned twice")));
        }
        members.push(ElementSet::new(n, [z, c])?);
    }
    if let Some(z) = (1..=n).find(|&z| z != x && z != y && !seen[z]) {
        return Err(Error::argument(format!("{z} has no assigned centre")));
    }
    for c in [x, y] {
        if !assignment.iter().any(|&(_, a)| a == c) {
            return Err(Error::argument(format!(
                "centre {c} has no pairs; a one-sided assignment is a star, not a twin 2-star"
            )));
        }
    }
    SetFamily::new(n, members)
}

/// Whether `family` is a twin 2-star for some pair of centres.
pub fn is_twin_2_star(family: &SetFamily) -> bool {
    let n = family.ground();
    if n < 4 || family.len() != n - 2 || family.uniform_size() != Some(2) {
        return false;
    }
    // Centres can be ambiguous (at n = 4 every matching works), so try all.
    (1..=n).any(|x| {
        (x + 1..=n).any(|y| {
            let mut covered = 0u64;
            let mut used = [false; 2];
            for m in family.iter() {
                let (hx, hy) = (m.contains(x), m.contains(y));
                if hx == hy {
                    return false;
                }
                used[usize::from(hy)] = true;
                covered |= m.without(x).without(y).bits();
            }
            used[0] && used[1] && covered.count_ones() as usize == n - 2
        })
    })
}

/// `k`-sets through `x` that avoid `b`, plus `b` itself.
pub fn nonintersecting_star_family(n: usize, k: usize, x: usize, b: ElementSet) -> Result<SetFamily> {
    check_uniform(n, k)?;
    check_element(n, "x", x)?;
    if b.ground() != n || b.len() != k {
        return Err(Error::argument(format!("B = {b} must be a {k}-subset of [{n}]")));
    }
    if b.contains(x) {
        return Err(Error::argument(format!("x = {x} must not lie in B = {b}")));
    }
    let xb = 1u64 << (x - 1);
    let mut masks: Vec<u64> =
        k_subset_masks(n, k).filter(|&m| m & xb != 0 && m & b.bits() == 0).collect();
    masks.push(b.bits());
    Ok(SetFamily::from_masks(n, masks))
}

/// `{b1, b2}` plus every `k`-set containing `x` and `y` that meets the
/// complement of `b1 ∪ b2`.
pub fn two_block_family(
    n: usize,
    k: usize,
    b1: ElementSet,
    b2: ElementSet,
    x: usize,
    y: usize,
) -> Result<SetFamily> {
    check_uniform(n, k)?;
    for (name, b) in [("B1", b1), ("B2", b2)] {
        if b.ground() != n || b.len() != k {
            return Err(Error::argument(format!("{name} = {b} must be a {k}-subset of [{n}]")));
        }
    }
    if !b1.is_disjoint(&b2) {
        return Err(Error::argument(format!("B1 = {b1} and B2 = {b2} must be disjoint")));
    }
    if !b1.contains(x) {
        return Err(Error::argument(format!("x = {x} must lie in B1 = {b1}")));
    }
    if !b2.contains(y) {
        return Err(Error::argument(format!("y = {y} must lie in B2 = {b2}")));
    }
    let pair = (1u64 << (x - 1)) | (1u64 << (y - 1));
    let outside = b1.union(&b2).complement().bits();
    let mut masks: Vec<u64> = k_subset_masks(n, k)
        .filter(|&m| m & pair == pair && m & outside != 0)
        .collect();
    masks.extend([b1.bits(), b2.bits()]);
    Ok(SetFamily::from_masks(n, masks))
}
