//! Isomorphism classes of families under relabeling of the ground set.
//!
//! The canonical form is the lexicographically least relabeling over all
//! `n!` permutations, comparing member lists in canonical member order. This
//! is exhaustive, so it is exact but limited to small ground sets.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::ElementSet;

/// Default largest ground set accepted by [`canonical_form`].
pub const DEFAULT_CANON_LIMIT: usize = 8;

/// Relabels every member through `perm`, where element `e` maps to
/// `perm[e - 1] + 1`.
pub fn relabel(family: &SetFamily, perm: &[usize]) -> Result<SetFamily> {
    let n = family.ground();
    if perm.len() != n || !perm.iter().copied().sorted().eq(0..n) {
        return Err(Error::argument(format!("not a permutation of [{n}]")));
    }
    Ok(SetFamily::from_masks(
        n,
        family.iter().map(|m| permute_mask(m.bits(), perm)),
    ))
}

#[inline]
fn permute_mask(mut bits: u64, perm: &[usize]) -> u64 {
    let mut out = 0u64;
    while bits != 0 {
        let p = bits.trailing_zeros() as usize;
        out |= 1 << perm[p];
        bits &= bits - 1;
    }
    out
}

/// [`canonical_form_with_limit`] at [`DEFAULT_CANON_LIMIT`].
pub fn canonical_form(family: &SetFamily) -> Result<SetFamily> {
    canonical_form_with_limit(family, DEFAULT_CANON_LIMIT)
}

/// Least relabeling of `family`. Two families are isomorphic iff their
/// canonical forms are equal.
pub fn canonical_form_with_limit(family: &SetFamily, limit: usize) -> Result<SetFamily> {
    let n = family.ground();
    if n > limit {
        return Err(Error::capability(format!(
            "canonical form needs n <= {limit}, got n = {n}"
        )));
    }
    if family.is_empty() {
        return Ok(family.clone());
    }

    // Keys are (size, mask); sizes are relabeling-invariant so only masks
    // actually decide the comparison.
    let mut best: Vec<(u32, u64)> = Vec::new();
    let mut scratch: Vec<(u32, u64)> = Vec::with_capacity(family.len());
    for perm in (0..n).permutations(n) {
        scratch.clear();
        scratch.extend(family.iter().map(|m| {
            let b = permute_mask(m.bits(), &perm);
            (b.count_ones(), b)
        }));
        scratch.sort_unstable();
        if best.is_empty() || scratch < best {
            std::mem::swap(&mut best, &mut scratch);
        }
    }
    SetFamily::new(
        n,
        best.into_iter()
            .map(|(_, b)| ElementSet::from_bits_unchecked(n, b)),
    )
}

pub fn are_isomorphic(a: &SetFamily, b: &SetFamily, limit: usize) -> Result<bool> {
    if a.ground() != b.ground() || a.len() != b.len() {
        return Ok(false);
    }
    Ok(canonical_form_with_limit(a, limit)? == canonical_form_with_limit(b, limit)?)
}

/// Relabeling-invariant fingerprint for ground sets above the canonicalization
/// limit: sorted member sizes and sorted element degrees. Isomorphic families
/// always share it, but distinct classes can collide.
pub fn invariant_signature(family: &SetFamily) -> (Vec<usize>, Vec<usize>) {
    let sizes = family.iter().map(|m| m.len()).sorted().collect();
    let mut degrees = vec![0usize; family.ground()];
    for m in family.iter() {
        for e in m.elements() {
            degrees[e - 1] += 1;
        }
    }
    degrees.sort_unstable();
    (sizes, degrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::star;

    fn fam(n: usize, lists: &[&[usize]]) -> SetFamily {
        SetFamily::from_lists(n, lists).unwrap()
    }

    #[test]
    fn single_pair_relabels_to_prefix() {
        assert_eq!(canonical_form(&fam(3, &[&[2, 3]])).unwrap(), fam(3, &[&[1, 2]]));
    }

    #[test]
    fn stars_at_different_centres_agree() {
        let a = canonical_form(&star(5, 2, 5).unwrap()).unwrap();
        let b = canonical_form(&star(5, 2, 1).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn constant_on_all_relabelings_of_the_example_family() {
        let f = fam(5, &[&[1, 3], &[2, 4], &[3, 5]]);
        let canon = canonical_form(&f).unwrap();
        let mut seen = 0;
        for perm in (0..5).permutations(5) {
            let g = relabel(&f, &perm).unwrap();
            assert_eq!(canonical_form(&g).unwrap(), canon);
            seen += 1;
        }
        assert_eq!(seen, 120);
        // two edges sharing a vertex plus a disjoint edge: same shape
        assert_eq!(canonical_form(&fam(5, &[&[1, 2], &[2, 3], &[4, 5]])).unwrap(), canon);
        // a path with three edges is not
        assert_ne!(canonical_form(&fam(5, &[&[1, 2], &[2, 3], &[3, 4]])).unwrap(), canon);
    }

    #[test]
    fn limit_is_enforced() {
        let f = fam(9, &[&[1, 9]]);
        assert!(matches!(canonical_form(&f), Err(Error::Capability(_))));
        assert!(canonical_form_with_limit(&f, 9).is_ok());
    }

    #[test]
    fn relabel_rejects_non_permutations() {
        let f = fam(3, &[&[1]]);
        assert!(relabel(&f, &[0, 0, 1]).is_err());
        assert!(relabel(&f, &[0, 1]).is_err());
    }

    #[test]
    fn signature_is_invariant() {
        let f = fam(4, &[&[1, 2], &[1, 3], &[4]]);
        let g = relabel(&f, &[3, 2, 1, 0]).unwrap();
        assert_eq!(invariant_signature(&f), invariant_signature(&g));
    }
}
