//! Subsets of a ground set `[n] = {1, ..., n}` packed into one machine word.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

/// A subset of `[n]`. Element `e` lives in bit `e - 1`.
///
/// Sets order by cardinality first and mask value second; this is the
/// canonical member order of a [`SetFamily`](crate::SetFamily).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: u64,
    n: u8,
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn check_ground(n: usize) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::argument(format!(
            "ground set size must be in 1..={MAX_GROUND}, got {n}"
        )));
    }
    Ok(())
}

impl ElementSet {
    /// Builds a set from its elements. Repeated elements are merged.
    pub fn new(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_ground(n)?;
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > n {
                return Err(Error::argument(format!("element {e} is outside 1..={n}")));
            }
            bits |= 1 << (e - 1);
        }
        Ok(ElementSet { bits, n: n as u8 })
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_ground(n)?;
        if bits & !full_mask(n) != 0 {
            return Err(Error::argument(format!(
                "mask {bits:#x} has elements outside 1..={n}"
            )));
        }
        Ok(ElementSet { bits, n: n as u8 })
    }

    /// Caller guarantees `n` and `bits` are consistent.
    pub(crate) fn from_bits_unchecked(n: usize, bits: u64) -> Self {
        debug_assert!(n >= 1 && n <= MAX_GROUND && bits & !full_mask(n) == 0);
        ElementSet { bits, n: n as u8 }
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_bits(n, 0)
    }

    pub fn full(n: usize) -> Result<Self> {
        Self::from_bits(n, full_mask(n))
    }

    /// The interval `{1, ..., m}` inside `[n]`.
    pub fn prefix(n: usize, m: usize) -> Result<Self> {
        if m > n {
            return Err(Error::argument(format!("prefix [{m}] does not fit in [{n}]")));
        }
        Self::from_bits(n, full_mask(m))
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn ground(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        e >= 1 && e <= self.ground() && self.bits & (1 << (e - 1)) != 0
    }

    /// Elements in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let e = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            Some(e)
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        debug_assert_eq!(self.n, other.n);
        ElementSet { bits: self.bits | other.bits, n: self.n }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        debug_assert_eq!(self.n, other.n);
        ElementSet { bits: self.bits & other.bits, n: self.n }
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        debug_assert_eq!(self.n, other.n);
        ElementSet { bits: self.bits & !other.bits, n: self.n }
    }

    pub fn complement(&self) -> ElementSet {
        ElementSet { bits: !self.bits & full_mask(self.ground()), n: self.n }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.bits & other.bits == 0
    }

    /// `(self - {remove}) ∪ {add}`, both elements assumed in range.
    pub fn swap_element(&self, remove: usize, add: usize) -> ElementSet {
        let bits = (self.bits & !(1 << (remove - 1))) | (1 << (add - 1));
        ElementSet { bits, n: self.n }
    }

    pub fn with(&self, e: usize) -> ElementSet {
        ElementSet { bits: self.bits | (1 << (e - 1)), n: self.n }
    }

    pub fn without(&self, e: usize) -> ElementSet {
        ElementSet { bits: self.bits & !(1 << (e - 1)), n: self.n }
    }

    /// Every `k`-subset of `[n]`, in increasing mask order.
    pub fn all_of_size(n: usize, k: usize) -> Result<Vec<ElementSet>> {
        check_ground(n)?;
        if k > n {
            return Ok(Vec::new());
        }
        Ok(k_subset_masks(n, k)
            .map(|bits| ElementSet::from_bits_unchecked(n, bits))
            .collect())
    }

    /// Every `k`-subset of this set, in increasing mask order.
    pub fn subsets_of_size(&self, k: usize) -> Vec<ElementSet> {
        let elems = self.to_vec();
        if k > elems.len() {
            return Vec::new();
        }
        let mut out: Vec<ElementSet> = k_subset_masks(elems.len(), k)
            .map(|local| {
                let mut bits = 0u64;
                let mut rest = local;
                while rest != 0 {
                    let p = rest.trailing_zeros() as usize;
                    bits |= 1 << (elems[p] - 1);
                    rest &= rest - 1;
                }
                ElementSet { bits, n: self.n }
            })
            .collect();
        out.sort_unstable_by_key(|s| s.bits);
        out
    }
}

/// Masks with exactly `k` of the low `n` bits set, ascending (Gosper's hack).
pub(crate) fn k_subset_masks(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = full_mask(n);
    let mut next = if k > n {
        None
    } else if k == 0 {
        Some(0u64)
    } else {
        Some(full_mask(k))
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let candidate = (((r ^ cur) >> 2) / c) | r;
                (candidate & !limit == 0).then_some(candidate)
            }
        };
        Some(cur)
    })
}

/// Size of the union of a nonempty list of sets over one ground set.
pub fn union_size(sets: &[ElementSet]) -> Result<usize> {
    check_list(sets)?;
    Ok(sets.iter().fold(0u64, |acc, s| acc | s.bits).count_ones() as usize)
}

/// Size of the intersection of a nonempty list of sets over one ground set.
pub fn intersection_size(sets: &[ElementSet]) -> Result<usize> {
    check_list(sets)?;
    Ok(sets.iter().fold(u64::MAX, |acc, s| acc & s.bits).count_ones() as usize)
}

fn check_list(sets: &[ElementSet]) -> Result<()> {
    let first = sets
        .first()
        .ok_or_else(|| Error::argument("set list must be nonempty"))?;
    if sets.iter().any(|s| s.n != first.n) {
        return Err(Error::argument("sets have different ground set sizes"));
    }
    Ok(())
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.len().cmp(&other.len()))
            .then(self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, e) in self.elements().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}
