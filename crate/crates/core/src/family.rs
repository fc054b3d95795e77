//! Families of subsets of `[n]` and the compression (shift) operator.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::set::{check_ground, ElementSet};

/// A finite family of distinct subsets of `[n]`.
///
/// Members are kept deduplicated and sorted in canonical order (cardinality,
/// then mask), so iteration and every derived output are deterministic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: u8,
    members: Vec<ElementSet>,
}

/// The subscript pair `(i, j)` of the shift that moves `j` to `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ShiftPair {
    pub i: usize,
    pub j: usize,
}

impl ShiftPair {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::argument("shift elements start at 1"));
        }
        if i == j {
            return Err(Error::argument(format!("shift pair ({i},{j}) needs i != j")));
        }
        Ok(ShiftPair { i, j })
    }

    pub fn reversed(&self) -> ShiftPair {
        ShiftPair { i: self.j, j: self.i }
    }

    pub fn check_ground(&self, n: usize) -> Result<()> {
        if self.i > n || self.j > n {
            return Err(Error::argument(format!(
                "shift pair ({},{}) is outside 1..={n}",
                self.i, self.j
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ShiftPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl SetFamily {
    /// Builds a family, dropping duplicate members.
    pub fn new(n: usize, members: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        check_ground(n)?;
        let mut members: Vec<ElementSet> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| m.ground() != n) {
            return Err(Error::argument(format!(
                "member {bad} lives in [{}], family ground set is [{n}]",
                bad.ground()
            )));
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { n: n as u8, members })
    }

    /// Builds a family from element lists, e.g. `&[&[1, 3], &[2, 4]]`.
    pub fn from_lists<L: AsRef<[usize]>>(n: usize, lists: &[L]) -> Result<Self> {
        let members = lists
            .iter()
            .map(|l| ElementSet::new(n, l.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, members)
    }

    pub(crate) fn from_masks(n: usize, masks: impl IntoIterator<Item = u64>) -> Self {
        let mut members: Vec<ElementSet> = masks
            .into_iter()
            .map(|m| ElementSet::from_bits_unchecked(n, m))
            .collect();
        members.sort_unstable();
        members.dedup();
        SetFamily { n: n as u8, members }
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    /// Every subset of `[n]`.
    pub fn power_set(n: usize) -> Result<Self> {
        check_ground(n)?;
        if n > 20 {
            return Err(Error::capability(format!("power set of [{n}] is too large")));
        }
        Ok(Self::from_masks(n, 0..(1u64 << n)))
    }

    /// All `k`-subsets of `[n]`.
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        Ok(SetFamily { n: n as u8, members: sorted(ElementSet::all_of_size(n, k)?) })
    }

    #[inline]
    pub fn ground(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in canonical order.
    #[inline]
    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.members.iter()
    }

    pub fn contains(&self, set: &ElementSet) -> bool {
        set.ground() == self.ground() && self.members.binary_search(set).is_ok()
    }

    pub(crate) fn contains_bits(&self, bits: u64) -> bool {
        self.contains(&ElementSet::from_bits_unchecked(self.ground(), bits))
    }

    pub fn index_of(&self, set: &ElementSet) -> Option<usize> {
        self.members.binary_search(set).ok()
    }

    /// The common size of all members, if there is one.
    pub fn uniform_size(&self) -> Option<usize> {
        let first = self.members.first()?.len();
        self.members.iter().all(|m| m.len() == first).then_some(first)
    }

    pub fn union(&self, other: &SetFamily) -> Result<SetFamily> {
        if self.n != other.n {
            return Err(Error::argument("families live on different ground sets"));
        }
        SetFamily::new(self.ground(), self.iter().chain(other.iter()).copied())
    }

    /// Whether some two members are disjoint.
    pub fn has_disjoint_pair(&self) -> bool {
        let m = &self.members;
        (0..m.len()).any(|a| (a + 1..m.len()).any(|b| m[a].is_disjoint(&m[b])))
    }

    /// Image of `set` under the `(i,j)`-shift relative to this family. No
    /// membership check.
    pub(crate) fn shift_image(&self, set: &ElementSet, p: ShiftPair) -> ElementSet {
        if set.contains(p.j) && !set.contains(p.i) {
            let moved = set.swap_element(p.j, p.i);
            if !self.contains(&moved) {
                return moved;
            }
        }
        *set
    }
}

fn sorted(mut v: Vec<ElementSet>) -> Vec<ElementSet> {
    v.sort_unstable();
    v
}

/// Applies the `(i,j)`-shift to one member of `family`: `j` is replaced by
/// `i` when `j ∈ A`, `i ∉ A` and the moved set is not already a member.
pub fn shift_set(set: &ElementSet, family: &SetFamily, p: ShiftPair) -> Result<ElementSet> {
    p.check_ground(family.ground())?;
    if !family.contains(set) {
        return Err(Error::argument(format!("{set} is not a member of the family")));
    }
    Ok(family.shift_image(set, p))
}

/// Applies the `(i,j)`-shift to every member. Size is preserved.
pub fn shift_family(family: &SetFamily, p: ShiftPair) -> Result<SetFamily> {
    p.check_ground(family.ground())?;
    let image = SetFamily::new(
        family.ground(),
        family.iter().map(|a| family.shift_image(a, p)),
    )?;
    debug_assert_eq!(image.len(), family.len());
    Ok(image)
}

/// Whether the family is fixed by every shift `S_ij` with `i < j`.
pub fn is_stable(family: &SetFamily) -> bool {
    // S_ij moves A exactly when its left neighbour (A - j) ∪ i is missing.
    family.iter().all(|a| {
        a.elements().all(|j| {
            (1..j)
                .filter(|&i| !a.contains(i))
                .all(|i| family.contains_bits(a.swap_element(j, i).bits()))
        })
    })
}

/// Shifts until stable, sweeping pairs `(i,j)`, `i < j`, in lexicographic
/// order and repeating until a full sweep changes nothing. Returns the stable
/// family and the shifts that changed it, in application order.
pub fn stabilize(family: &SetFamily) -> (SetFamily, Vec<ShiftPair>) {
    let n = family.ground();
    let mut current = family.clone();
    let mut applied = Vec::new();
    loop {
        let mut changed = false;
        for i in 1..=n {
            for j in i + 1..=n {
                let p = ShiftPair { i, j };
                let next = shift_family(&current, p).expect("pair is within the ground set");
                if next != current {
                    current = next;
                    applied.push(p);
                    changed = true;
                }
            }
        }
        if !changed {
            return (current, applied);
        }
    }
}

/// Members of size exactly `r`.
pub fn slice_by_size(family: &SetFamily, r: usize) -> Result<SetFamily> {
    if r > family.ground() {
        return Err(Error::argument(format!(
            "slice size {r} exceeds ground set size {}",
            family.ground()
        )));
    }
    SetFamily::new(family.ground(), family.iter().filter(|m| m.len() == r).copied())
}

/// Replaces each member by its complement in `[n]`.
pub fn complement_family(family: &SetFamily) -> SetFamily {
    SetFamily::from_masks(family.ground(), family.iter().map(|m| m.complement().bits()))
}

/// All `ell`-subsets of `[n]` contained in some member. Members smaller than
/// `ell` contribute nothing.
pub fn shadow(family: &SetFamily, ell: usize) -> Result<SetFamily> {
    if ell > family.ground() {
        return Err(Error::argument(format!(
            "shadow level {ell} exceeds ground set size {}",
            family.ground()
        )));
    }
    let mut out: Vec<ElementSet> = family
        .iter()
        .filter(|m| m.len() >= ell)
        .flat_map(|m| m.subsets_of_size(ell))
        .collect();
    out.sort_unstable();
    out.dedup();
    SetFamily::new(family.ground(), out)
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, m) in self.members.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]{}", self.n, self)
    }
}

impl Serialize for SetFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members.iter())
    }
}
