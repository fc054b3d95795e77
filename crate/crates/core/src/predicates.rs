//! Conditional intersection predicates and instability under shifting.
//!
//! A family is `(d,s,t)`-conditionally intersecting when every `d` distinct
//! members whose union has at most `s` elements share at least `t` elements.
//! A `d`-tuple breaking this (small union, small intersection) is a cluster.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{SetFamily, ShiftPair};
use crate::set::{intersection_size, union_size, ElementSet};

/// The `(d, s, t)` triple of a conditional intersection condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConditionParams {
    pub d: usize,
    pub s: usize,
    pub t: usize,
}

impl ConditionParams {
    pub fn new(d: usize, s: usize, t: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::argument(format!("d must be at least 2, got {d}")));
        }
        if t < 1 {
            return Err(Error::argument("t must be at least 1"));
        }
        Ok(ConditionParams { d, s, t })
    }
}

/// `d` members violating a condition, with their union and intersection sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterWitness {
    pub sets: Vec<ElementSet>,
    pub union_size: usize,
    pub intersection_size: usize,
}

/// A `d`-member subfamily that stops satisfying the condition after the shift
/// `pair` is applied to the whole family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnstableWitness {
    pub subfamily: Vec<ElementSet>,
    #[serde(serialize_with = "ser_pair")]
    pub pair: ShiftPair,
    pub params: ConditionParams,
}

fn ser_pair<S: serde::Serializer>(p: &ShiftPair, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq([p.i, p.j])
}

/// Visits every `d`-tuple of `masks` (increasing index order) whose union has
/// at most `s` elements and whose intersection has fewer than `t`. Partial
/// tuples whose union already exceeds `s` are cut off.
pub(crate) fn for_each_cluster<F>(masks: &[u64], params: ConditionParams, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let mut stack = Vec::with_capacity(params.d);
    let _ = cluster_rec(masks, params, 0, u64::MAX, 0, &mut stack, &mut visit);
}

fn cluster_rec<F>(
    masks: &[u64],
    params: ConditionParams,
    start: usize,
    inter: u64,
    union: u64,
    stack: &mut Vec<usize>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let remaining = params.d - stack.len();
    if remaining == 0 {
        if (inter.count_ones() as usize) < params.t {
            return visit(stack);
        }
        return ControlFlow::Continue(());
    }
    for idx in start..=masks.len().saturating_sub(remaining) {
        if masks.len() < remaining {
            break;
        }
        let u = union | masks[idx];
        if u.count_ones() as usize > params.s {
            continue;
        }
        stack.push(idx);
        let flow = cluster_rec(masks, params, idx + 1, inter & masks[idx], u, stack, visit);
        stack.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

fn first_cluster(masks: &[u64], params: ConditionParams) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_cluster(masks, params, |tuple| {
        found = Some(tuple.to_vec());
        ControlFlow::Break(())
    });
    found
}

fn masks(family: &SetFamily) -> Vec<u64> {
    family.iter().map(|m| m.bits()).collect()
}

/// True iff no `d` distinct members have union `<= s` and intersection `< t`.
/// Families with fewer than `d` members hold vacuously.
pub fn is_conditionally_intersecting(family: &SetFamily, params: ConditionParams) -> bool {
    first_cluster(&masks(family), params).is_none()
}

/// Every `d` members share at least `t` elements (the case `s = n`).
pub fn is_d_wise_t_intersecting(family: &SetFamily, d: usize, t: usize) -> Result<bool> {
    let params = ConditionParams::new(d, family.ground(), t)?;
    Ok(is_conditionally_intersecting(family, params))
}

/// The first violating `d`-tuple in canonical member order, if any.
pub fn find_violating_cluster(
    family: &SetFamily,
    params: ConditionParams,
) -> Option<ClusterWitness> {
    let idx = first_cluster(&masks(family), params)?;
    let sets: Vec<ElementSet> = idx.iter().map(|&i| family.members()[i]).collect();
    Some(ClusterWitness {
        union_size: union_size(&sets).expect("nonempty"),
        intersection_size: intersection_size(&sets).expect("nonempty"),
        sets,
    })
}

/// For a family satisfying `params`, finds `d` members whose shifted images
/// violate it, i.e. a witness that the shift `pair` breaks the condition.
/// Returns `None` when the shifted family still satisfies `params`.
pub fn is_ij_unstable(
    family: &SetFamily,
    pair: ShiftPair,
    params: ConditionParams,
) -> Result<Option<UnstableWitness>> {
    pair.check_ground(family.ground())?;
    if !is_conditionally_intersecting(family, params) {
        return Err(Error::argument(format!(
            "family is not ({},{},{})-conditionally intersecting",
            params.d, params.s, params.t
        )));
    }
    let images: Vec<u64> = family.iter().map(|a| family.shift_image(a, pair).bits()).collect();
    let Some(idx) = first_cluster(&images, params) else {
        return Ok(None);
    };
    let subfamily: Vec<ElementSet> = idx.iter().map(|&i| family.members()[i]).collect();
    debug_assert!(check_unstable_characterization(&subfamily, family, pair, params).unwrap());
    Ok(Some(UnstableWitness { subfamily, pair, params }))
}

/// Every unstable `d`-subfamily, in canonical order of index tuples.
pub fn unstable_subfamilies(
    family: &SetFamily,
    pair: ShiftPair,
    params: ConditionParams,
) -> Result<Vec<Vec<ElementSet>>> {
    pair.check_ground(family.ground())?;
    if !is_conditionally_intersecting(family, params) {
        return Err(Error::argument("family does not satisfy the condition"));
    }
    let images: Vec<u64> = family.iter().map(|a| family.shift_image(a, pair).bits()).collect();
    let mut out = Vec::new();
    for_each_cluster(&images, params, |tuple| {
        out.push(tuple.iter().map(|&i| family.members()[i]).collect());
        ControlFlow::Continue(())
    });
    Ok(out)
}

fn check_subfamily(subfamily: &[ElementSet], family: &SetFamily) -> Result<()> {
    for (idx, a) in subfamily.iter().enumerate() {
        if !family.contains(a) {
            return Err(Error::argument(format!("{a} is not a member of the family")));
        }
        if subfamily[..idx].contains(a) {
            return Err(Error::argument(format!("{a} appears twice in the subfamily")));
        }
    }
    Ok(())
}

/// Checks the two-chain characterization of an unstable `d`-subfamily:
///
/// ```text
/// |∩ A| <= |∩ S(A)| <= t - 1   and   |∪ A| = |∪ S(A)| + 1 = s + 1
/// ```
///
/// with shift images taken relative to `family`.
pub fn check_unstable_characterization(
    subfamily: &[ElementSet],
    family: &SetFamily,
    pair: ShiftPair,
    params: ConditionParams,
) -> Result<bool> {
    pair.check_ground(family.ground())?;
    check_subfamily(subfamily, family)?;
    if subfamily.len() != params.d {
        return Err(Error::argument(format!(
            "subfamily has {} sets, expected d = {}",
            subfamily.len(),
            params.d
        )));
    }
    let images: Vec<ElementSet> = subfamily.iter().map(|a| family.shift_image(a, pair)).collect();
    let inter = intersection_size(subfamily)?;
    let inter_img = intersection_size(&images)?;
    let uni = union_size(subfamily)?;
    let uni_img = union_size(&images)?;
    Ok(inter <= inter_img
        && inter_img + 1 <= params.t
        && uni == uni_img + 1
        && uni_img == params.s)
}

/// Splits an unstable subfamily by how the shift `(i,j)` treats each set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnstablePartition {
    /// Sets containing `j` but not `i` whose swap is not in the family; the
    /// shift moves exactly these.
    pub moved: Vec<ElementSet>,
    /// Sets containing `i` but not `j`.
    pub anchored: Vec<ElementSet>,
    /// Sets containing neither.
    pub untouched: Vec<ElementSet>,
}

/// Partitions an `(i,j)`-unstable subfamily into moved, anchored and
/// untouched sets. Fails unless every set lands in one class and the first
/// two classes are nonempty, which holds for every unstable subfamily.
pub fn partition_unstable_family(
    subfamily: &[ElementSet],
    family: &SetFamily,
    pair: ShiftPair,
) -> Result<UnstablePartition> {
    pair.check_ground(family.ground())?;
    check_subfamily(subfamily, family)?;
    let (i, j) = (pair.i, pair.j);
    let mut part = UnstablePartition { moved: vec![], anchored: vec![], untouched: vec![] };
    for a in subfamily {
        match (a.contains(i), a.contains(j)) {
            (false, true) if !family.contains(&a.swap_element(j, i)) => part.moved.push(*a),
            (true, false) => part.anchored.push(*a),
            (false, false) => part.untouched.push(*a),
            _ => {
                return Err(Error::argument(format!(
                    "{a} is fixed by the shift {pair} but contains {j}; subfamily is not unstable"
                )))
            }
        }
    }
    if part.moved.is_empty() || part.anchored.is_empty() {
        return Err(Error::argument(format!(
            "subfamily is not {pair}-unstable: moved and anchored parts must both be nonempty"
        )));
    }
    for v in [&mut part.moved, &mut part.anchored, &mut part.untouched] {
        v.sort_unstable();
    }
    Ok(part)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, lists: &[&[usize]]) -> SetFamily {
        SetFamily::from_lists(n, lists).unwrap()
    }

    fn set(n: usize, e: &[usize]) -> ElementSet {
        ElementSet::new(n, e.iter().copied()).unwrap()
    }

    fn cp(d: usize, s: usize, t: usize) -> ConditionParams {
        ConditionParams::new(d, s, t).unwrap()
    }

    fn example() -> SetFamily {
        fam(5, &[&[1, 3], &[2, 4], &[3, 5]])
    }

    #[test]
    fn params_validation() {
        assert!(ConditionParams::new(1, 4, 1).is_err());
        assert!(ConditionParams::new(2, 4, 0).is_err());
        assert!(ConditionParams::new(2, 0, 1).is_ok());
    }

    #[test]
    fn conditional_intersection_examples() {
        assert!(is_conditionally_intersecting(&example(), cp(3, 4, 1)));
        let shifted = fam(5, &[&[1, 3], &[1, 4], &[3, 5]]);
        assert!(!is_conditionally_intersecting(&shifted, cp(3, 4, 1)));
        assert!(is_conditionally_intersecting(&SetFamily::empty(4).unwrap(), cp(2, 0, 3)));
    }

    #[test]
    fn d_wise_examples() {
        assert!(is_d_wise_t_intersecting(&fam(3, &[&[1, 2], &[1, 3]]), 2, 1).unwrap());
        assert!(!is_d_wise_t_intersecting(&example(), 3, 1).unwrap());
        assert!(is_d_wise_t_intersecting(&SetFamily::uniform(4, 3).unwrap(), 3, 1).unwrap());
    }

    #[test]
    fn cluster_examples() {
        let shifted = fam(5, &[&[1, 3], &[1, 4], &[3, 5]]);
        let w = find_violating_cluster(&shifted, cp(3, 4, 1)).unwrap();
        assert_eq!(w.sets, shifted.members());
        assert_eq!((w.union_size, w.intersection_size), (4, 0));

        assert!(find_violating_cluster(&fam(3, &[&[1, 2], &[1, 3]]), cp(2, 4, 1)).is_none());

        let pairs = SetFamily::uniform(5, 2).unwrap();
        let w = find_violating_cluster(&pairs, cp(2, 4, 1)).unwrap();
        assert_eq!(w.sets, vec![set(5, &[1, 2]), set(5, &[3, 4])]);
        assert_eq!((w.union_size, w.intersection_size), (4, 0));
    }

    #[test]
    fn unstable_examples() {
        let w = is_ij_unstable(&example(), ShiftPair::new(1, 2).unwrap(), cp(3, 4, 1))
            .unwrap()
            .unwrap();
        assert_eq!(w.subfamily, example().members());

        let star = fam(3, &[&[1, 2], &[1, 3]]);
        assert!(is_ij_unstable(&star, ShiftPair::new(1, 2).unwrap(), cp(2, 3, 1))
            .unwrap()
            .is_none());

        let w = is_ij_unstable(&example(), ShiftPair::new(2, 1).unwrap(), cp(3, 4, 1))
            .unwrap()
            .unwrap();
        assert_eq!(w.subfamily, example().members());
    }

    #[test]
    fn unstable_requires_the_condition() {
        let shifted = fam(5, &[&[1, 3], &[1, 4], &[3, 5]]);
        assert!(matches!(
            is_ij_unstable(&shifted, ShiftPair::new(1, 2).unwrap(), cp(3, 4, 1)),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn characterization_examples() {
        let f = example();
        let p12 = ShiftPair::new(1, 2).unwrap();
        assert!(check_unstable_characterization(f.members(), &f, p12, cp(3, 4, 1)).unwrap());

        let star = fam(3, &[&[1, 2], &[1, 3]]);
        assert!(!check_unstable_characterization(star.members(), &star, p12, cp(2, 3, 1)).unwrap());

        // intersection already at t: the first chain fails
        let g = fam(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        assert!(!check_unstable_characterization(g.members(), &g, p12, cp(3, 3, 1)).unwrap());

        let outsider = [set(5, &[1, 3]), set(5, &[1, 2]), set(5, &[3, 5])];
        assert!(check_unstable_characterization(&outsider, &f, p12, cp(3, 4, 1)).is_err());
        assert!(check_unstable_characterization(&f.members()[..2], &f, p12, cp(3, 4, 1)).is_err());
    }

    #[test]
    fn partition_examples() {
        let f = example();
        let part = partition_unstable_family(f.members(), &f, ShiftPair::new(1, 2).unwrap())
            .unwrap();
        assert_eq!(part.moved, vec![set(5, &[2, 4])]);
        assert_eq!(part.anchored, vec![set(5, &[1, 3])]);
        assert_eq!(part.untouched, vec![set(5, &[3, 5])]);

        let part = partition_unstable_family(f.members(), &f, ShiftPair::new(2, 1).unwrap())
            .unwrap();
        assert_eq!(part.moved, vec![set(5, &[1, 3])]);
        assert_eq!(part.anchored, vec![set(5, &[2, 4])]);
        assert_eq!(part.untouched, vec![set(5, &[3, 5])]);
    }

    #[test]
    fn partition_rejects_stable_subfamilies() {
        let star = fam(3, &[&[1, 2], &[1, 3]]);
        assert!(partition_unstable_family(star.members(), &star, ShiftPair::new(1, 2).unwrap())
            .is_err());
    }
}
