//! Threshold families over a partition of `[n]` and the explicit `d`-tuple
//! that pins their conditional intersection threshold.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::{full_mask, k_subset_masks, ElementSet};

/// Disjoint parts `X_1, ..., X_r` covering `[n]` with thresholds `x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionSpec {
    pub parts: Vec<ElementSet>,
    pub thresholds: Vec<usize>,
}

impl PartitionSpec {
    pub fn new(parts: Vec<ElementSet>, thresholds: Vec<usize>) -> Result<Self> {
        let n = parts
            .first()
            .ok_or_else(|| Error::argument("a partition needs at least one part"))?
            .ground();
        if parts.len() != thresholds.len() {
            return Err(Error::argument(format!(
                "{} parts but {} thresholds",
                parts.len(),
                thresholds.len()
            )));
        }
        let mut seen = 0u64;
        for p in &parts {
            if p.ground() != n {
                return Err(Error::argument("parts live in different ground sets"));
            }
            if p.is_empty() {
                return Err(Error::argument("parts must be nonempty"));
            }
            if p.bits() & seen != 0 {
                return Err(Error::argument(format!("part {p} overlaps an earlier part")));
            }
            seen |= p.bits();
        }
        if seen != full_mask(n) {
            return Err(Error::argument(format!("parts do not cover [{n}]")));
        }
        Ok(PartitionSpec { parts, thresholds })
    }

    pub fn ground(&self) -> usize {
        self.parts[0].ground()
    }

    /// Checks the partition against a uniformity `k`: at most `k` parts and
    /// thresholds summing to at most `k`.
    pub fn check_uniformity(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.ground() {
            return Err(Error::argument(format!("need 1 <= k <= n, got k = {k}")));
        }
        if self.parts.len() > k {
            return Err(Error::argument(format!(
                "{} parts exceed k = {k}",
                self.parts.len()
            )));
        }
        let total: usize = self.thresholds.iter().sum();
        if total > k {
            return Err(Error::argument(format!("thresholds sum to {total} > k = {k}")));
        }
        Ok(())
    }
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// `k`-sets meeting every part `X_i` in at least `x_i` elements.
pub fn threshold_family(n: usize, k: usize, spec: &PartitionSpec) -> Result<SetFamily> {
    if spec.ground() != n {
        return Err(Error::argument(format!("spec lives in [{}], not [{n}]", spec.ground())));
    }
    spec.check_uniformity(k)?;
    Ok(SetFamily::from_masks(
        n,
        k_subset_masks(n, k).filter(|&m| {
            spec.parts
                .iter()
                .zip(&spec.thresholds)
                .all(|(p, &x)| (m & p.bits()).count_ones() as usize >= x)
        }),
    ))
}

/// Least ground set size on which `k`-sets can have `d`-wise empty
/// intersection: `⌈dk/(d-1)⌉`.
pub fn min_ground_size(d: usize, k: usize) -> Result<usize> {
    if d < 2 || k < 2 {
        return Err(Error::argument(format!("need d >= 2 and k >= 2, got d = {d}, k = {k}")));
    }
    Ok(ceil_div(d * k, d - 1))
}

fn part_lower_bounds(d: usize, spec: &PartitionSpec) -> Vec<usize> {
    spec.thresholds.iter().map(|&x| ceil_div(d * x, d - 1)).collect()
}

/// The largest `s` for which the threshold family is `(d, s)`-conditionally
/// intersecting when it is not `d`-wise intersecting:
/// `max(⌈dk/(d-1)⌉, Σ ⌈d x_i/(d-1)⌉) - 1`.
pub fn partition_threshold(d: usize, k: usize, spec: &PartitionSpec) -> Result<usize> {
    let base = min_ground_size(d, k)?;
    let parts: usize = part_lower_bounds(d, spec).iter().sum();
    Ok(base.max(parts) - 1)
}

/// True iff the threshold family has `d` members with empty intersection.
/// Equivalent to every part holding at least `⌈d x_i/(d-1)⌉` elements and
/// `n >= ⌈dk/(d-1)⌉`; [`partition_witness`] constructs the members.
pub fn threshold_family_has_empty_d_intersection(
    d: usize,
    k: usize,
    spec: &PartitionSpec,
) -> Result<bool> {
    spec.check_uniformity(k)?;
    let y = part_lower_bounds(d, spec);
    Ok(spec.ground() >= min_ground_size(d, k)?
        && spec.parts.iter().zip(&y).all(|(p, &yi)| p.len() >= yi))
}

/// Index order of the `count` smallest sets by (size, index).
fn smallest(sizes: &[usize], count: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by_key(|&j| (sizes[j], j));
    order.truncate(count);
    order
}

/// Splits the first `y` elements of `part` into `d` pieces with total size
/// `a` and no element in all pieces.
fn split_part(part: &[usize], y: usize, a: usize, d: usize) -> Vec<Vec<usize>> {
    let mut pieces: Vec<Vec<usize>> = vec![Vec::new(); d];
    if y == 0 {
        return pieces;
    }
    for (idx, &e) in part[..y].iter().enumerate() {
        let copies = if idx + 1 < y { d - 1 } else { a - (d - 1) * (y - 1) };
        let sizes: Vec<usize> = pieces.iter().map(Vec::len).collect();
        for j in smallest(&sizes, copies) {
            pieces[j].push(e);
        }
    }
    pieces
}

/// `d` distinct members of the threshold family with empty intersection and
/// union of size exactly `partition_threshold + 1`.
///
/// Each part contributes pieces of near-equal size built from its first
/// `⌈d x_i/(d-1)⌉` elements; pieces are dealt largest-first onto the
/// currently smallest sets. When the parts alone cannot reach total size
/// `dk`, elements outside them are added to `d-1` of the smallest sets and
/// the surplus is trimmed from the largest. Every postcondition is checked.
pub fn partition_witness(d: usize, k: usize, spec: &PartitionSpec) -> Result<Vec<ElementSet>> {
    let n = spec.ground();
    if d < 2 {
        return Err(Error::argument("d must be at least 2"));
    }
    if !threshold_family_has_empty_d_intersection(d, k, spec)? {
        return Err(Error::capability(format!(
            "the threshold family is {d}-wise intersecting, so no witness exists"
        )));
    }
    let s = partition_threshold(d, k, spec)?;
    let y = part_lower_bounds(d, spec);
    let capacity: usize = y.iter().map(|&yi| (d - 1) * yi).sum();
    let target = d * k;

    let a: Vec<usize> = if capacity >= target {
        let mut rest = target - spec.thresholds.iter().map(|&x| d * x).sum::<usize>();
        spec.thresholds
            .iter()
            .zip(&y)
            .map(|(&x, &yi)| {
                let extra = rest.min((d - 1) * yi - d * x);
                rest -= extra;
                d * x + extra
            })
            .collect()
    } else {
        y.iter().map(|&yi| (d - 1) * yi).collect()
    };

    // layers[l][j]: what layer l (a part, then the outside elements) puts
    // into set j
    let mut layers: Vec<Vec<Vec<usize>>> = Vec::with_capacity(spec.parts.len() + 1);
    let mut sizes = vec![0usize; d];
    for ((part, &yi), &ai) in spec.parts.iter().zip(&y).zip(&a) {
        let mut pieces = split_part(&part.to_vec(), yi, ai, d);
        pieces.sort_by_key(|p| std::cmp::Reverse(p.len()));
        let mut layer = vec![Vec::new(); d];
        for (piece, j) in pieces.into_iter().zip(smallest(&sizes, d)) {
            sizes[j] += piece.len();
            layer[j] = piece;
        }
        layers.push(layer);
    }

    let mut outside_layer = vec![Vec::new(); d];
    if capacity < target {
        let used: u64 = layers.iter().flatten().flatten().fold(0, |acc, &e| acc | (1 << (e - 1)));
        let mut outside = (1..=n).filter(|&e| used & (1 << (e - 1)) == 0);
        let mut last = None;
        while sizes.iter().sum::<usize>() < target {
            let e = outside.next().ok_or_else(|| {
                Error::invariant("ran out of elements outside the parts")
            })?;
            for j in smallest(&sizes, d - 1) {
                outside_layer[j].push(e);
                sizes[j] += 1;
            }
            last = Some(e);
        }
        while sizes.iter().sum::<usize>() > target {
            let e = last.expect("surplus implies an added element");
            let j = (0..d)
                .filter(|&j| outside_layer[j].contains(&e))
                .max_by_key(|&j| (sizes[j], std::cmp::Reverse(j)))
                .ok_or_else(|| Error::invariant("no set holds the last added element"))?;
            outside_layer[j].retain(|&x| x != e);
            sizes[j] -= 1;
        }
    }
    layers.push(outside_layer);
    separate_duplicates(&mut layers, spec)?;

    let sets: Vec<Vec<usize>> = (0..d)
        .map(|j| layers.iter().flat_map(|l| l[j].iter().copied()).collect())
        .collect();
    let out: Vec<ElementSet> = sets
        .into_iter()
        .map(|v| ElementSet::new(n, v))
        .collect::<Result<_>>()?;
    check_witness(&out, d, k, spec, s)?;
    Ok(out)
}

fn assemble(layers: &[Vec<Vec<usize>>], j: usize) -> u64 {
    layers.iter().flat_map(|l| &l[j]).fold(0, |acc, &e| acc | (1 << (e - 1)))
}

fn duplicate_pairs(layers: &[Vec<Vec<usize>>]) -> Vec<(usize, usize)> {
    let d = layers[0].len();
    let sets: Vec<u64> = (0..d).map(|j| assemble(layers, j)).collect();
    let mut out = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            if sets[a] == sets[b] {
                out.push((a, b));
            }
        }
    }
    out
}

fn meets_thresholds(layers: &[Vec<Vec<usize>>], spec: &PartitionSpec, j: usize) -> bool {
    let set = assemble(layers, j);
    spec.parts
        .iter()
        .zip(&spec.thresholds)
        .all(|(p, &x)| (set & p.bits()).count_ones() as usize >= x)
}

/// Dealing can produce equal sets. Swapping two equal-length pieces of one
/// layer keeps every size and element multiplicity, so such swaps are tried
/// until the sets are distinct; each accepted swap removes a duplicate pair.
fn separate_duplicates(layers: &mut [Vec<Vec<usize>>], spec: &PartitionSpec) -> Result<()> {
    let d = layers[0].len();
    loop {
        let dups = duplicate_pairs(layers);
        let Some(&(a, b)) = dups.first() else { return Ok(()) };
        let mut fixed = false;
        'search: for victim in [b, a] {
            for l in 0..layers.len() {
                for c in 0..d {
                    if c == victim
                        || layers[l][c].len() != layers[l][victim].len()
                        || layers[l][c] == layers[l][victim]
                    {
                        continue;
                    }
                    layers[l].swap(c, victim);
                    if duplicate_pairs(layers).len() < dups.len()
                        && meets_thresholds(layers, spec, c)
                        && meets_thresholds(layers, spec, victim)
                    {
                        fixed = true;
                        break 'search;
                    }
                    layers[l].swap(c, victim);
                }
            }
        }
        if !fixed {
            return Err(Error::invariant("could not make the witness sets distinct"));
        }
    }
}

fn check_witness(sets: &[ElementSet], d: usize, k: usize, spec: &PartitionSpec, s: usize) -> Result<()> {
    if sets.len() != d {
        return Err(Error::invariant(format!("built {} sets, expected {d}", sets.len())));
    }
    for (idx, a) in sets.iter().enumerate() {
        if a.len() != k {
            return Err(Error::invariant(format!("{a} has size {}, expected {k}", a.len())));
        }
        for (p, &x) in spec.parts.iter().zip(&spec.thresholds) {
            if a.intersection(p).len() < x {
                return Err(Error::invariant(format!("{a} meets {p} in fewer than {x} elements")));
            }
        }
        if sets[..idx].contains(a) {
            return Err(Error::invariant(format!("{a} was built twice")));
        }
    }
    let inter = sets.iter().fold(u64::MAX, |acc, a| acc & a.bits());
    if inter != 0 {
        return Err(Error::invariant("witness sets share an element"));
    }
    let union = sets.iter().fold(0u64, |acc, a| acc | a.bits()).count_ones() as usize;
    if union != s + 1 {
        return Err(Error::invariant(format!("witness union has size {union}, expected {}", s + 1)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{ahlswede_khachatrian_family, star};
    use crate::predicates::{find_violating_cluster, is_conditionally_intersecting, is_d_wise_t_intersecting, ConditionParams};

    fn set(n: usize, e: impl IntoIterator<Item = usize>) -> ElementSet {
        ElementSet::new(n, e).unwrap()
    }

    fn two_parts(n: usize, first: &[usize], x1: usize, x2: usize) -> PartitionSpec {
        let a = set(n, first.iter().copied());
        PartitionSpec::new(vec![a, a.complement()], vec![x1, x2]).unwrap()
    }

    #[test]
    fn spec_validation() {
        let a = set(4, [1, 2]);
        assert!(PartitionSpec::new(vec![a, set(4, [2, 3, 4])], vec![0, 0]).is_err());
        assert!(PartitionSpec::new(vec![a, set(4, [3])], vec![0, 0]).is_err());
        assert!(PartitionSpec::new(vec![a, a.complement()], vec![0]).is_err());
        assert!(PartitionSpec::new(vec![], vec![]).is_err());
        let spec = PartitionSpec::new(vec![a, a.complement()], vec![2, 1]).unwrap();
        assert!(spec.check_uniformity(2).is_err());
        assert!(spec.check_uniformity(3).is_ok());
    }

    #[test]
    fn threshold_values() {
        let spec = two_parts(6, &[1, 2, 3], 2, 0);
        assert_eq!(partition_threshold(3, 3, &spec).unwrap(), 4);
        let whole = PartitionSpec::new(vec![ElementSet::full(6).unwrap()], vec![0]).unwrap();
        assert_eq!(partition_threshold(3, 4, &whole).unwrap(), 5);
        let singles: Vec<ElementSet> = (0..4).map(|i| set(8, [2 * i + 1, 2 * i + 2])).collect();
        let spec = PartitionSpec::new(singles, vec![1, 1, 1, 1]).unwrap();
        assert_eq!(partition_threshold(4, 4, &spec).unwrap(), 7);
    }

    #[test]
    fn min_ground_values() {
        assert_eq!(min_ground_size(3, 3).unwrap(), 5);
        assert_eq!(min_ground_size(3, 4).unwrap(), 6);
        assert_eq!(min_ground_size(4, 4).unwrap(), 6);
        assert!(min_ground_size(1, 3).is_err());
    }

    #[test]
    fn star_and_ak_as_threshold_families() {
        for n in 2..=8 {
            for k in 2..=4.min(n) {
                for y in 1..=n {
                    let spec = two_parts(n, &[y], 1, 0);
                    assert_eq!(threshold_family(n, k, &spec).unwrap(), star(n, k, y).unwrap());
                }
                for t in 1..=k {
                    for j in 0..=k - t {
                        if t + 2 * j > n {
                            continue;
                        }
                        let first: Vec<usize> = (1..=t + 2 * j).collect();
                        let spec = if t + 2 * j == n {
                            PartitionSpec::new(vec![ElementSet::full(n).unwrap()], vec![t + j]).unwrap()
                        } else {
                            two_parts(n, &first, t + j, 0)
                        };
                        assert_eq!(
                            threshold_family(n, k, &spec).unwrap(),
                            ahlswede_khachatrian_family(n, k, t, j).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn witness_for_whole_ground_set() {
        for n in 5..=8 {
            let spec = PartitionSpec::new(vec![ElementSet::full(n).unwrap()], vec![0]).unwrap();
            let w = partition_witness(3, 3, &spec).unwrap();
            assert_eq!(w.len(), 3);
            assert!(w.iter().all(|a| a.len() == 3));
            assert_eq!(w.iter().fold(0u64, |acc, a| acc | a.bits()).count_ones(), 5);
            assert_eq!(w.iter().fold(u64::MAX, |acc, a| acc & a.bits()), 0);
        }
    }

    #[test]
    fn witness_with_a_heavy_part() {
        let spec = two_parts(6, &[1, 2, 3], 2, 0);
        let w = partition_witness(3, 3, &spec).unwrap();
        let x1 = set(6, [1, 2, 3]);
        assert!(w.iter().all(|a| a.intersection(&x1).len() >= 2));
        let g = threshold_family(6, 3, &spec).unwrap();
        assert!(is_conditionally_intersecting(&g, ConditionParams::new(3, 4, 1).unwrap()));
        assert!(!is_conditionally_intersecting(&g, ConditionParams::new(3, 5, 1).unwrap()));
    }

    #[test]
    fn intersecting_families_have_no_witness() {
        // a star is 3-wise intersecting
        let spec = two_parts(6, &[1], 1, 0);
        assert!(matches!(partition_witness(3, 3, &spec), Err(Error::Capability(_))));
        let spec = PartitionSpec::new(vec![ElementSet::full(4).unwrap()], vec![0]).unwrap();
        assert!(matches!(partition_witness(3, 3, &spec), Err(Error::Capability(_))));
    }

    #[test]
    fn exhaustive_small_sweep_matches_direct_search() {
        // every two-part spec on n <= 6, d in {3, 4}, k = 3
        for n in 3..=6 {
            for mask in 1..(1u64 << n) - 1 {
                let first: Vec<usize> = (1..=n).filter(|e| mask & (1 << (e - 1)) != 0).collect();
                for x1 in 0..=3 {
                    for x2 in 0..=3 - x1 {
                        let spec = two_parts(n, &first, x1, x2);
                        for d in [3, 4] {
                            let g = threshold_family(n, 3, &spec).unwrap();
                            if g.len() < d {
                                continue;
                            }
                            let has = !is_d_wise_t_intersecting(&g, d, 1).unwrap();
                            assert_eq!(
                                threshold_family_has_empty_d_intersection(d, 3, &spec).unwrap(),
                                has,
                                "n={n} first={first:?} x=({x1},{x2}) d={d}"
                            );
                            if has {
                                let s = partition_threshold(d, 3, &spec).unwrap();
                                let p = ConditionParams::new(d, s, 1).unwrap();
                                assert!(find_violating_cluster(&g, p).is_none());
                                partition_witness(d, 3, &spec).unwrap_or_else(|e| {
                                    panic!("{e}: n={n} first={first:?} x=({x1},{x2}) d={d}")
                                });
                            }
                        }
                    }
                }
            }
        }
    }
}
