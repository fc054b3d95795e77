//! Oracles and randomized checks shared by the integration tests and the
//! acceptance runner. Each `check_*` returns `Err` with a readable case
//! description on the first disagreement.

#![allow(dead_code)]

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use setlab::constructions::{binomial, shadow_bound_check, star};
use setlab::family::{is_stable, shadow, shift_family, shift_set};
use setlab::predicates::{
    check_unstable_characterization, is_conditionally_intersecting, is_d_wise_t_intersecting,
};
use setlab::search::{solve, SearchOptions, SearchRequest, VertexPool};
use setlab::{ConditionParams, ElementSet, SetFamily, ShiftPair};

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cp(d: usize, s: usize, t: usize) -> ConditionParams {
    ConditionParams::new(d, s, t).unwrap()
}

pub fn family_of(n: usize, masks: impl IntoIterator<Item = u64>) -> SetFamily {
    SetFamily::new(n, masks.into_iter().map(|m| ElementSet::from_bits(n, m).unwrap())).unwrap()
}

pub fn masks(f: &SetFamily) -> Vec<u64> {
    f.iter().map(|m| m.bits()).collect()
}

/// Every subset of `[n]` kept independently with probability `p`.
pub fn random_family(rng: &mut impl Rng, n: usize, p: f64) -> SetFamily {
    family_of(n, (0..1u64 << n).filter(|_| rng.gen_bool(p)))
}

pub fn k_masks(n: usize, k: usize) -> Vec<u64> {
    (0..1u64 << n).filter(|m| m.count_ones() as usize == k).collect()
}

pub fn random_uniform_family(rng: &mut impl Rng, n: usize, k: usize, p: f64) -> SetFamily {
    family_of(n, k_masks(n, k).into_iter().filter(|_| rng.gen_bool(p)))
}

pub fn random_pair(rng: &mut impl Rng, n: usize) -> ShiftPair {
    let i = rng.gen_range(1..=n);
    let mut j = rng.gen_range(1..=n);
    while j == i {
        j = rng.gen_range(1..=n);
    }
    ShiftPair::new(i, j).unwrap()
}

/// `d` sets with union at most `s` and fewer than `t` common elements.
pub fn naive_violates(sets: &[u64], s: usize, t: usize) -> bool {
    let union = sets.iter().fold(0, |a, b| a | b);
    let inter = sets.iter().fold(u64::MAX, |a, b| a & b);
    union.count_ones() as usize <= s && (inter.count_ones() as usize) < t
}

pub fn naive_ci(sets: &[u64], d: usize, s: usize, t: usize) -> bool {
    sets.iter()
        .copied()
        .combinations(d)
        .all(|c| !naive_violates(&c, s, t))
}

/// Shift of one mask relative to the masks of a family.
pub fn naive_shift(a: u64, family: &[u64], i: usize, j: usize) -> u64 {
    let (bi, bj) = (1u64 << (i - 1), 1u64 << (j - 1));
    if a & bj != 0 && a & bi == 0 {
        let moved = (a & !bj) | bi;
        if !family.contains(&moved) {
            return moved;
        }
    }
    a
}

// ---- shift properties ----

/// Image sizes: the family keeps its size and each member keeps its size.
pub fn check_shift_sizes(f: &SetFamily, p: ShiftPair) -> Check {
    let image = shift_family(f, p).map_err(|e| e.to_string())?;
    if image.len() != f.len() {
        return Err(format!("{f} under {p}: size {} -> {}", f.len(), image.len()));
    }
    let fm = masks(f);
    for a in f.iter() {
        let b = shift_set(a, f, p).map_err(|e| e.to_string())?;
        if b.len() != a.len() {
            return Err(format!("{a} in {f} under {p} changed size"));
        }
        if b.bits() != naive_shift(a.bits(), &fm, p.i, p.j) {
            return Err(format!("{a} in {f} under {p}: got {b}"));
        }
        if !image.contains(&b) {
            return Err(format!("{b} missing from the image of {f} under {p}"));
        }
    }
    Ok(())
}

/// Union moves by at most one under the shift taken relative to `f`. The
/// intersection never shrinks and grows by at most one under the shift taken
/// relative to the subfamily itself; relative to a larger family a blocked
/// member can drop `j` from the intersection (see
/// `intersection_can_drop_inside_a_larger_family`).
pub fn check_shift_union_intersection(f: &SetFamily, pick: &[usize], p: ShiftPair) -> Check {
    if pick.is_empty() {
        return Ok(());
    }
    let fm = masks(f);
    let g: Vec<u64> = pick.iter().map(|&i| fm[i]).collect();
    let h: Vec<u64> = g.iter().map(|&a| naive_shift(a, &fm, p.i, p.j)).collect();
    let own: Vec<u64> = g.iter().map(|&a| naive_shift(a, &g, p.i, p.j)).collect();
    let u = g.iter().fold(0, |a, b| a | b).count_ones() as i64;
    let u2 = h.iter().fold(0, |a, b| a | b).count_ones() as i64;
    let u3 = own.iter().fold(0, |a, b| a | b).count_ones() as i64;
    let x = g.iter().fold(u64::MAX, |a, b| a & b).count_ones() as i64;
    let x3 = own.iter().fold(u64::MAX, |a, b| a & b).count_ones() as i64;
    if (u2 - u).abs() > 1 || (u3 - u).abs() > 1 || x3 < x || x3 > x + 1 {
        return Err(format!(
            "{f}, subfamily {pick:?}, {p}: union {u}->{u2} (own {u3}), intersection {x}->{x3}"
        ));
    }
    Ok(())
}

// ---- condition properties ----

pub fn check_predicate_matches_naive(f: &SetFamily, params: ConditionParams) -> Check {
    let lib = is_conditionally_intersecting(f, params);
    let naive = naive_ci(&masks(f), params.d, params.s, params.t);
    if lib != naive {
        return Err(format!("{f} with {params:?}: library {lib}, naive {naive}"));
    }
    Ok(())
}

/// Lowering `s` keeps the condition.
pub fn check_monotone_in_s(f: &SetFamily, params: ConditionParams) -> Check {
    if params.s == 0 || !is_conditionally_intersecting(f, params) {
        return Ok(());
    }
    let lower = cp(params.d, params.s - 1, params.t);
    if !is_conditionally_intersecting(f, lower) {
        return Err(format!("{f}: holds at {params:?} but not at s-1"));
    }
    Ok(())
}

/// For `k`-uniform families and `s >= dk` the condition is `d`-wise
/// `t`-intersection.
pub fn check_saturation(f: &SetFamily, d: usize, extra: usize, t: usize) -> Check {
    let Some(k) = f.uniform_size() else { return Ok(()) };
    let params = cp(d, d * k + extra, t);
    if is_conditionally_intersecting(f, params) && !is_d_wise_t_intersecting(f, d, t).unwrap() {
        return Err(format!("{f}: holds at {params:?} but is not {d}-wise {t}-intersecting"));
    }
    Ok(())
}

pub fn check_shift_keeps_d_wise(f: &SetFamily, d: usize, t: usize, p: ShiftPair) -> Check {
    if !is_d_wise_t_intersecting(f, d, t).unwrap() {
        return Ok(());
    }
    let image = shift_family(f, p).unwrap();
    if !is_d_wise_t_intersecting(&image, d, t).unwrap() {
        return Err(format!("{f} is {d}-wise {t}-intersecting but its {p} image {image} is not"));
    }
    Ok(())
}

/// `d` sets that share `t` elements or span `s + 2` keep the condition
/// after shifting them as a family of their own.
pub fn check_far_tuples_survive(f: &SetFamily, pick: &[usize], p: ShiftPair, params: ConditionParams) -> Check {
    let fm = masks(f);
    let g: Vec<u64> = pick.iter().map(|&i| fm[i]).collect();
    let u = g.iter().fold(0, |a, b| a | b).count_ones() as usize;
    let x = g.iter().fold(u64::MAX, |a, b| a & b).count_ones() as usize;
    if x < params.t && u < params.s + 2 {
        return Ok(());
    }
    let h: Vec<u64> = g.iter().map(|&a| naive_shift(a, &g, p.i, p.j)).collect();
    let image = family_of(f.ground(), h.iter().copied());
    if image.len() != g.len() || !is_conditionally_intersecting(&image, params) {
        return Err(format!("{f}, subfamily {pick:?}, {p}: image {image} violates {params:?}"));
    }
    Ok(())
}

/// The two-chain characterization agrees with "CI before the shift and not
/// after" on every `d`-subfamily of a family satisfying `params`.
pub fn check_unstable_equivalence(f: &SetFamily, p: ShiftPair, params: ConditionParams) -> Check {
    let fm = masks(f);
    if !naive_ci(&fm, params.d, params.s, params.t) {
        return Err(format!("{f} does not satisfy {params:?}"));
    }
    for idx in (0..fm.len()).combinations(params.d) {
        let sub: Vec<ElementSet> = idx.iter().map(|&i| f.members()[i]).collect();
        let g: Vec<u64> = idx.iter().map(|&i| fm[i]).collect();
        let h: Vec<u64> = g.iter().map(|&a| naive_shift(a, &fm, p.i, p.j)).collect();
        let expected = !naive_violates(&g, params.s, params.t) && naive_violates(&h, params.s, params.t);
        let got = check_unstable_characterization(&sub, f, p, params).map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!("{f}, {p}, {params:?}, subfamily {idx:?}: library {got}, direct {expected}"));
        }
    }
    Ok(())
}

/// Random pool order, each set kept if the family still satisfies `params`.
pub fn random_ci_family(rng: &mut impl Rng, n: usize, pool: Vec<u64>, params: ConditionParams, target: usize) -> SetFamily {
    let mut pool = pool;
    pool.shuffle(rng);
    let mut chosen: Vec<u64> = Vec::new();
    for x in pool {
        if chosen.len() == target {
            break;
        }
        chosen.push(x);
        if !naive_ci(&chosen, params.d, params.s, params.t) {
            chosen.pop();
        }
    }
    family_of(n, chosen)
}

// ---- shadow bound ----

/// A random `k`-uniform `t`-intersecting family, grown greedily from a
/// shuffled pool. With probability 1/4 it is instead every `k`-subset of a
/// random `(2k-t)`-set, the equality shape.
pub fn random_t_intersecting(rng: &mut impl Rng, n: usize, k: usize, t: usize) -> SetFamily {
    let m = 2 * k - t;
    if m <= n && rng.gen_bool(0.25) {
        let mut elems: Vec<usize> = (0..n).collect();
        elems.shuffle(rng);
        let support: u64 = elems[..m].iter().map(|e| 1u64 << e).sum();
        return family_of(n, k_masks(n, k).into_iter().filter(|x| x & !support == 0));
    }
    let mut pool = k_masks(n, k);
    pool.shuffle(rng);
    let target = rng.gen_range(1..=pool.len());
    let mut chosen: Vec<u64> = Vec::new();
    for x in pool {
        if chosen.len() == target {
            break;
        }
        if chosen.iter().all(|y| (x & y).count_ones() as usize >= t) {
            chosen.push(x);
        }
    }
    family_of(n, chosen)
}

/// Bound, exact rational arithmetic and the equality-case prediction.
pub fn check_shadow_bound(f: &SetFamily, t: usize, ell: usize) -> Check {
    let k = f.uniform_size().unwrap();
    let r = shadow_bound_check(f, t, ell).map_err(|e| format!("{f}: {e}"))?;
    let fm = masks(f);
    let naive_shadow = k_masks(f.ground(), ell)
        .into_iter()
        .filter(|s| fm.iter().any(|a| s & !a == 0))
        .count() as u128;
    let m = 2 * k - t;
    // lhs >= C(m,ell)/C(m,k) |F|, cross-multiplied
    let lhs_scaled = naive_shadow * binomial(m, k);
    let rhs_scaled = binomial(m, ell) * fm.len() as u128;
    let support = fm.iter().fold(0, |a, b| a | b);
    let full = support.count_ones() as usize == m && fm.len() as u128 == binomial(m, k);
    let shape = ell == k || full;
    if r.lhs != naive_shadow
        || r.rhs_num * binomial(m, k) != rhs_scaled * r.rhs_den
        || r.holds != (lhs_scaled >= rhs_scaled)
        || r.equality != (lhs_scaled == rhs_scaled)
    {
        return Err(format!("{f}, t={t}, ell={ell}: {r:?}, shadow {naive_shadow}"));
    }
    if !r.holds {
        return Err(format!("{f}, t={t}, ell={ell}: bound fails, {r:?}"));
    }
    if r.equality != shape || r.equality_predicted != shape {
        return Err(format!("{f}, t={t}, ell={ell}: equality {} but shape says {shape}", r.equality));
    }
    // the shadow itself
    if shadow(f, ell).unwrap().len() as u128 != naive_shadow {
        return Err(format!("{f}: shadow size mismatch"));
    }
    Ok(())
}

// ---- search ----

/// Maximum over all subsets of the pool, by a bitmask sweep over the
/// independence of every subset. Also counts the optimal subsets.
pub struct NaiveMax {
    pub optimum: usize,
    pub count: usize,
}

pub fn naive_max_family(
    n: usize,
    pool: &[u64],
    params: ConditionParams,
    stable: bool,
    nonintersecting: bool,
) -> NaiveMax {
    let v = pool.len();
    assert!(v <= 25, "naive oracle is limited to 25 vertices");
    // conflict edges through each vertex, as masks over lower-or-equal vertices
    let mut edges_at: Vec<Vec<u32>> = vec![Vec::new(); v];
    for tuple in (0..v).combinations(params.d) {
        let sets: Vec<u64> = tuple.iter().map(|&i| pool[i]).collect();
        if naive_violates(&sets, params.s, params.t) {
            let top = *tuple.last().unwrap();
            edges_at[top].push(tuple.iter().map(|&i| 1u32 << i).sum());
        }
    }
    let mut ok = vec![false; 1usize << v];
    ok[0] = true;
    let mut best = NaiveMax { optimum: 0, count: 0 };
    for mask in 0u32..(1u32 << v) {
        if mask != 0 {
            let top = 31 - mask.leading_zeros() as usize;
            let rest = mask & !(1 << top);
            ok[mask as usize] = ok[rest as usize] && edges_at[top].iter().all(|e| e & mask != *e);
        }
        if !ok[mask as usize] {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size < best.optimum {
            continue;
        }
        let members: Vec<u64> = (0..v).filter(|i| mask & (1 << i) != 0).map(|i| pool[i]).collect();
        if stable && !naive_stable(n, &members) {
            continue;
        }
        if nonintersecting && !members.iter().tuple_combinations().any(|(a, b)| a & b == 0) {
            continue;
        }
        if size > best.optimum {
            best = NaiveMax { optimum: size, count: 0 };
        }
        best.count += 1;
    }
    best
}

fn naive_stable(n: usize, members: &[u64]) -> bool {
    (1..=n).all(|i| (i + 1..=n).all(|j| members.iter().all(|&a| naive_shift(a, members, i, j) == a)))
}

/// A random search instance with at most 25 candidate sets.
pub fn random_small_instance(rng: &mut impl Rng) -> SearchRequest {
    loop {
        let n = rng.gen_range(2..=7);
        let pool = match rng.gen_range(0..3) {
            0 => VertexPool::Uniform { k: rng.gen_range(1..=n) },
            1 => VertexPool::UpTo { u: rng.gen_range(0..=n) },
            _ => VertexPool::PowerSet,
        };
        // keep most cases quick; a few reach the 25-vertex ceiling
        let limit = if rng.gen_bool(0.05) { 25 } else { 18 };
        if pool.size(n) > limit || pool.size(n) < 2 {
            continue;
        }
        let d = rng.gen_range(2..=4);
        let s = rng.gen_range(0..=n);
        let t = rng.gen_range(1..=2);
        let mut req = SearchRequest::new(n, pool, cp(d, s, t));
        req.constraints.require_stable = rng.gen_bool(0.2);
        req.constraints.require_nonintersecting = rng.gen_bool(0.2);
        return req;
    }
}

pub fn check_search_matches_naive(req: &SearchRequest) -> Check {
    let pool: Vec<u64> = req.pool.vertices(req.n).unwrap().iter().map(|m| m.bits()).collect();
    let c = &req.constraints;
    let naive = naive_max_family(req.n, &pool, req.params, c.require_stable, c.require_nonintersecting);
    let opts = SearchOptions { threads: Some(1), ..SearchOptions::default() };
    let got = solve(req, &opts).map_err(|e| format!("{req:?}: {e}"))?;
    if got.optimum != naive.optimum {
        return Err(format!("{req:?}: search {} vs naive {}", got.optimum, naive.optimum));
    }
    if !got.truncated && got.solutions.len() != naive.count {
        return Err(format!(
            "{req:?}: {} labeled optima vs naive {}",
            got.solutions.len(),
            naive.count
        ));
    }
    for f in &got.solutions {
        if f.len() != got.optimum || !naive_ci(&masks(f), req.params.d, req.params.s, req.params.t) {
            return Err(format!("{req:?}: reported {f} is not a feasible optimum"));
        }
        if c.require_stable && !is_stable(f) {
            return Err(format!("{req:?}: reported {f} is not stable"));
        }
    }
    Ok(())
}

/// A random instance where the star is feasible: `t = 1`, `k`-uniform pool
/// of at most 25 sets and `k <= n - 1`.
pub fn random_star_instance(rng: &mut impl Rng) -> (SearchRequest, usize) {
    loop {
        let n = rng.gen_range(3..=7);
        let k = rng.gen_range(1..n);
        if binomial(n, k) > 25 {
            continue;
        }
        let d = rng.gen_range(2..=4);
        let s = rng.gen_range(0..=n);
        let mut req = SearchRequest::new(n, VertexPool::Uniform { k }, cp(d, s, 1));
        let center = rng.gen_range(1..=n);
        req.hints.push(star(n, k, center).unwrap());
        return (req, center);
    }
}

pub fn check_star_lower_bound(req: &SearchRequest, center: usize) -> Check {
    let VertexPool::Uniform { k } = req.pool else { unreachable!() };
    let st = star(req.n, k, center).unwrap();
    if st.len() as u128 != binomial(req.n - 1, k - 1) {
        return Err(format!("star({}, {k}, {center}) has {} members", req.n, st.len()));
    }
    if !naive_ci(&masks(&st), req.params.d, req.params.s, 1) {
        return Err(format!("star({}, {k}, {center}) violates {:?}", req.n, req.params));
    }
    let opts = SearchOptions { threads: Some(1), ..SearchOptions::default() };
    let got = solve(req, &opts).map_err(|e| e.to_string())?;
    if (got.optimum as u128) < binomial(req.n - 1, k - 1) {
        return Err(format!("{req:?}: optimum {} below the star", got.optimum));
    }
    Ok(())
}

// ---- partitions ----

/// Every set partition of `[n]` into at most `max_parts` blocks, blocks in
/// order of their least element.
pub fn set_partitions(n: usize, max_parts: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(e: usize, n: usize, max: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if e > n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(e);
            go(e + 1, n, max, cur, out);
            cur[b].pop();
        }
        if cur.len() < max {
            cur.push(vec![e]);
            go(e + 1, n, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Threshold vectors of length `r` with entries summing to at most `k`.
pub fn threshold_vectors(r: usize, k: usize) -> Vec<Vec<usize>> {
    (0..r).map(|_| 0..=k).multi_cartesian_product().filter(|v| v.iter().sum::<usize>() <= k).collect()
}
