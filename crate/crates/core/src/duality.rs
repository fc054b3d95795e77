//! The involution between `(i,j)`-unstable and `(j,i)`-unstable `d`-set
//! subfamilies.
//!
//! For an `(i,j)`-unstable subfamily `A` split into moved, anchored and
//! untouched sets, let `G` be the anchored sets whose swap `(A - i) ∪ j` is in
//! the family and `G'` those swaps. Then
//!
//! ```text
//! B = moved ∪ untouched ∪ (anchored - G) ∪ G'
//! ```
//!
//! is `(j,i)`-unstable, and the same construction with `(j,i)` maps `B` back
//! to `A`. This requires a nonempty untouched part.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{SetFamily, ShiftPair};
use crate::predicates::{
    check_unstable_characterization, partition_unstable_family, ConditionParams,
    UnstablePartition,
};
use crate::set::ElementSet;

/// Hypothesis the map needs, in the notation of the partition.
pub const UNTOUCHED_HYPOTHESIS: &str = "suppose that A_{īj̄} ≠ ∅";

/// One application of the map with every intermediate set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityTrace {
    pub input: Vec<ElementSet>,
    #[serde(serialize_with = "ser_pair")]
    pub pair: ShiftPair,
    pub params: ConditionParams,
    pub partition: UnstablePartition,
    /// Anchored sets fixed by the reverse shift.
    pub g: Vec<ElementSet>,
    /// Their swaps `(A - i) ∪ j`.
    pub g_prime: Vec<ElementSet>,
    pub output: Vec<ElementSet>,
}

fn ser_pair<S: serde::Serializer>(p: &ShiftPair, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq([p.i, p.j])
}

fn sorted(mut v: Vec<ElementSet>) -> Vec<ElementSet> {
    v.sort_unstable();
    v
}

/// Maps an `(i,j)`-unstable subfamily to its `(j,i)`-unstable partner.
///
/// Fails with an argument error when `subfamily` is not `(i,j)`-unstable and
/// with a capability error when no member avoids both `i` and `j`.
pub fn duality_forward(
    subfamily: &[ElementSet],
    family: &SetFamily,
    pair: ShiftPair,
    params: ConditionParams,
) -> Result<DualityTrace> {
    if !check_unstable_characterization(subfamily, family, pair, params)? {
        return Err(Error::argument(format!(
            "subfamily is not {pair}-unstable for ({},{},{})",
            params.d, params.s, params.t
        )));
    }
    let partition = partition_unstable_family(subfamily, family, pair)?;
    if partition.untouched.is_empty() {
        return Err(Error::capability(format!(
            "hypothesis unmet: {UNTOUCHED_HYPOTHESIS} (every member contains {} or {})",
            pair.i, pair.j
        )));
    }
    let (i, j) = (pair.i, pair.j);
    let (g, kept): (Vec<ElementSet>, Vec<ElementSet>) = partition
        .anchored
        .iter()
        .partition(|a| family.contains(&a.swap_element(i, j)));
    let g_prime = sorted(g.iter().map(|a| a.swap_element(i, j)).collect());

    let mut output = Vec::with_capacity(subfamily.len());
    output.extend(&partition.moved);
    output.extend(&partition.untouched);
    output.extend(&kept);
    output.extend(&g_prime);
    let output = sorted(output);

    let trace = DualityTrace {
        input: sorted(subfamily.to_vec()),
        pair,
        params,
        g,
        g_prime,
        output,
        partition,
    };
    check_forward(&trace, family)?;
    Ok(trace)
}

fn check_forward(trace: &DualityTrace, family: &SetFamily) -> Result<()> {
    let out = &trace.output;
    if out.len() != trace.input.len() || out.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invariant("image does not have d distinct sets"));
    }
    if let Some(b) = out.iter().find(|b| !family.contains(b)) {
        return Err(Error::invariant(format!("image member {b} is not in the family")));
    }
    if trace.g.len() == trace.partition.anchored.len() {
        return Err(Error::invariant("every anchored set is fixed by the reverse shift"));
    }
    if !check_unstable_characterization(out, family, trace.pair.reversed(), trace.params)? {
        return Err(Error::invariant(format!(
            "image is not {}-unstable",
            trace.pair.reversed()
        )));
    }
    Ok(())
}

/// The reverse map applied to a `(j,i)`-unstable subfamily, as a trace whose
/// `g` and `g_prime` are the reverse construction's fixed sets and swaps.
pub fn duality_inverse_trace(
    image: &[ElementSet],
    family: &SetFamily,
    pair: ShiftPair,
    params: ConditionParams,
) -> Result<DualityTrace> {
    duality_forward(image, family, pair.reversed(), params)
}

/// Recovers the `(i,j)`-unstable subfamily from its image under
/// [`duality_forward`] with pair `(i,j)`.
pub fn duality_inverse(
    image: &[ElementSet],
    family: &SetFamily,
    pair: ShiftPair,
    params: ConditionParams,
) -> Result<Vec<ElementSet>> {
    Ok(duality_inverse_trace(image, family, pair, params)?.output)
}

/// Forward trace, inverse trace and the named identities linking them.
#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    pub forward: DualityTrace,
    pub inverse: DualityTrace,
    pub identities: Vec<(String, bool)>,
}

impl RoundTrip {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|(_, ok)| *ok)
    }
}

fn minus(a: &[ElementSet], b: &[ElementSet]) -> Vec<ElementSet> {
    a.iter().filter(|x| !b.contains(x)).copied().collect()
}

fn plus(a: &[ElementSet], b: &[ElementSet]) -> Vec<ElementSet> {
    sorted(a.iter().chain(b).copied().collect())
}

/// Runs the map both ways and evaluates every identity between the two
/// traces: the reverse partition's moved part is `anchored - G`, its
/// anchored part is `moved ∪ G'`, the untouched part is shared, `H = G'`,
/// `H' = G`, and the round trip returns the input.
pub fn round_trip(
    subfamily: &[ElementSet],
    family: &SetFamily,
    pair: ShiftPair,
    params: ConditionParams,
) -> Result<RoundTrip> {
    let forward = duality_forward(subfamily, family, pair, params)?;
    let inverse = duality_inverse_trace(&forward.output, family, pair, params)?;
    let (fp, ip) = (&forward.partition, &inverse.partition);
    let identities = vec![
        ("reverse moved = anchored - G", ip.moved == minus(&fp.anchored, &forward.g)),
        ("reverse anchored = moved ∪ G'", ip.anchored == plus(&fp.moved, &forward.g_prime)),
        ("reverse untouched = untouched", ip.untouched == fp.untouched),
        ("H = G'", inverse.g == forward.g_prime),
        ("H' = G", inverse.g_prime == forward.g),
        ("inverse(forward(A)) = A", inverse.output == forward.input),
    ]
    .into_iter()
    .map(|(name, ok)| (name.to_string(), ok))
    .collect();
    Ok(RoundTrip { forward, inverse, identities })
}
