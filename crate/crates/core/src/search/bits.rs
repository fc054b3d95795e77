//! Fixed-width vertex bitsets for the branch-and-bound.

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Bits<const W: usize>(pub(crate) [u64; W]);

impl<const W: usize> Bits<W> {
    pub(crate) const CAPACITY: usize = 64 * W;

    #[inline]
    pub(crate) fn empty() -> Self {
        Bits([0; W])
    }

    /// The first `n` vertices.
    pub(crate) fn prefix(n: usize) -> Self {
        let mut b = Self::empty();
        for v in 0..n {
            b.set(v);
        }
        b
    }

    pub(crate) fn from_words(words: &[u64]) -> Option<Self> {
        if words.len() > W {
            return None;
        }
        let mut b = Self::empty();
        b.0[..words.len()].copy_from_slice(words);
        Some(b)
    }

    #[inline]
    pub(crate) fn set(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub(crate) fn clear(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub(crate) fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub(crate) fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub(crate) fn and(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
        out
    }

    #[inline]
    pub(crate) fn or_assign(&mut self, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    #[inline]
    pub(crate) fn and_assign(&mut self, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }

    #[inline]
    pub(crate) fn andnot_assign(&mut self, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    #[inline]
    pub(crate) fn or(&self, other: &Self) -> Self {
        let mut out = *self;
        out.or_assign(other);
        out
    }

    #[inline]
    pub(crate) fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub(crate) fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + b)
            })
        })
    }
}
