//! Fixed-length bit vector used for extensional axioms and blackbox lists.

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut set = BitSet { len, words: vec![u64::MAX; len.div_ceil(64)] };
        set.clear_tail();
        set
    }

    /// Builds a set from the low `len` bits of `bits`.
    pub fn from_word(len: usize, bits: u64) -> Self {
        assert!(len <= 64, "from_word supports at most 64 bits");
        let mut set = BitSet { len, words: vec![bits; len.div_ceil(64)] };
        set.clear_tail();
        set
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn or(&self, other: &BitSet) -> BitSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn complement(&self) -> BitSet {
        let mut out = BitSet { len: self.len, words: self.words.iter().map(|w| !w).collect() };
        out.clear_tail();
        out
    }

    fn zip_with(&self, other: &BitSet, op: impl Fn(u64, u64) -> u64) -> BitSet {
        assert_eq!(self.len, other.len, "bitset length mismatch");
        BitSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_complement() {
        let full = BitSet::full(70);
        assert_eq!(full.count_ones(), 70);
        assert_eq!(full.complement().count_ones(), 0);
        assert_eq!(BitSet::new(70).complement(), full);
    }

    #[test]
    fn from_word_truncates() {
        let set = BitSet::from_word(3, 0xff);
        assert_eq!(set.ones().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    proptest! {
        #[test]
        fn ones_matches_get(bits in proptest::collection::vec(any::<bool>(), 0..200)) {
            let mut set = BitSet::new(bits.len());
            for (i, &b) in bits.iter().enumerate() {
                set.set(i, b);
            }
            let expected: Vec<usize> = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
            prop_assert_eq!(set.ones().collect::<Vec<_>>(), expected.clone());
            prop_assert_eq!(set.count_ones(), expected.len());
            prop_assert_eq!(set.complement().count_ones(), bits.len() - expected.len());
        }
    }
}
