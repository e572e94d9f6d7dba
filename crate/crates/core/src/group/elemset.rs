/// Bitset over the element indices of one group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet {
    words: Vec<u64>,
    len: usize,
}

impl std::fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl ElemSet {
    pub fn new(universe: usize) -> Self {
        ElemSet {
            words: vec![0; universe.div_ceil(64)],
            len: 0,
        }
    }

    pub fn from_iter(universe: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(universe);
        for x in it {
            s.insert(x);
        }
        s
    }

    pub fn full(universe: usize) -> Self {
        Self::from_iter(universe, 0..universe)
    }

    /// Returns true if `x` was not present before.
    pub fn insert(&mut self, x: usize) -> bool {
        let (w, b) = (x / 64, x % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.words[x / 64] & (1 << (x % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        ElemSet { words, len }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}
