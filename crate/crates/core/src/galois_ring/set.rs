use super::RingElem;

/// A subset of a ring of order n, stored as a bitset indexed by packed elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn new(universe: usize) -> Self {
        ElementSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn from_elements(universe: usize, elems: impl IntoIterator<Item = RingElem>) -> Self {
        let mut s = ElementSet::new(universe);
        for x in elems {
            s.insert(x);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, x: RingElem) -> bool {
        let (w, b) = (x.index() / 64, x.index() % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, x: RingElem) -> bool {
        let (w, b) = (x.index() / 64, x.index() % 64);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    pub fn contains(&self, x: RingElem) -> bool {
        x.index() < self.universe && self.words[x.index() / 64] & (1 << (x.index() % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = RingElem> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                Some(RingElem(wi as u32 * 64 + b))
            })
        })
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iterate_remove() {
        let mut s = ElementSet::new(200);
        for x in [3u32, 64, 199, 0, 64] {
            s.insert(RingElem(x));
        }
        assert_eq!(s.len(), 4);
        assert_eq!(
            s.iter().collect::<Vec<_>>(),
            vec![RingElem(0), RingElem(3), RingElem(64), RingElem(199)]
        );
        assert!(s.remove(RingElem(64)));
        assert!(!s.contains(RingElem(64)));
        assert!(!s.contains(RingElem(500)));
    }

    #[test]
    fn set_algebra() {
        let a = ElementSet::from_elements(10, [1, 2, 3].map(RingElem));
        let b = ElementSet::from_elements(10, [3, 4].map(RingElem));
        assert_eq!(a.union(&b).len(), 4);
        assert_eq!(a.intersection(&b).len(), 1);
        assert_eq!(a.difference(&b).len(), 2);
        assert!(!a.is_disjoint(&b));
        assert!(a.difference(&b).is_subset(&a));
    }
}
