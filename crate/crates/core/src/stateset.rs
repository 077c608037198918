use std::fmt;

/// Fixed-capacity bitset over presentation states.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    capacity: usize,
    bits: Vec<u64>,
}

impl StateSet {
    pub fn empty(capacity: usize) -> Self {
        Self {
            capacity,
            bits: vec![0; capacity.div_ceil(64)],
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        for i in 0..capacity {
            s.insert(i);
        }
        s
    }

    pub fn singleton(capacity: usize, state: usize) -> Self {
        let mut s = Self::empty(capacity);
        s.insert(state);
        s
    }

    pub fn from_states(capacity: usize, states: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(capacity);
        for q in states {
            s.insert(q);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, q: usize) {
        debug_assert!(q < self.capacity);
        self.bits[q / 64] |= 1 << (q % 64);
    }

    pub fn contains(&self, q: usize) -> bool {
        q < self.capacity && self.bits[q / 64] & (1 << (q % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.capacity).filter(move |&q| self.contains(q))
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            capacity: self.capacity,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            capacity: self.capacity,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = StateSet::from_states(70, [1, 65]);
        let b = StateSet::from_states(70, [1, 2]);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![1]);
        assert_eq!(a.union(&b).len(), 3);
        assert!(StateSet::singleton(70, 65).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(StateSet::full(70).len(), 70);
    }
}
