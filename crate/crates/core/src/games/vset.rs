use std::fmt;

const WORDS: usize = 8;

/// Largest vertex count the bitset solvers accept.
pub const MAX_VERTICES: usize = WORDS * 64;

/// Fixed-width vertex bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VSet([u64; WORDS]);

impl VSet {
    pub const EMPTY: VSet = VSet([0; WORDS]);

    pub fn full(n: usize) -> VSet {
        let mut s = VSet::EMPTY;
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn singleton(i: usize) -> VSet {
        let mut s = VSet::EMPTY;
        s.insert(i);
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    pub fn with(mut self, i: usize) -> VSet {
        self.insert(i);
        self
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn union(&self, o: &VSet) -> VSet {
        VSet(std::array::from_fn(|i| self.0[i] | o.0[i]))
    }

    pub fn intersection(&self, o: &VSet) -> VSet {
        VSet(std::array::from_fn(|i| self.0[i] & o.0[i]))
    }

    pub fn difference(&self, o: &VSet) -> VSet {
        VSet(std::array::from_fn(|i| self.0[i] & !o.0[i]))
    }

    pub fn intersects(&self, o: &VSet) -> bool {
        self.0.iter().zip(&o.0).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, o: &VSet) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    /// Size of `self \ o` without materializing it.
    pub fn missing_from(&self, o: &VSet) -> usize {
        self.0.iter().zip(&o.0).map(|(a, b)| (a & !b).count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
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
}

impl fmt::Debug for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = VSet::singleton(3).with(70).with(300);
        assert_eq!(a.len(), 3);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![3, 70, 300]);
        let b = VSet::singleton(70);
        assert!(b.is_subset(&a));
        assert_eq!(a.missing_from(&b), 2);
        assert_eq!(a.difference(&b).first(), Some(3));
        assert!(VSet::full(0).is_empty());
        assert_eq!(VSet::full(130).len(), 130);
    }
}
