use alloc::vec;
use alloc::vec::Vec;

/// Activation pattern of one edge (or vertex) over timesteps `1..=len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Activation {
    words: Vec<u64>,
    len: usize,
}

impl Activation {
    pub fn new(len: usize) -> Self {
        Activation {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_timesteps(len: usize, timesteps: impl IntoIterator<Item = usize>) -> Self {
        let mut a = Activation::new(len);
        for t in timesteps {
            a.set(t);
        }
        a
    }

    /// Number of timesteps covered.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Marks timestep `t` (1-based) active. Panics if `t` is outside `1..=len`.
    pub fn set(&mut self, t: usize) {
        assert!(t >= 1 && t <= self.len, "timestep {t} outside [1, {}]", self.len);
        let i = t - 1;
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// `false` for any `t` outside `1..=len`.
    #[inline]
    pub fn is_active(&self, t: usize) -> bool {
        if t == 0 || t > self.len {
            return false;
        }
        let i = t - 1;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Smallest active timestep `>= from`.
    pub fn next_active(&self, from: usize) -> Option<usize> {
        let from = from.max(1);
        if from > self.len {
            return None;
        }
        let i = from - 1;
        let mut w = i / 64;
        let mut word = self.words[w] & (!0u64 << (i % 64));
        loop {
            if word != 0 {
                let t = w * 64 + word.trailing_zeros() as usize + 1;
                return (t <= self.len).then_some(t);
            }
            w += 1;
            if w >= self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Activity flags for timesteps `1..=len` in order.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.len).map(move |t| self.is_active(t))
    }

    /// Active timesteps in increasing order.
    pub fn timesteps(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.len).filter(move |&t| self.is_active(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn next_active_crosses_words() {
        let a = Activation::from_timesteps(200, [3, 64, 65, 130]);
        assert_eq!(a.next_active(0), Some(3));
        assert_eq!(a.next_active(4), Some(64));
        assert_eq!(a.next_active(65), Some(65));
        assert_eq!(a.next_active(66), Some(130));
        assert_eq!(a.next_active(131), None);
        assert_eq!(a.next_active(500), None);
        assert_eq!(a.count(), 4);
    }

    #[test]
    fn out_of_range_is_inactive() {
        let a = Activation::from_timesteps(5, 1..=5);
        assert!(!a.is_active(0));
        assert!(!a.is_active(6));
        assert!(a.is_active(5));
    }
}
