use std::fmt;

/// Largest number of strands supported by the fixed-size permutation type.
pub const MAX_STRANDS: usize = 8;

/// A permutation of `1..=MAX_STRANDS`; points beyond the rank of an element are fixed.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm([u8; MAX_STRANDS]);

impl Default for Perm {
    fn default() -> Self {
        Perm::identity()
    }
}

impl Perm {
    pub const fn identity() -> Perm {
        let mut a = [0u8; MAX_STRANDS];
        let mut i = 0;
        while i < MAX_STRANDS {
            a[i] = i as u8;
            i += 1;
        }
        Perm(a)
    }

    /// The simple transposition `s_i` exchanging `i` and `i+1` (1-based).
    pub fn simple(i: usize) -> Perm {
        assert!(i >= 1 && i < MAX_STRANDS, "generator index out of range");
        let mut p = Perm::identity();
        p.0.swap(i - 1, i);
        p
    }

    /// From 1-based images.
    pub fn from_images(images: &[usize]) -> Option<Perm> {
        if images.len() > MAX_STRANDS {
            return None;
        }
        let mut p = Perm::identity();
        let mut seen = [false; MAX_STRANDS];
        for (i, &v) in images.iter().enumerate() {
            if v == 0 || v > images.len() || seen[v - 1] {
                return None;
            }
            seen[v - 1] = true;
            p.0[i] = (v - 1) as u8;
        }
        Some(p)
    }

    /// 1-based images of `1..=n`.
    pub fn images(&self, n: usize) -> Vec<usize> {
        self.0[..n].iter().map(|&v| v as usize + 1).collect()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize + 1
    }

    pub fn inverse(&self) -> Perm {
        let mut p = Perm::identity();
        for (i, &v) in self.0.iter().enumerate() {
            p.0[v as usize] = i as u8;
        }
        p
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        let mut p = Perm::identity();
        for i in 0..MAX_STRANDS {
            p.0[i] = self.0[other.0[i] as usize];
        }
        p
    }

    /// `s_i ∘ self`.
    pub fn left_simple(&self, i: usize) -> Perm {
        let mut p = *self;
        for v in p.0.iter_mut() {
            if *v as usize == i - 1 {
                *v = i as u8;
            } else if *v as usize == i {
                *v = (i - 1) as u8;
            }
        }
        p
    }

    /// `self ∘ s_i`.
    pub fn right_simple(&self, i: usize) -> Perm {
        let mut p = *self;
        p.0.swap(i - 1, i);
        p
    }

    /// Whether `len(s_i ∘ self) > len(self)`.
    pub fn left_ascent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.0[i - 1] < inv.0[i]
    }

    pub fn length(&self) -> usize {
        let mut n = 0;
        for i in 0..MAX_STRANDS {
            for j in i + 1..MAX_STRANDS {
                if self.0[i] > self.0[j] {
                    n += 1;
                }
            }
        }
        n
    }

    /// Smallest `n` such that the permutation fixes every point above `n`.
    pub fn support(&self) -> usize {
        (0..MAX_STRANDS).rev().find(|&i| self.0[i] as usize != i).map(|i| i + 1).unwrap_or(0)
    }

    /// Reduced word `[i1, .., ik]` with `self = s_i1 ∘ .. ∘ s_ik`, peeling the largest right descent first.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut w = *self;
        loop {
            let descent = (1..MAX_STRANDS).rev().find(|&i| w.0[i - 1] > w.0[i]);
            match descent {
                Some(i) => {
                    word.push(i);
                    w = w.right_simple(i);
                }
                None => break,
            }
        }
        word.reverse();
        word
    }

    /// All permutations of `1..=n`.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = vec![Perm::identity()];
        for k in 2..=n {
            let mut next = Vec::with_capacity(out.len() * k);
            for p in &out {
                let mut cur = *p;
                next.push(cur);
                for i in (1..k).rev() {
                    cur = cur.right_simple(i);
                    next.push(cur);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.support().max(1);
        write!(f, "{:?}", self.images(n))
    }
}
