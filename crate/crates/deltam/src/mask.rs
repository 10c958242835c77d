use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor};

/// A subset of the ground set, packed into a 16-bit mask.
///
/// Elements are labeled `1..=16` and element `e` occupies bit `e - 1`, so
/// the symmetric difference of two subsets is the XOR of their masks.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(u16);

impl SubsetMask {
    /// The empty subset.
    pub const EMPTY: SubsetMask = SubsetMask(0);

    #[inline]
    pub fn from_bits(bits: u16) -> Self {
        SubsetMask(bits)
    }

    #[inline]
    pub fn bits(self) -> u16 {
        self.0
    }

    /// The subset containing exactly the element `e`.
    #[inline]
    pub fn singleton(e: u8) -> Self {
        debug_assert!((1..=16).contains(&e));
        SubsetMask(1 << (e - 1))
    }

    /// The full ground set `{1, ..., n}`.
    #[inline]
    pub fn full(n: u8) -> Self {
        debug_assert!(n <= 16);
        if n == 0 {
            SubsetMask(0)
        } else {
            SubsetMask(u16::MAX >> (16 - u32::from(n)))
        }
    }

    pub fn from_elements(elements: &[u8]) -> Self {
        elements.iter().fold(SubsetMask::EMPTY, |m, &e| m.with(e))
    }

    #[inline]
    pub fn contains(self, e: u8) -> bool {
        debug_assert!((1..=16).contains(&e));
        self.0 >> (e - 1) & 1 == 1
    }

    #[inline]
    pub fn with(self, e: u8) -> Self {
        self | SubsetMask::singleton(e)
    }

    #[inline]
    pub fn without(self, e: u8) -> Self {
        SubsetMask(self.0 & !SubsetMask::singleton(e).0)
    }

    #[inline]
    pub fn toggled(self, e: u8) -> Self {
        self ^ SubsetMask::singleton(e)
    }

    /// Number of elements in the subset.
    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when no element above `n` is present.
    #[inline]
    pub fn fits_within(self, n: u8) -> bool {
        self.is_subset_of(SubsetMask::full(n))
    }

    /// Smallest element lying outside `1..=n`, if any.
    pub fn first_outside(self, n: u8) -> Option<u8> {
        let excess = self.0 & !SubsetMask::full(n).0;
        (excess != 0).then(|| excess.trailing_zeros() as u8 + 1)
    }

    /// Elements in ascending order, 1-based.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }
}

impl BitXor for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn bitxor(self, rhs: Self) -> Self {
        SubsetMask(self.0 ^ rhs.0)
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn bitand(self, rhs: Self) -> Self {
        SubsetMask(self.0 & rhs.0)
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn bitor(self, rhs: Self) -> Self {
        SubsetMask(self.0 | rhs.0)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Iterator over the elements of a [`SubsetMask`], ascending.
#[derive(Clone)]
pub struct Elements(u16);

impl Iterator for Elements {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as u8 + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }
}
