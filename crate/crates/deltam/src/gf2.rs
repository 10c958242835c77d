//! Symmetric matrices over GF(2) and the delta-matroid of a matrix.

use std::fmt;

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::system::{set_bit, SetSystem};

/// A symmetric n-by-n matrix over GF(2), rows bit-packed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymmetricBinaryMatrix {
    n: u8,
    rows: Vec<u16>,
}

impl SymmetricBinaryMatrix {
    pub fn zero(n: u8) -> Self {
        assert!((1..=16).contains(&n));
        SymmetricBinaryMatrix {
            n,
            rows: vec![0; n as usize],
        }
    }

    pub fn identity(n: u8) -> Self {
        let mut m = Self::zero(n);
        for i in 1..=n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from explicit 0/1 entries; rejects asymmetric input.
    pub fn from_entries(entries: &[Vec<u8>]) -> Result<Self> {
        let n = entries.len() as u8;
        assert!((1..=16).contains(&n), "dimension out of range");
        let mut m = Self::zero(n);
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), n as usize, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                assert!(v <= 1, "entries must be 0 or 1");
                if v == 1 {
                    m.rows[i] |= 1 << j;
                }
            }
        }
        for i in 0..n as usize {
            for j in 0..i {
                if m.rows[i] >> j & 1 != m.rows[j] >> i & 1 {
                    return Err(Error::AsymmetricMatrix {
                        row: i as u8 + 1,
                        col: j as u8 + 1,
                    });
                }
            }
        }
        Ok(m)
    }

    /// Number of bits in the upper-triangle encoding (diagonal included).
    pub fn encoding_bits(n: u8) -> u32 {
        u32::from(n) * (u32::from(n) + 1) / 2
    }

    /// Decodes an upper-triangle encoding: bit k holds entry (i, j) for
    /// pairs i <= j ordered (1,1), (1,2), ..., (1,n), (2,2), ...
    pub fn from_encoding(n: u8, code: u32) -> Self {
        assert!(Self::encoding_bits(n) <= 32, "encoding exceeds 32 bits");
        let mut m = Self::zero(n);
        let mut k = 0;
        for i in 1..=n {
            for j in i..=n {
                if code >> k & 1 == 1 {
                    m.set(i, j, true);
                }
                k += 1;
            }
        }
        m
    }

    pub fn encoding(&self) -> u32 {
        assert!(Self::encoding_bits(self.n) <= 32, "encoding exceeds 32 bits");
        let mut code = 0u32;
        let mut k = 0;
        for i in 1..=self.n {
            for j in i..=self.n {
                if self.get(i, j) {
                    code |= 1 << k;
                }
                k += 1;
            }
        }
        code
    }

    pub fn dimension(&self) -> u8 {
        self.n
    }

    pub fn get(&self, i: u8, j: u8) -> bool {
        self.rows[(i - 1) as usize] >> (j - 1) & 1 == 1
    }

    /// Sets entry (i, j) and its mirror (j, i).
    pub fn set(&mut self, i: u8, j: u8, value: bool) {
        let (i, j) = ((i - 1) as usize, (j - 1) as usize);
        if value {
            self.rows[i] |= 1 << j;
            self.rows[j] |= 1 << i;
        } else {
            self.rows[i] &= !(1 << j);
            self.rows[j] &= !(1 << i);
        }
    }

    pub fn row_bits(&self, i: u8) -> u16 {
        self.rows[(i - 1) as usize]
    }

    /// Whether the principal submatrix indexed by `w` is invertible over
    /// GF(2). The empty submatrix counts as invertible. Rank is computed
    /// by elimination over bit-packed rows with lowest-index pivots.
    pub fn principal_invertible(&self, w: SubsetMask) -> bool {
        debug_assert!(w.fits_within(self.n));
        let wb = w.bits();
        let mut basis = [0u16; 16];
        let mut rank = 0u32;
        for i in w.elements() {
            let mut row = self.rows[(i - 1) as usize] & wb;
            while row != 0 {
                let k = row.trailing_zeros() as usize;
                if basis[k] == 0 {
                    basis[k] = row;
                    rank += 1;
                    break;
                }
                row ^= basis[k];
            }
        }
        rank == w.len()
    }

    /// The delta-matroid of the matrix: feasible sets are exactly the
    /// index sets of invertible principal submatrices. The empty set is
    /// always feasible, so the family is never empty.
    pub fn delta_matroid(&self) -> SetSystem {
        let n = self.n;
        let mut family = vec![0u64; crate::system::family_words(n)];
        for w in 0..1u32 << n {
            let mask = SubsetMask::from_bits(w as u16);
            if self.principal_invertible(mask) {
                set_bit(&mut family, mask.bits());
            }
        }
        SetSystem::from_raw(n, family)
    }
}

impl fmt::Display for SymmetricBinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            for j in 1..=self.n {
                if j > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymmetricBinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricBinaryMatrix(n={}, code={:#x})", self.n, {
            if Self::encoding_bits(self.n) <= 32 {
                self.encoding()
            } else {
                0
            }
        })
    }
}
