use std::fmt;

use super::BinmatError;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A `t x n` binary matrix in row-major packed storage.
///
/// Rows and columns are 0-indexed in this API. Column `j` is read as the
/// characteristic vector of block `j` of a set system over `{0, .., t-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BinaryMatrix {
    /// All-zero matrix. Both dimensions must be at least 1.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self, BinmatError> {
        if rows == 0 || cols == 0 {
            return Err(BinmatError::EmptyDimension { rows, cols });
        }
        let stride = words_for(cols);
        let len = rows.checked_mul(stride).ok_or(BinmatError::SizeOverflow)?;
        Ok(BinaryMatrix {
            rows,
            cols,
            stride,
            bits: vec![0; len],
        })
    }

    pub fn identity(k: usize) -> Result<Self, BinmatError> {
        let mut m = Self::zeros(k, k)?;
        for i in 0..k {
            m.set(i, i, true);
        }
        Ok(m)
    }

    /// Builds a matrix from row vectors of 0/1 bytes.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, BinmatError> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut m = Self::zeros(rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(BinmatError::RaggedRows {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => m.set(i, j, true),
                    other => {
                        return Err(BinmatError::NotBinary {
                            row: i,
                            col: j,
                            value: other,
                        })
                    }
                }
            }
        }
        Ok(m)
    }

    /// Incidence matrix of a set system: column `j` is the characteristic
    /// vector of `blocks[j]` over `{0, .., ground_size-1}`.
    pub fn from_blocks(ground_size: usize, blocks: &[Vec<usize>]) -> Result<Self, BinmatError> {
        let mut m = Self::zeros(ground_size, blocks.len())?;
        for (j, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= ground_size {
                    return Err(BinmatError::ElementOutOfRange {
                        element: x,
                        ground_size,
                    });
                }
                m.set(x, j, true);
            }
        }
        Ok(m)
    }

    /// The set system view: one sorted block per column.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        (0..self.cols)
            .map(|j| (0..self.rows).filter(|&i| self.get(i, j)).collect())
            .collect()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Total number of entries, `rows * cols`.
    pub fn bit_len(&self) -> usize {
        self.rows * self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(
            row < self.rows && col < self.cols,
            "index ({row}, {col}) out of bounds"
        );
        let w = self.bits[row * self.stride + col / WORD];
        (w >> (col % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(
            row < self.rows && col < self.cols,
            "index ({row}, {col}) out of bounds"
        );
        let w = &mut self.bits[row * self.stride + col / WORD];
        let mask = 1u64 << (col % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Packed words of row `i`; bits past `cols` are always zero.
    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// Row `i` as a vector of bools.
    pub fn row(&self, i: usize) -> Vec<bool> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    /// Number of ones in row `i` among the first `prefix` columns.
    pub fn row_weight_prefix(&self, i: usize, prefix: usize) -> usize {
        let prefix = prefix.min(self.cols);
        let words = self.row_words(i);
        let full = prefix / WORD;
        let mut total: usize = words[..full].iter().map(|w| w.count_ones() as usize).sum();
        let rem = prefix % WORD;
        if rem > 0 {
            total += (words[full] & ((1u64 << rem) - 1)).count_ones() as usize;
        }
        total
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_weight_prefix(i, self.cols)
    }

    pub fn col_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    /// Whether rows `i` of `self` and `k` of `other` agree on the first `prefix` columns.
    pub fn row_prefix_eq(&self, i: usize, other: &BinaryMatrix, k: usize, prefix: usize) -> bool {
        assert!(prefix <= self.cols && prefix <= other.cols);
        let a = self.row_words(i);
        let b = other.row_words(k);
        let full = prefix / WORD;
        if a[..full] != b[..full] {
            return false;
        }
        let rem = prefix % WORD;
        rem == 0 || (a[full] ^ b[full]) & ((1u64 << rem) - 1) == 0
    }

    /// Column-major packed view: `out[j]` holds column `j` as row bits.
    pub fn column_bitsets(&self) -> Vec<Vec<u64>> {
        let words = words_for(self.rows);
        let mut out = vec![vec![0u64; words]; self.cols];
        for i in 0..self.rows {
            for (j, col) in out.iter_mut().enumerate() {
                if self.get(i, j) {
                    col[i / WORD] |= 1u64 << (i % WORD);
                }
            }
        }
        out
    }

    /// The submatrix made of the first `n` columns.
    pub fn first_cols(&self, n: usize) -> Result<Self, BinmatError> {
        if n > self.cols {
            return Err(BinmatError::DimensionMismatch(format!(
                "requested {n} columns of a matrix with {}",
                self.cols
            )));
        }
        self.select_cols(&(0..n).collect::<Vec<_>>())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Result<Self, BinmatError> {
        let mut m = Self::zeros(self.rows, cols.len())?;
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                if self.get(i, j) {
                    m.set(i, jj, true);
                }
            }
        }
        Ok(m)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Result<Self, BinmatError> {
        let mut m = Self::zeros(rows.len(), self.cols)?;
        for (ii, &i) in rows.iter().enumerate() {
            m.bits[ii * m.stride..(ii + 1) * m.stride].copy_from_slice(self.row_words(i));
        }
        Ok(m)
    }

    /// Each row repeated `copies` times in place: rows `r, r, .., r+1, r+1, ..`.
    pub fn repeat_rows(&self, copies: usize) -> Result<Self, BinmatError> {
        let order: Vec<usize> = (0..self.rows)
            .flat_map(|i| std::iter::repeat_n(i, copies))
            .collect();
        self.select_rows(&order)
    }

    /// Whether the upper-left `other.rows x other.cols` corner equals `other`.
    pub fn has_upper_left(&self, other: &BinaryMatrix) -> bool {
        other.rows <= self.rows
            && other.cols <= self.cols
            && (0..other.rows).all(|i| self.row_prefix_eq(i, other, i, other.cols))
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}
