//! Grid diagram representations.
//!
//! A grid diagram of size `n` places one X and one O marker in every row and
//! column of an `n x n` grid. Rows are numbered top to bottom and columns left
//! to right. Internally every index is 0-based; the textual forms (grid
//! notation, vertlist notation, permutations) are 1-based.
//!
//! Three equivalent views are provided:
//!
//! * [`MarkerList`]: the unoriented marker positions as `(column, row)` pairs.
//! * [`VertList`]: one oriented vertical segment per column, `(tail_row, head_row)`.
//!   This is the working representation for everything else in the crate.
//! * [`HorzList`]: one oriented horizontal segment per row, `(tail_col, head_col)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest grid size accepted anywhere in the crate.
pub const MAX_GRID_SIZE: usize = 128;

/// Unoriented marker positions in grid notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkerList {
    size: usize,
    /// `(column, row)`, 0-based, sorted.
    markers: Vec<(usize, usize)>,
}

impl MarkerList {
    /// Builds a marker list from 0-based `(column, row)` pairs.
    pub fn new(mut markers: Vec<(usize, usize)>) -> Result<Self> {
        if !markers.len().is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "odd number of markers ({})",
                markers.len()
            )));
        }
        let size = markers.len() / 2;
        if size == 0 {
            return Err(Error::invalid("empty diagram"));
        }
        if size > MAX_GRID_SIZE {
            return Err(Error::invalid(format!(
                "grid size {size} exceeds {MAX_GRID_SIZE}"
            )));
        }
        markers.sort_unstable();
        if let Some(w) = markers.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!(
                "duplicate marker at column {}, row {}",
                w[0].0 + 1,
                w[0].1 + 1
            )));
        }
        let mut col_count = vec![0usize; size];
        let mut row_count = vec![0usize; size];
        for &(c, r) in &markers {
            if c >= size || r >= size {
                return Err(Error::invalid(format!(
                    "marker ({}, {}) outside a grid of size {size}",
                    c + 1,
                    r + 1
                )));
            }
            col_count[c] += 1;
            row_count[r] += 1;
        }
        if let Some(c) = col_count.iter().position(|&k| k != 2) {
            return Err(Error::invalid(format!(
                "column {} holds {} markers",
                c + 1,
                col_count[c]
            )));
        }
        if let Some(r) = row_count.iter().position(|&k| k != 2) {
            return Err(Error::invalid(format!(
                "row {} holds {} markers",
                r + 1,
                row_count[r]
            )));
        }
        Ok(MarkerList { size, markers })
    }

    /// Builds a marker list from 1-based `(column, row)` pairs.
    pub fn from_one_based(pairs: &[(usize, usize)]) -> Result<Self> {
        let markers = pairs
            .iter()
            .map(|&(c, r)| {
                if c == 0 || r == 0 {
                    Err(Error::invalid("grid notation is 1-based"))
                } else {
                    Ok((c - 1, r - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(markers)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Sorted 0-based `(column, row)` pairs.
    pub fn markers(&self) -> &[(usize, usize)] {
        &self.markers
    }

    /// Mirrors row indices `r -> n - 1 - r`.
    pub fn row_flipped(&self) -> MarkerList {
        let n = self.size;
        let mut markers: Vec<_> = self.markers.iter().map(|&(c, r)| (c, n - 1 - r)).collect();
        markers.sort_unstable();
        MarkerList { size: n, markers }
    }

    /// Orients the diagram as a single closed curve.
    ///
    /// The traversal starts in column 1 with the tail at the lower of its two
    /// markers (the larger row index). Fails if the diagram is a link with more
    /// than one component.
    pub fn to_vertlist(&self) -> Result<VertList> {
        let n = self.size;
        let mut col_rows = vec![Vec::with_capacity(2); n];
        let mut row_cols = vec![Vec::with_capacity(2); n];
        for &(c, r) in &self.markers {
            col_rows[c].push(r);
            row_cols[r].push(c);
        }
        let mut segs: Vec<Option<Segment>> = vec![None; n];
        let mut col = 0;
        let mut tail = col_rows[0][0].max(col_rows[0][1]);
        for _ in 0..n {
            if segs[col].is_some() {
                break;
            }
            let head = if col_rows[col][0] == tail {
                col_rows[col][1]
            } else {
                col_rows[col][0]
            };
            segs[col] = Some(Segment::new(tail, head));
            let next = if row_cols[head][0] == col {
                row_cols[head][1]
            } else {
                row_cols[head][0]
            };
            col = next;
            tail = head;
        }
        let visited = segs.iter().filter(|s| s.is_some()).count();
        if visited != n {
            return Err(Error::invalid(format!(
                "diagram is a link: the component through column 1 visits {visited} of {n} columns"
            )));
        }
        Ok(VertList {
            segs: segs.into_iter().map(|s| s.expect("all visited")).collect(),
        })
    }
}

impl FromStr for MarkerList {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tuples = parse_tuples(s)?;
        let mut pairs = Vec::with_capacity(tuples.len());
        for t in tuples {
            if t.len() != 2 {
                return Err(Error::parse(
                    0,
                    format!("expected pairs, found a {}-tuple", t.len()),
                ));
            }
            pairs.push((t[0], t[1]));
        }
        if pairs.len() % 2 != 0 {
            return Err(Error::invalid(format!(
                "odd number of markers ({})",
                pairs.len()
            )));
        }
        Self::from_one_based(&pairs)
    }
}

impl fmt::Display for MarkerList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pairs(f, self.markers.iter().copied())
    }
}

/// One oriented segment; both endpoints are 0-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    tail: u8,
    head: u8,
}

impl Segment {
    #[inline]
    pub(crate) fn new(tail: usize, head: usize) -> Self {
        debug_assert!(tail < 256 && head < 256);
        Segment {
            tail: tail as u8,
            head: head as u8,
        }
    }

    #[inline]
    pub fn tail(self) -> usize {
        self.tail as usize
    }

    #[inline]
    pub fn head(self) -> usize {
        self.head as usize
    }

    /// `(min, max)` of the endpoints.
    #[inline]
    pub fn span(self) -> (usize, usize) {
        let (a, b) = (self.tail(), self.head());
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    }

    #[inline]
    pub fn reversed(self) -> Self {
        Segment {
            tail: self.head,
            head: self.tail,
        }
    }
}

/// A knot grid diagram as `n` oriented vertical segments.
///
/// Segment `i` lives in column `i` and runs from row `tail` to row `head`.
/// Every row is the tail of exactly one segment and the head of exactly one,
/// and following segments through rows visits every column once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertList {
    segs: Vec<Segment>,
}

impl VertList {
    /// Builds a vertlist from 0-based `(tail_row, head_row)` pairs.
    pub fn new(pairs: &[(usize, usize)]) -> Result<Self> {
        let n = pairs.len();
        if n == 0 {
            return Err(Error::invalid("empty diagram"));
        }
        if n > MAX_GRID_SIZE {
            return Err(Error::invalid(format!(
                "grid size {n} exceeds {MAX_GRID_SIZE}"
            )));
        }
        if let Some(&(t, h)) = pairs.iter().find(|&&(t, h)| t >= n || h >= n) {
            return Err(Error::invalid(format!(
                "segment ({}, {}) outside a grid of size {n}",
                t + 1,
                h + 1
            )));
        }
        let v = VertList {
            segs: pairs.iter().map(|&(t, h)| Segment::new(t, h)).collect(),
        };
        v.validate()?;
        Ok(v)
    }

    /// Builds a vertlist from 1-based `(tail_row, head_row)` pairs.
    pub fn from_one_based(pairs: &[(usize, usize)]) -> Result<Self> {
        if pairs.iter().any(|&(t, h)| t == 0 || h == 0) {
            return Err(Error::invalid("vertlist notation is 1-based"));
        }
        let zero: Vec<_> = pairs.iter().map(|&(t, h)| (t - 1, h - 1)).collect();
        Self::new(&zero)
    }

    pub(crate) fn from_segments_unchecked(segs: Vec<Segment>) -> Self {
        let v = VertList { segs };
        debug_assert!(v.validate().is_ok(), "invalid vertlist {v}");
        v
    }

    fn validate(&self) -> Result<()> {
        let n = self.segs.len();
        let mut tail_of_row = vec![usize::MAX; n];
        let mut head_seen = vec![false; n];
        for (i, s) in self.segs.iter().enumerate() {
            if s.tail == s.head {
                return Err(Error::invalid(format!(
                    "segment {} has equal endpoints",
                    i + 1
                )));
            }
            if tail_of_row[s.tail()] != usize::MAX {
                return Err(Error::invalid(format!(
                    "row {} is the tail of two segments",
                    s.tail() + 1
                )));
            }
            tail_of_row[s.tail()] = i;
            if head_seen[s.head()] {
                return Err(Error::invalid(format!(
                    "row {} is the head of two segments",
                    s.head() + 1
                )));
            }
            head_seen[s.head()] = true;
        }
        // Single component: head row of a column leads to the column whose
        // tail is that row.
        let mut col = 0;
        for step in 1..=n {
            col = tail_of_row[self.segs[col].head()];
            if col == 0 {
                if step != n {
                    return Err(Error::invalid(format!(
                        "diagram is a link: the component through column 1 visits {step} of {n} columns"
                    )));
                }
                return Ok(());
            }
        }
        Err(Error::Internal("vertlist traversal did not close".into()))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.segs.len()
    }

    #[inline]
    pub fn segment(&self, col: usize) -> Segment {
        self.segs[col]
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    /// 0-based `(tail_row, head_row)` pairs.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.segs.iter().map(|s| (s.tail(), s.head())).collect()
    }

    /// Forgets the orientation.
    pub fn markers(&self) -> MarkerList {
        let mut markers = Vec::with_capacity(2 * self.size());
        for (c, s) in self.segs.iter().enumerate() {
            markers.push((c, s.tail()));
            markers.push((c, s.head()));
        }
        markers.sort_unstable();
        MarkerList {
            size: self.size(),
            markers,
        }
    }

    /// Position `(column, row)` of the X marker of a column (the head end).
    pub fn x_marker(&self, col: usize) -> (usize, usize) {
        (col, self.segs[col].head())
    }

    /// Position `(column, row)` of the O marker of a column (the tail end).
    pub fn o_marker(&self, col: usize) -> (usize, usize) {
        (col, self.segs[col].tail())
    }

    /// Orientation reversal: swaps every `(tail, head)` pair, i.e. exchanges
    /// the X and O markers.
    pub fn reversed(&self) -> VertList {
        VertList {
            segs: self.segs.iter().map(|s| s.reversed()).collect(),
        }
    }

    /// Cyclic shift of the planar realization: row `r` moves to
    /// `(r + rows) mod n`, column `c` to `(c + cols) mod n`.
    pub fn shifted(&self, rows: usize, cols: usize) -> VertList {
        let n = self.size();
        let (rows, cols) = (rows % n, cols % n);
        let mut segs = vec![Segment::new(0, 0); n];
        for (c, s) in self.segs.iter().enumerate() {
            segs[(c + cols) % n] = Segment::new((s.tail() + rows) % n, (s.head() + rows) % n);
        }
        VertList { segs }
    }

    /// Horizontal description: in row `j` the curve arrives at the column whose
    /// head is `j` and leaves through the column whose tail is `j`.
    pub fn to_horzlist(&self) -> HorzList {
        let n = self.size();
        let mut segs = vec![Segment::new(0, 0); n];
        for (c, s) in self.segs.iter().enumerate() {
            segs[s.head()].tail = c as u8;
            segs[s.tail()].head = c as u8;
        }
        HorzList { segs }
    }
}

impl FromStr for VertList {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tuples = parse_tuples(s)?;
        let mut pairs = Vec::with_capacity(tuples.len());
        for t in tuples {
            if t.len() != 2 {
                return Err(Error::parse(
                    0,
                    format!("expected pairs, found a {}-tuple", t.len()),
                ));
            }
            pairs.push((t[0], t[1]));
        }
        Self::from_one_based(&pairs)
    }
}

impl fmt::Display for VertList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pairs(f, self.segs.iter().map(|s| (s.tail(), s.head())))
    }
}

/// A knot grid diagram as `n` oriented horizontal segments; entry `j` is the
/// segment in row `j` running from column `tail` to column `head`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HorzList {
    segs: Vec<Segment>,
}

impl HorzList {
    /// Builds a horzlist from 0-based `(tail_col, head_col)` pairs.
    pub fn new(pairs: &[(usize, usize)]) -> Result<Self> {
        let n = pairs.len();
        if n == 0 || n > MAX_GRID_SIZE {
            return Err(Error::invalid(format!("unsupported grid size {n}")));
        }
        if pairs.iter().any(|&(t, h)| t >= n || h >= n) {
            return Err(Error::invalid("horizontal segment outside the grid"));
        }
        let h = HorzList {
            segs: pairs.iter().map(|&(t, h)| Segment::new(t, h)).collect(),
        };
        // The horizontal and vertical descriptions share the same closedness
        // conditions with rows and columns exchanged.
        VertList {
            segs: h.segs.clone(),
        }
        .validate()?;
        Ok(h)
    }

    pub fn size(&self) -> usize {
        self.segs.len()
    }

    pub fn segment(&self, row: usize) -> Segment {
        self.segs[row]
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    /// Inverse of [`VertList::to_horzlist`].
    pub fn to_vertlist(&self) -> VertList {
        let n = self.size();
        let mut segs = vec![Segment::new(0, 0); n];
        for (r, s) in self.segs.iter().enumerate() {
            segs[s.head()].tail = r as u8;
            segs[s.tail()].head = r as u8;
        }
        VertList::from_segments_unchecked(segs)
    }
}

impl fmt::Display for HorzList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pairs(f, self.segs.iter().map(|s| (s.tail(), s.head())))
    }
}

/// A grid state: the point on vertical line `i` sits on horizontal line
/// `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridState {
    perm: Vec<usize>,
}

impl GridState {
    /// 0-based permutation.
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidState(format!(
                    "{} is not a permutation",
                    GridState { perm: perm.clone() }
                )));
            }
            seen[p] = true;
        }
        Ok(GridState { perm })
    }

    pub fn from_one_based(perm: &[usize]) -> Result<Self> {
        if perm.contains(&0) {
            return Err(Error::InvalidState(
                "permutation notation is 1-based".into(),
            ));
        }
        Self::new(perm.iter().map(|&p| p - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        GridState {
            perm: (0..n).collect(),
        }
    }

    pub(crate) fn from_vec_unchecked(perm: Vec<usize>) -> Self {
        debug_assert!(GridState::new(perm.clone()).is_ok());
        GridState { perm }
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    /// Horizontal line of the point on vertical line `col`.
    #[inline]
    pub fn row(&self, col: usize) -> usize {
        self.perm[col]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.perm.iter().map(|&p| p + 1).collect()
    }

    pub fn inverse(&self) -> GridState {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        GridState { perm: inv }
    }

    /// The same lattice points after [`VertList::shifted`] with equal offsets.
    pub fn shifted(&self, rows: usize, cols: usize) -> GridState {
        let n = self.size();
        let mut perm = vec![0; n];
        for (c, &r) in self.perm.iter().enumerate() {
            perm[(c + cols) % n] = (r + rows) % n;
        }
        GridState { perm }
    }
}

impl FromStr for GridState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tuples = parse_tuples(s)?;
        let flat: Vec<usize> = match tuples.len() {
            1 => tuples.into_iter().next().expect("one tuple"),
            _ => return Err(Error::parse(0, "expected a single permutation tuple")),
        };
        Self::from_one_based(&flat)
    }
}

impl fmt::Display for GridState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.perm.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", p + 1)?;
        }
        f.write_str(")")
    }
}

fn write_pairs(
    f: &mut fmt::Formatter<'_>,
    pairs: impl Iterator<Item = (usize, usize)>,
) -> fmt::Result {
    for (i, (a, b)) in pairs.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "({},{})", a + 1, b + 1)?;
    }
    Ok(())
}

/// Parses a comma separated list of integer tuples written with either
/// parentheses or brackets, optionally wrapped in an outer bracket pair:
/// `(1,2),(3,4)`, `[[1,2],[3,4]]`, `[(1,2), (3,4)]`. A bare list of integers
/// such as `1,3,2` is read as a single tuple.
pub(crate) fn parse_tuples(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut p = Cursor::new(text);
    p.skip_ws();
    if p.at_end() {
        return Err(Error::parse(0, "empty input"));
    }
    let mut outer = None;
    if let Some(open @ (b'[' | b'(')) = p.peek() {
        let save = p.pos;
        p.bump();
        p.skip_ws();
        if matches!(p.peek(), Some(b'[' | b'(')) {
            outer = Some(closing(open));
        } else {
            p.pos = save;
        }
    } else {
        // Bare integers.
        let tuple = p.int_list(None)?;
        p.skip_ws();
        if !p.at_end() {
            return Err(Error::parse(p.pos, "trailing characters"));
        }
        return Ok(vec![tuple]);
    }
    let mut tuples = Vec::new();
    loop {
        p.skip_ws();
        let open = match p.peek() {
            Some(c @ (b'(' | b'[')) => c,
            _ => return Err(Error::parse(p.pos, "expected '(' or '['")),
        };
        p.bump();
        tuples.push(p.int_list(Some(closing(open)))?);
        p.skip_ws();
        match p.peek() {
            Some(b',') => {
                p.bump();
            }
            Some(c) if Some(c) == outer => {
                p.bump();
                p.skip_ws();
                if !p.at_end() {
                    return Err(Error::parse(p.pos, "trailing characters"));
                }
                return Ok(tuples);
            }
            None if outer.is_none() => return Ok(tuples),
            None => return Err(Error::parse(p.pos, "unclosed bracket")),
            Some(_) => return Err(Error::parse(p.pos, "expected ','")),
        }
    }
}

fn closing(open: u8) -> u8 {
    if open == b'(' {
        b')'
    } else {
        b']'
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::parse(start, "integer out of range"))
    }

    /// Integers separated by commas up to `close` (consumed) or end of input.
    fn int_list(&mut self, close: Option<u8>) -> Result<Vec<usize>> {
        let mut out = vec![self.int()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.bump();
                    out.push(self.int()?);
                }
                Some(c) if Some(c) == close => {
                    self.bump();
                    return Ok(out);
                }
                None if close.is_none() => return Ok(out),
                None => return Err(Error::parse(self.pos, "unclosed tuple")),
                Some(_) => return Err(Error::parse(self.pos, "unexpected character")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL_GRID: &str = "(1,1),(1,3),(2,2),(2,4),(3,3),(3,5),(4,1),(4,4),(5,2),(5,5)";

    #[test]
    fn parses_both_bracket_styles() {
        let a: MarkerList = TREFOIL_GRID.parse().unwrap();
        let b: MarkerList = "[[1,1],[1,3],[2,2],[2,4],[3,3],[3,5],[4,1],[4,4],[5,2],[5,5]]"
            .parse()
            .unwrap();
        let c: MarkerList = " [ (1, 1), (1,3),(2,2) ,(2,4),(3,3),(3,5),(4,1),(4,4),(5,2),(5,5) ] "
            .parse()
            .unwrap();
        assert_eq!(a.size(), 5);
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn unknot_marker_list() {
        let m: MarkerList = "(1,1),(1,2),(2,1),(2,2)".parse().unwrap();
        assert_eq!(m.size(), 2);
    }

    #[test]
    fn rejects_bad_grid_notation() {
        assert!(matches!(
            "(1,1),(1,2),(2,1)".parse::<MarkerList>(),
            Err(Error::InvalidDiagram(_))
        ));
        assert!(matches!(
            "(1,1),(1,1),(2,2),(2,2)".parse::<MarkerList>(),
            Err(Error::InvalidDiagram(_))
        ));
        // column 1 has three markers
        assert!("(1,1),(1,2),(1,3),(2,1),(3,2),(3,3)"
            .parse::<MarkerList>()
            .is_err());
        assert!(matches!(
            "(1,1),(1,2".parse::<MarkerList>(),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            "(1;1)".parse::<MarkerList>(),
            Err(Error::Parse { .. })
        ));
        assert!(matches!("".parse::<MarkerList>(), Err(Error::Parse { .. })));
        assert!("(0,1),(0,2),(1,1),(1,2)".parse::<MarkerList>().is_err());
    }

    #[test]
    fn trefoil_vertlist_literal() {
        let m: MarkerList = TREFOIL_GRID.parse().unwrap();
        let v = m.to_vertlist().unwrap();
        assert_eq!(v.to_string(), "(3,1),(4,2),(5,3),(1,4),(2,5)");
        assert_eq!(v.markers(), m);
    }

    #[test]
    fn unknot_vertlist() {
        let m: MarkerList = "(1,1),(1,2),(2,1),(2,2)".parse().unwrap();
        let v = m.to_vertlist().unwrap();
        let want: VertList = "(2,1),(1,2)".parse().unwrap();
        assert!(v == want || v == want.reversed());
        assert_eq!(v, want);
    }

    #[test]
    fn two_component_link_is_rejected() {
        // Two disjoint unknots on a 4x4 grid.
        let m: MarkerList = "(1,1),(1,2),(2,1),(2,2),(3,3),(3,4),(4,3),(4,4)"
            .parse()
            .unwrap();
        assert!(matches!(m.to_vertlist(), Err(Error::InvalidDiagram(_))));
        assert!("(2,1),(1,2),(4,3),(3,4)".parse::<VertList>().is_err());
    }

    #[test]
    fn vertlist_validation() {
        assert!("(1,1),(2,2)".parse::<VertList>().is_err());
        assert!("(2,1),(2,1)".parse::<VertList>().is_err());
        assert!("(2,1),(1,3)".parse::<VertList>().is_err());
    }

    #[test]
    fn rev_swaps_pairs_and_is_involution() {
        let v: VertList = "(3,1),(4,2),(5,3),(1,4),(2,5)".parse().unwrap();
        assert_eq!(v.reversed().to_string(), "(1,3),(2,4),(3,5),(4,1),(5,2)");
        assert_eq!(v.reversed().reversed(), v);
    }

    #[test]
    fn unknot_horzlist() {
        let v: VertList = "(2,1),(1,2)".parse().unwrap();
        let h = v.to_horzlist();
        assert_eq!(h.to_string(), "(1,2),(2,1)");
        assert_eq!(h.to_vertlist(), v);
    }

    #[test]
    fn trefoil_horzlist_matches_marker_rows() {
        let m: MarkerList = TREFOIL_GRID.parse().unwrap();
        let v = m.to_vertlist().unwrap();
        let h = v.to_horzlist();
        for row in 0..5 {
            let mut cols: Vec<usize> = m
                .markers()
                .iter()
                .filter(|&&(_, r)| r == row)
                .map(|&(c, _)| c)
                .collect();
            cols.sort_unstable();
            let s = h.segment(row);
            let mut got = vec![s.tail(), s.head()];
            got.sort_unstable();
            assert_eq!(got, cols, "row {}", row + 1);
        }
        assert!(HorzList::new(
            &h.segments()
                .iter()
                .map(|s| (s.tail(), s.head()))
                .collect::<Vec<_>>()
        )
        .is_ok());
    }

    #[test]
    fn row_flip_is_involution() {
        let m: MarkerList = TREFOIL_GRID.parse().unwrap();
        assert_ne!(m.row_flipped(), m);
        assert_eq!(m.row_flipped().row_flipped(), m);
    }

    #[test]
    fn grid_state_parse_and_display() {
        let s: GridState = "(1,3,4,2,5)".parse().unwrap();
        assert_eq!(s.as_slice(), &[0, 2, 3, 1, 4]);
        assert_eq!(s.to_string(), "(1,3,4,2,5)");
        assert_eq!("[2,1]".parse::<GridState>().unwrap().to_string(), "(2,1)");
        assert!("(1,1,2)".parse::<GridState>().is_err());
        assert_eq!(s.inverse().inverse(), s);
    }

    #[test]
    fn shifts_compose_to_identity() {
        let v: VertList = "(3,1),(4,2),(5,3),(1,4),(2,5)".parse().unwrap();
        assert_eq!(v.shifted(2, 3).shifted(3, 2), v);
        assert_eq!(v.shifted(5, 5), v);
        let s = GridState::from_one_based(&[1, 3, 4, 2, 5]).unwrap();
        assert_eq!(s.shifted(1, 4).shifted(4, 1), s);
    }
}
