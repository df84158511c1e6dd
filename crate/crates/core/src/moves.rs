//! Grid moves that preserve the knot type: commutations of cyclically adjacent
//! columns or rows and X-NW stabilization, plus the canonical form used to
//! deduplicate diagrams up to cyclic shifts of the torus.

use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{Segment, VertList, MAX_GRID_SIZE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    ColumnCommute,
    RowCommute,
    StabilizeXNW,
}

/// A single move. For commutations `index` is the first member of the pair
/// `(index, index + 1 mod n)`; for stabilization it is the segment whose X end
/// is split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub index: usize,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            MoveKind::ColumnCommute => "column-commute",
            MoveKind::RowCommute => "row-commute",
            MoveKind::StabilizeXNW => "stabilize-x-nw",
        };
        write!(f, "{kind}@{}", self.index + 1)
    }
}

/// Two closed intervals can be exchanged when they are disjoint or one lies
/// strictly inside the other. Shared endpoints are rejected.
#[inline]
pub fn can_commute(a: (usize, usize), b: (usize, usize)) -> bool {
    let disjoint = a.1 < b.0 || b.1 < a.0;
    let a_inside = b.0 < a.0 && a.1 < b.1;
    let b_inside = a.0 < b.0 && b.1 < a.1;
    disjoint || a_inside || b_inside
}

/// Number of distinct cyclically adjacent pairs.
#[inline]
fn pair_count(n: usize) -> usize {
    if n == 2 {
        1
    } else {
        n
    }
}

/// Applies one commutation, or returns `None` when the pair cannot commute.
/// Stabilizations go through [`x_nw`].
pub fn apply_commutation(v: &VertList, mv: Move) -> Option<VertList> {
    let n = v.size();
    if mv.index >= n || n < 2 {
        return None;
    }
    let a = mv.index;
    let b = (a + 1) % n;
    match mv.kind {
        MoveKind::ColumnCommute => {
            if !can_commute(v.segment(a).span(), v.segment(b).span()) {
                return None;
            }
            let mut segs = v.segments().to_vec();
            segs.swap(a, b);
            Some(VertList::from_segments_unchecked(segs))
        }
        MoveKind::RowCommute => {
            let h = v.to_horzlist();
            if !can_commute(h.segment(a).span(), h.segment(b).span()) {
                return None;
            }
            Some(swap_rows(v, a, b))
        }
        MoveKind::StabilizeXNW => None,
    }
}

fn swap_rows(v: &VertList, a: usize, b: usize) -> VertList {
    let swap = |r: usize| {
        if r == a {
            b
        } else if r == b {
            a
        } else {
            r
        }
    };
    let segs = v
        .segments()
        .iter()
        .map(|s| Segment::new(swap(s.tail()), swap(s.head())))
        .collect();
    VertList::from_segments_unchecked(segs)
}

/// Calls `f` for every admissible commutation, columns first, then rows, each
/// in increasing index order. The pair `(n, 1)` is the toroidal one.
pub fn for_each_commutation(v: &VertList, mut f: impl FnMut(Move, VertList)) {
    let n = v.size();
    if n < 2 {
        return;
    }
    let pairs = pair_count(n);
    for a in 0..pairs {
        let b = (a + 1) % n;
        if can_commute(v.segment(a).span(), v.segment(b).span()) {
            let mut segs = v.segments().to_vec();
            segs.swap(a, b);
            f(
                Move {
                    kind: MoveKind::ColumnCommute,
                    index: a,
                },
                VertList::from_segments_unchecked(segs),
            );
        }
    }
    let h = v.to_horzlist();
    for a in 0..pairs {
        let b = (a + 1) % n;
        if can_commute(h.segment(a).span(), h.segment(b).span()) {
            f(
                Move {
                    kind: MoveKind::RowCommute,
                    index: a,
                },
                swap_rows(v, a, b),
            );
        }
    }
}

/// All diagrams one commutation away from `v`.
pub fn c_move(v: &VertList) -> Vec<(Move, VertList)> {
    let mut out = Vec::new();
    for_each_commutation(v, |mv, w| out.push((mv, w)));
    out
}

/// X-NW stabilization at the X marker (head end) of segment `col`.
///
/// A new column is inserted right of `col` and a new row below the X row `h`.
/// The 2x2 block that replaces the X cell has its unmarked cell in the
/// northwest, X markers in the northeast and southwest cells and an O in the
/// southeast cell. Column `col` keeps its old O and ends at the southwest X;
/// the new column `col + 1` is the length-one segment `(h + 1, h)`.
pub fn x_nw(v: &VertList, col: usize) -> Result<VertList> {
    let n = v.size();
    if col >= n {
        return Err(Error::IndexOutOfRange {
            index: col,
            size: n,
        });
    }
    if n + 1 > MAX_GRID_SIZE {
        return Err(Error::invalid(format!(
            "stabilized size {} exceeds {MAX_GRID_SIZE}",
            n + 1
        )));
    }
    let h = v.segment(col).head();
    let row = |r: usize| if r > h { r + 1 } else { r };
    let mut segs = Vec::with_capacity(n + 1);
    for (c, s) in v.segments().iter().enumerate() {
        if c == col {
            segs.push(Segment::new(row(s.tail()), h + 1));
            segs.push(Segment::new(h + 1, h));
        } else {
            segs.push(Segment::new(row(s.tail()), row(s.head())));
        }
    }
    Ok(VertList::from_segments_unchecked(segs))
}

/// Inverse of [`x_nw`]: removes the block whose left column is `col`.
pub fn destabilize_x_nw(v: &VertList, col: usize) -> Result<VertList> {
    let n = v.size();
    if col + 1 >= n {
        return Err(Error::IndexOutOfRange {
            index: col,
            size: n,
        });
    }
    let left = v.segment(col);
    let short = v.segment(col + 1);
    let h = short.head();
    if short.tail() != h + 1 || left.head() != h + 1 {
        return Err(Error::invalid(format!(
            "columns {} and {} are not an X-NW stabilization block",
            col + 1,
            col + 2
        )));
    }
    let row = |r: usize| if r > h + 1 { r - 1 } else { r };
    let mut pairs = Vec::with_capacity(n - 1);
    for (c, seg) in v.segments().iter().enumerate() {
        if c == col {
            pairs.push((row(left.tail()), h));
        } else if c != col + 1 {
            pairs.push((row(seg.tail()), row(seg.head())));
        }
    }
    VertList::new(&pairs)
}

/// Identifies a diagram up to cyclic shifts of rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalKey {
    /// Grids up to size 16: one nibble per endpoint, most significant first.
    Packed {
        size: u8,
        bits: u128,
    },
    Wide(Box<[u8]>),
}

/// Lexicographically least `(tail, head)` sequence over all `n^2` cyclic
/// shifts of the planar realization.
///
/// A shift that moves segment `s` to the first column can only be minimal if
/// it also moves that segment's tail to row 0, so only `n` candidates need to
/// be compared.
pub fn canonical_key(v: &VertList) -> CanonicalKey {
    let n = v.size();
    let segs = v.segments();
    let candidate = |s: usize| {
        let base = segs[s].tail() as isize;
        (0..n).flat_map(move |k| {
            let seg = segs[(s + k) % n];
            let t = (seg.tail() as isize - base).rem_euclid(n as isize) as u8;
            let h = (seg.head() as isize - base).rem_euclid(n as isize) as u8;
            [t, h]
        })
    };
    if n <= 16 {
        let bits = (0..n)
            .map(|s| candidate(s).fold(0u128, |acc, x| (acc << 4) | x as u128))
            .min()
            .expect("non-empty diagram");
        CanonicalKey::Packed {
            size: n as u8,
            bits,
        }
    } else {
        let best = (0..n)
            .map(|s| candidate(s).collect::<Vec<u8>>())
            .min()
            .expect("non-empty diagram");
        CanonicalKey::Wide(best.into_boxed_slice())
    }
}

/// The shift representative whose serialization is the canonical key.
pub fn canonical_form(v: &VertList) -> VertList {
    let n = v.size();
    let key = canonical_key(v);
    for s in 0..n {
        let w = v.shifted(n - v.segment(s).tail(), n - s);
        if canonical_key_raw(&w) == key {
            return w;
        }
    }
    unreachable!("some shift realizes the canonical key")
}

fn canonical_key_raw(v: &VertList) -> CanonicalKey {
    let n = v.size();
    let seq = v
        .segments()
        .iter()
        .flat_map(|s| [s.tail() as u8, s.head() as u8]);
    if n <= 16 {
        CanonicalKey::Packed {
            size: n as u8,
            bits: seq.fold(0u128, |acc, x| (acc << 4) | x as u128),
        }
    } else {
        CanonicalKey::Wide(seq.collect::<Vec<_>>().into_boxed_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> VertList {
        "(3,1),(4,2),(5,3),(1,4),(2,5)".parse().unwrap()
    }

    #[test]
    fn commute_predicate() {
        assert!(can_commute((1, 3), (4, 5)));
        assert!(can_commute((1, 4), (2, 3)));
        assert!(can_commute((2, 3), (1, 4)));
        assert!(!can_commute((1, 3), (2, 5)));
        assert!(!can_commute((1, 3), (3, 5)));
        assert!(!can_commute((1, 4), (1, 3)));
    }

    #[test]
    fn unknot_has_no_commutations() {
        let v: VertList = "(2,1),(1,2)".parse().unwrap();
        assert!(c_move(&v).is_empty());
    }

    #[test]
    fn trefoil_minimal_diagram_has_no_commutations() {
        // Every adjacent pair of the 5x5 trefoil interleaves.
        assert!(c_move(&trefoil()).is_empty());
    }

    #[test]
    fn commutations_on_stabilized_trefoil_are_involutions() {
        let v = x_nw(&trefoil(), 2).unwrap();
        let moves = c_move(&v);
        assert!(!moves.is_empty());
        for (mv, w) in moves {
            assert_eq!(w.size(), v.size());
            assert_eq!(apply_commutation(&w, mv).as_ref(), Some(&v), "{mv}");
        }
    }

    #[test]
    fn toroidal_column_pair() {
        // Index 3 is the toroidal pair (4, 1).
        let v: VertList = "(2,1),(3,2),(4,3),(1,4)".parse().unwrap();
        let moves = c_move(&v);
        let toroidal = moves
            .iter()
            .find(|(mv, _)| mv.kind == MoveKind::ColumnCommute && mv.index == 3);
        let spans = (v.segment(3).span(), v.segment(0).span());
        assert_eq!(toroidal.is_some(), can_commute(spans.0, spans.1));
    }

    #[test]
    fn stabilization_shape() {
        for i in 0..5 {
            let s = x_nw(&trefoil(), i).unwrap();
            assert_eq!(s.size(), 6);
            let short = s.segment(i + 1);
            assert_eq!(short.tail(), short.head() + 1);
            assert_eq!(s.segment(i).head(), short.tail());
            assert_eq!(destabilize_x_nw(&s, i).unwrap(), trefoil());
        }
        assert!(matches!(
            x_nw(&trefoil(), 5),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn stabilized_unknot() {
        let v: VertList = "(2,1),(1,2)".parse().unwrap();
        let s = x_nw(&v, 0).unwrap();
        assert_eq!(s.to_string(), "(3,2),(2,1),(1,3)");
        assert_eq!(destabilize_x_nw(&s, 0).unwrap(), v);
    }

    #[test]
    fn destabilize_rejects_other_segments() {
        let s = x_nw(&trefoil(), 0).unwrap();
        assert!(destabilize_x_nw(&s, 2).is_err());
        assert!(destabilize_x_nw(&s, 5).is_err());
    }

    #[test]
    fn canonical_key_is_shift_invariant() {
        let v = trefoil();
        let k = canonical_key(&v);
        assert_eq!(canonical_key(&v.shifted(1, 2)), k);
        for dr in 0..5 {
            for dc in 0..5 {
                assert_eq!(canonical_key(&v.shifted(dr, dc)), k);
            }
        }
        assert_eq!(canonical_key(&v), k);
        assert_ne!(canonical_key(&v.reversed()), k);
        let f = canonical_form(&v);
        assert_eq!(canonical_key(&f), k);
        assert_eq!(f.segment(0).tail(), 0);
    }

    #[test]
    fn wide_keys_for_large_grids() {
        let mut v: VertList = "(2,1),(1,2)".parse().unwrap();
        for _ in 0..16 {
            v = x_nw(&v, 0).unwrap();
        }
        assert_eq!(v.size(), 18);
        let k = canonical_key(&v);
        assert!(matches!(k, CanonicalKey::Wide(_)));
        assert_eq!(canonical_key(&v.shifted(5, 11)), k);
    }
}
