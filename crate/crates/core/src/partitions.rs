//! Integer partitions and the arm/leg statistics of their Young diagrams.

use std::fmt;

use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty partition
/// (size 0) is valid.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// A box of a Young diagram, 0-based, rows drawn top to bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "partition parts must be positive: {parts:?}"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.parts
            .get(cell.row)
            .is_some_and(|&p| cell.col < p as usize)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(row, &p)| (0..p as usize).map(move |col| Cell { row, col }))
    }

    fn check(&self, cell: Cell) -> Result<()> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(Error::CellOutside {
                row: cell.row,
                col: cell.col,
            })
        }
    }

    /// Number of cells strictly to the right of `cell`.
    pub fn arm(&self, cell: Cell) -> Result<u32> {
        self.check(cell)?;
        Ok(self.parts[cell.row] - cell.col as u32 - 1)
    }

    /// Number of cells strictly below `cell`.
    pub fn leg(&self, cell: Cell) -> Result<u32> {
        self.check(cell)?;
        Ok(self.parts[cell.row + 1..]
            .iter()
            .take_while(|&&p| p as usize > cell.col)
            .count() as u32)
    }

    /// `(arm, leg)` for every cell, in row-major order.
    pub fn arm_legs(&self) -> Vec<(u32, u32)> {
        let conj = self.conjugate();
        self.cells()
            .map(|c| {
                (
                    self.parts[c.row] - c.col as u32 - 1,
                    conj.parts[c.col] - c.row as u32 - 1,
                )
            })
            .collect()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count() as u32)
            .collect();
        Partition { parts }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Partitions of exactly `m` in reverse-lexicographic order, `(m)` first.
pub fn partitions_of(m: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(m, m, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        current.push(p);
        fill(remaining - p, p, current, out);
        current.pop();
    }
}

/// All partitions of sizes `0..=n`, size-major, each size slice in
/// reverse-lexicographic order.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn size_three_slice() {
        let all = enumerate_partitions(3);
        let three: Vec<_> = all.iter().filter(|p| p.size() == 3).cloned().collect();
        assert_eq!(three, vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]);
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
    }

    #[test]
    fn counts_match_brute_force() {
        // brute force: weakly decreasing sequences from all compositions
        fn brute(n: u32) -> usize {
            let mut count = 0;
            for mask in 0u32..(1 << n.saturating_sub(1)) {
                let mut parts = Vec::new();
                let mut run = 1;
                for i in 0..n.saturating_sub(1) {
                    if mask & (1 << i) != 0 {
                        parts.push(run);
                        run = 1;
                    } else {
                        run += 1;
                    }
                }
                parts.push(run);
                if parts.windows(2).all(|w| w[0] >= w[1]) {
                    count += 1;
                }
            }
            count
        }
        assert_eq!(partitions_of(5).len(), 7);
        for n in 1..=10 {
            assert_eq!(partitions_of(n).len(), brute(n), "n = {n}");
        }
    }

    #[test]
    fn arm_and_leg_examples() {
        let lam = part(&[5, 4, 2]);
        let x = Cell { row: 0, col: 1 };
        assert_eq!((lam.arm(x).unwrap(), lam.leg(x).unwrap()), (3, 2));
        let one = part(&[1]);
        let c = Cell { row: 0, col: 0 };
        assert_eq!((one.arm(c).unwrap(), one.leg(c).unwrap()), (0, 0));
        let sq = part(&[2, 2]);
        assert_eq!((sq.arm(c).unwrap(), sq.leg(c).unwrap()), (1, 1));
    }

    #[test]
    fn cells_outside_are_rejected() {
        let lam = part(&[2, 1]);
        assert_eq!(
            lam.arm(Cell { row: 1, col: 1 }),
            Err(Error::CellOutside { row: 1, col: 1 })
        );
        assert!(lam.leg(Cell { row: 2, col: 0 }).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn hook_sums_match_brute_force() {
        for lam in enumerate_partitions(8) {
            let cells: Vec<Cell> = lam.cells().collect();
            let mut brute = 0;
            for &x in &cells {
                // count the hook of x directly: x itself, cells right, cells below
                brute += cells
                    .iter()
                    .filter(|y| {
                        (y.row == x.row && y.col >= x.col) || (y.col == x.col && y.row > x.row)
                    })
                    .count() as u32;
            }
            let via_stats: u32 = cells
                .iter()
                .map(|&x| lam.arm(x).unwrap() + lam.leg(x).unwrap() + 1)
                .sum();
            assert_eq!(via_stats, brute, "{lam}");
            let fast: u32 = lam.arm_legs().iter().map(|(a, l)| a + l + 1).sum();
            assert_eq!(fast, brute);
        }
        for n in 1..=8u32 {
            let row = part(&[n]);
            let s: u32 = row.arm_legs().iter().map(|(a, l)| a + l + 1).sum();
            assert_eq!(s, n * (n + 1) / 2);
        }
    }

    #[test]
    fn conjugation_swaps_arm_and_leg() {
        for lam in enumerate_partitions(8) {
            let conj = lam.conjugate();
            assert_eq!(conj.size(), lam.size());
            assert_eq!(conj.conjugate(), lam);
            for x in lam.cells() {
                let xt = Cell {
                    row: x.col,
                    col: x.row,
                };
                assert_eq!(lam.arm(x).unwrap(), conj.leg(xt).unwrap());
                assert_eq!(lam.leg(x).unwrap(), conj.arm(xt).unwrap());
            }
        }
    }
}
