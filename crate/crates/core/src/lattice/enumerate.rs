use super::hnf::HNFLattice;

/// All compositions of `i` into `n` non-negative parts, lexicographic.
pub fn compositions(i: u32, n: usize) -> Vec<Vec<u32>> {
    fn go(left: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            go(left - e, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if i == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(i, n, &mut Vec::new(), &mut out);
    out
}

/// Lattices sharing one diagonal composition; the sub-diagonal entries run
/// through a mixed-radix counter with the last slot fastest.
#[derive(Clone, Debug)]
struct Block {
    exps: Vec<u32>,
    /// (flat index, radix) per sub-diagonal slot.
    slots: Vec<(usize, i64)>,
    size: u64,
}

/// A contiguous range of one block; the unit of parallel work.
#[derive(Clone, Copy, Debug)]
pub struct Chunk {
    block: usize,
    start: u64,
    end: u64,
}

impl Chunk {
    pub fn len(&self) -> u64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

/// Enumerates every sublattice of index p^i of Z_p^n exactly once.
#[derive(Clone, Debug)]
pub struct Enumerator {
    n: usize,
    p: u64,
    i: u32,
    blocks: Vec<Block>,
}

const CHUNK: u64 = 1 << 14;

impl Enumerator {
    pub fn new(n: usize, p: u64, i: u32) -> Self {
        let mut blocks = Vec::new();
        for exps in compositions(i, n) {
            let mut slots = Vec::new();
            let mut size = 1u64;
            for r in 0..n {
                for c in 0..r {
                    let radix = (p as i64).pow(exps[c]);
                    if radix > 1 {
                        slots.push((r * n + c, radix));
                        size = size.checked_mul(radix as u64).expect("enumeration size overflows u64");
                    }
                }
            }
            blocks.push(Block { exps, slots, size });
        }
        Self { n, p, i, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn index_exponent(&self) -> u32 {
        self.i
    }

    /// Total number of lattices.
    pub fn len(&self) -> u64 {
        self.blocks.iter().map(|b| b.size).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Work units of bounded size, in enumeration order.
    pub fn chunks(&self) -> Vec<Chunk> {
        let mut out = Vec::new();
        for (bi, b) in self.blocks.iter().enumerate() {
            let mut s = 0;
            while s < b.size {
                let e = (s + CHUNK).min(b.size);
                out.push(Chunk { block: bi, start: s, end: e });
                s = e;
            }
        }
        out
    }

    fn first_of_block(&self, b: &Block) -> HNFLattice {
        HNFLattice::diagonal(self.p, &b.exps)
    }

    /// Call `f` on every lattice of the chunk, reusing one buffer.
    pub fn visit_chunk(&self, chunk: Chunk, mut f: impl FnMut(&HNFLattice)) {
        let b = &self.blocks[chunk.block];
        let mut lat = self.first_of_block(b);
        let k = b.slots.len();
        let mut digits = vec![0i64; k];
        let mut rest = chunk.start;
        for s in (0..k).rev() {
            let radix = b.slots[s].1 as u64;
            digits[s] = (rest % radix) as i64;
            rest /= radix;
        }
        {
            let rows = lat.rows_mut();
            for (s, &(idx, _)) in b.slots.iter().enumerate() {
                rows[idx] = digits[s];
            }
        }
        let mut count = chunk.start;
        loop {
            f(&lat);
            count += 1;
            if count >= chunk.end {
                break;
            }
            let rows = lat.rows_mut();
            let mut s = k;
            while s > 0 {
                s -= 1;
                let (idx, radix) = b.slots[s];
                digits[s] += 1;
                if digits[s] < radix {
                    rows[idx] = digits[s];
                    break;
                }
                digits[s] = 0;
                rows[idx] = 0;
            }
        }
    }

    /// Sequential visit of all lattices.
    pub fn for_each(&self, mut f: impl FnMut(&HNFLattice)) {
        for c in self.chunks() {
            self.visit_chunk(c, &mut f);
        }
    }

    /// Lazy stream of owned lattices.
    pub fn iter(self) -> LatticeIter {
        LatticeIter { en: self, block: 0, digits: Vec::new(), current: None }
    }
}

/// Owned-value iterator over an [`Enumerator`].
pub struct LatticeIter {
    en: Enumerator,
    block: usize,
    digits: Vec<i64>,
    current: Option<HNFLattice>,
}

impl Iterator for LatticeIter {
    type Item = HNFLattice;

    fn next(&mut self) -> Option<HNFLattice> {
        loop {
            if self.block >= self.en.blocks.len() {
                return None;
            }
            let b = &self.en.blocks[self.block];
            match self.current.as_mut() {
                None => {
                    let lat = self.en.first_of_block(b);
                    self.digits = vec![0; b.slots.len()];
                    self.current = Some(lat.clone());
                    return Some(lat);
                }
                Some(lat) => {
                    let rows = lat.rows_mut();
                    let mut s = b.slots.len();
                    let mut advanced = false;
                    while s > 0 {
                        s -= 1;
                        let (idx, radix) = b.slots[s];
                        self.digits[s] += 1;
                        if self.digits[s] < radix {
                            rows[idx] = self.digits[s];
                            advanced = true;
                            break;
                        }
                        self.digits[s] = 0;
                        rows[idx] = 0;
                    }
                    if advanced {
                        return Some(lat.clone());
                    }
                    self.current = None;
                    self.block += 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::gaussian_binomial;
    use std::collections::HashSet;

    #[test]
    fn small_counts() {
        assert_eq!(Enumerator::new(2, 2, 1).len(), 3);
        assert_eq!(Enumerator::new(1, 7, 5).len(), 1);
        assert_eq!(Enumerator::new(3, 2, 2).len(), 35);
        assert_eq!(Enumerator::new(3, 2, 0).len(), 1);
    }

    #[test]
    fn iterator_and_chunks_agree() {
        let en = Enumerator::new(3, 3, 3);
        let mut via_chunks = Vec::new();
        en.for_each(|l| via_chunks.push(l.clone()));
        let via_iter: Vec<_> = en.clone().iter().collect();
        assert_eq!(via_chunks, via_iter);
        assert_eq!(via_iter.len() as i64, gaussian_binomial(5, 2, &3i64));
    }

    #[test]
    fn no_duplicates() {
        for i in 0..=4 {
            let mut seen = HashSet::new();
            Enumerator::new(3, 2, i).for_each(|l| {
                assert!(seen.insert(l.clone()));
                assert_eq!(l.index_exponent(), i);
                assert!(HNFLattice::from_rows(3, 2, l.rows_flat().to_vec()).is_ok());
            });
            assert_eq!(seen.len() as i64, gaussian_binomial(i + 2, 2, &2i64));
        }
    }
}
