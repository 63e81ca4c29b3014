//! Reference implementations for checking the `fuzzyrel` solver.
//!
//! Everything here works on plain nested vectors and shares no code with the
//! library. Solutions of `p ∘ q = r` are found by trying every row `p` over
//! a finite grid of values; greatest and minimal solutions are then read off
//! by definition.

/// Straight triple-loop max-min product.
pub fn compose<T: Copy + PartialOrd>(a: &[Vec<T>], b: &[Vec<T>], zero: T) -> Vec<Vec<T>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut best = zero;
                    for (k, &x) in row.iter().enumerate() {
                        let y = b[k][j];
                        let m = if x < y { x } else { y };
                        if m > best {
                            best = m;
                        }
                    }
                    best
                })
                .collect()
        })
        .collect()
}

pub fn compose_row<T: Copy + PartialOrd>(p: &[T], q: &[Vec<T>], zero: T) -> Vec<T> {
    compose(&[p.to_vec()], q, zero).remove(0)
}

pub fn leq<T: PartialOrd>(a: &[T], b: &[T]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Sorted, deduplicated union of `{zero, one}`, the entries of `q` and `r`.
pub fn value_grid<T: Copy + PartialOrd>(q: &[Vec<T>], r: &[T], zero: T, one: T) -> Vec<T> {
    let mut grid = vec![zero, one];
    grid.extend(q.iter().flatten().copied());
    grid.extend(r.iter().copied());
    sort_dedup(grid)
}

pub fn sort_dedup<T: Copy + PartialOrd>(mut values: Vec<T>) -> Vec<T> {
    values.sort_by(|a, b| a.partial_cmp(b).expect("grid values are ordered"));
    values.dedup_by(|a, b| a == b);
    values
}

/// Result of exhaustive search over `grid^m`.
#[derive(Clone, Debug)]
pub struct Exhaustive<T> {
    pub solutions: Vec<Vec<T>>,
    pub greatest: Option<Vec<T>>,
    /// Lexicographically sorted.
    pub minimals: Vec<Vec<T>>,
}

impl<T> Exhaustive<T> {
    pub fn solvable(&self) -> bool {
        !self.solutions.is_empty()
    }
}

/// Enumerates every row over `grid` (which must be sorted ascending) and
/// keeps those with `p ∘ q == r` exactly.
pub fn exhaustive<T: Copy + PartialOrd>(
    q: &[Vec<T>],
    r: &[T],
    grid: &[T],
    zero: T,
) -> Exhaustive<T> {
    let m = q.len();
    let g = grid.len();
    let total = g.pow(u32::try_from(m).expect("small dimension"));

    // grid index tuples in mixed radix; index 0 is the all-zero row
    let decode = |mut code: usize| -> Vec<usize> {
        let mut idx = vec![0; m];
        for slot in idx.iter_mut().rev() {
            *slot = code % g;
            code /= g;
        }
        idx
    };
    let stride: Vec<usize> = (0..m).map(|j| g.pow((m - 1 - j) as u32)).collect();

    let mut is_solution = vec![false; total];
    let mut p = vec![zero; m];
    for (code, flag) in is_solution.iter_mut().enumerate() {
        let mut rest = code;
        for slot in p.iter_mut().rev() {
            *slot = grid[rest % g];
            rest /= g;
        }
        *flag = r.iter().enumerate().all(|(k, &target)| {
            let mut best = zero;
            for (row, &x) in q.iter().zip(&p) {
                let y = row[k];
                let v = if x < y { x } else { y };
                if v > best {
                    best = v;
                }
            }
            best == target
        });
    }

    // at_or_below[c]: some solution s <= c. Codes decrease when
    // any index decreases, so ascending order visits predecessors first.
    let mut at_or_below = vec![false; total];
    let mut strictly_below = vec![false; total];
    for code in 0..total {
        let idx = decode(code);
        let below = (0..m).any(|j| idx[j] > 0 && at_or_below[code - stride[j]]);
        strictly_below[code] = below;
        at_or_below[code] = below || is_solution[code];
    }

    let row = |code: usize| -> Vec<T> { decode(code).into_iter().map(|i| grid[i]).collect() };
    let solutions: Vec<Vec<T>> = (0..total).filter(|&c| is_solution[c]).map(row).collect();
    let minimals: Vec<Vec<T>> = (0..total)
        .filter(|&c| is_solution[c] && !strictly_below[c])
        .map(row)
        .collect();

    let greatest = if solutions.is_empty() {
        None
    } else {
        let mut top = solutions[0].clone();
        for s in &solutions {
            for (t, &v) in top.iter_mut().zip(s) {
                if v > *t {
                    *t = v;
                }
            }
        }
        Some(top)
    };

    // codes enumerate rows in lexicographic order already
    Exhaustive {
        solutions,
        greatest,
        minimals,
    }
}

/// Tiny deterministic generator so callers need no RNG dependency.
#[derive(Clone, Debug)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as usize
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.range(0, items.len() - 1)]
    }
}
