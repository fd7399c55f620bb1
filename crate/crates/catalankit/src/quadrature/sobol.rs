//! Sobol low-discrepancy sequence for up to twelve dimensions.
//!
//! Direction numbers are generated at startup from primitive polynomials
//! over GF(2) and initial values `m_k` (odd, `m_k < 2^k`). Dimension one is
//! the van der Corput sequence in base 2. The tests verify primitivity of
//! every polynomial and the one-per-cell stratification of each coordinate.

/// Per-dimension construction data `(s, a, m)` for dimensions 2..=12:
/// polynomial degree `s`, inner coefficient bits `a` of
/// `x^s + a_1 x^(s-1) + ... + a_(s-1) x + 1` (most significant first), and
/// the first `s` direction values.
pub(crate) const CONSTRUCTION: [(u32, u32, &[u32]); 11] = [
    (1, 0, &[1]),
    (2, 1, &[1, 3]),
    (3, 1, &[1, 3, 1]),
    (3, 2, &[1, 1, 1]),
    (4, 1, &[1, 1, 3, 3]),
    (4, 4, &[1, 3, 5, 13]),
    (5, 2, &[1, 1, 5, 5, 17]),
    (5, 4, &[1, 1, 5, 5, 5]),
    (5, 7, &[1, 1, 7, 11, 19]),
    (5, 11, &[1, 1, 5, 1, 1]),
    (5, 13, &[1, 1, 1, 3, 11]),
];

pub(crate) const MAX_DIM: usize = 12;
const BITS: usize = 32;

/// Direction numbers as 32-bit binary fractions, `dims` rows of 32.
pub(crate) fn direction_vectors(dims: usize) -> Vec<[u32; BITS]> {
    assert!((1..=MAX_DIM).contains(&dims), "sobol supports 1..=12 dims");
    let mut all = Vec::with_capacity(dims);

    // dimension 1: van der Corput, v_k = 2^(32-k)
    let mut v0 = [0u32; BITS];
    for (k, v) in v0.iter_mut().enumerate() {
        *v = 1u32 << (31 - k);
    }
    all.push(v0);

    for &(s, a, m) in CONSTRUCTION.iter().take(dims.saturating_sub(1)) {
        let s = s as usize;
        let mut v = [0u32; BITS];
        for k in 0..s {
            let mk = m[k];
            assert!(mk % 2 == 1 && mk < (1u32 << (k + 1)), "invalid direction value");
            v[k] = mk << (31 - k);
        }
        for k in s..BITS {
            // recurrence: v_k = a_1 v_(k-1) ^ ... ^ a_(s-1) v_(k-s+1)
            //                   ^ v_(k-s) ^ (v_(k-s) >> s)
            let mut next = v[k - s] ^ (v[k - s] >> s);
            for j in 1..s {
                if (a >> (s - 1 - j)) & 1 == 1 {
                    next ^= v[k - j];
                }
            }
            v[k] = next;
        }
        all.push(v);
    }
    all
}

/// Gray-code Sobol point stream; emits the raw 32-bit integer lattice.
pub(crate) struct SobolStream {
    v: Vec<[u32; BITS]>,
    state: Vec<u32>,
    index: u64,
}

impl SobolStream {
    pub fn new(dims: usize) -> Self {
        let v = direction_vectors(dims);
        Self {
            state: vec![0u32; dims],
            v,
            index: 0,
        }
    }

    /// Writes point `index` into `out` and advances. Points arrive in
    /// Gray-code order, which visits each dyadic block exactly once.
    pub fn next_point(&mut self, out: &mut [u32]) {
        if self.index > 0 {
            let c = self.index.trailing_zeros() as usize;
            debug_assert!(c < BITS);
            for (d, s) in self.state.iter_mut().enumerate() {
                *s ^= self.v[d][c];
            }
        }
        out.copy_from_slice(&self.state);
        self.index += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Multiplication modulo a GF(2) polynomial given as a bitmask.
    fn gf2_mulmod(mut a: u64, mut b: u64, p: u64) -> u64 {
        let deg = 63 - p.leading_zeros() as u64;
        let mut r = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if (a >> deg) & 1 == 1 {
                a ^= p;
            }
        }
        r
    }

    fn gf2_powmod(mut base: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = gf2_mulmod(r, base, p);
            }
            base = gf2_mulmod(base, base, p);
            e >>= 1;
        }
        r
    }

    /// Remainder of polynomial division over GF(2).
    fn gf2_rem(mut n: u64, d: u64) -> u64 {
        let dd = 63 - d.leading_zeros();
        loop {
            let nd = 63 - n.leading_zeros();
            if n == 0 || nd < dd {
                return n;
            }
            n ^= d << (nd - dd);
        }
    }

    #[test]
    fn construction_polynomials_are_primitive() {
        for &(s, a, _) in CONSTRUCTION.iter() {
            let p: u64 = (1u64 << s) | ((a as u64) << 1) | 1;
            // degree <= 5, so reducible implies a factor of degree <= 2;
            // the only candidates with nonzero constant term are x+1, x^2+x+1
            if s >= 2 {
                assert_ne!(gf2_rem(p, 0b11), 0, "x+1 divides {p:#b}");
            }
            if s >= 4 {
                assert_ne!(gf2_rem(p, 0b111), 0, "x^2+x+1 divides {p:#b}");
            }
            // primitive: x has full order 2^s - 1 in GF(2)[x]/p
            let order = (1u64 << s) - 1;
            assert_eq!(gf2_powmod(0b10, order, p), 1, "x^order != 1 for {p:#b}");
            if order == 15 {
                assert_ne!(gf2_powmod(0b10, 3, p), 1);
                assert_ne!(gf2_powmod(0b10, 5, p), 1);
            }
        }
    }

    #[test]
    fn each_dimension_stratifies_dyadic_cells() {
        let dims = MAX_DIM;
        let n = 1u64 << 10;
        let mut stream = SobolStream::new(dims);
        let mut point = vec![0u32; dims];
        let mut counts = vec![[0u32; 1 << 10]; dims];
        for _ in 0..n {
            stream.next_point(&mut point);
            for (cells, &p) in counts.iter_mut().zip(&point) {
                cells[(p >> (32 - 10)) as usize] += 1;
            }
        }
        for (d, cells) in counts.iter().enumerate() {
            assert!(
                cells.iter().all(|&c| c == 1),
                "dimension {d} misses one-per-cell stratification"
            );
        }
    }

    #[test]
    fn pairwise_projections_are_balanced() {
        let dims = MAX_DIM;
        let n = 4096u64;
        let mut stream = SobolStream::new(dims);
        let mut point = vec![0u32; dims];
        let mut grids = vec![[0u32; 64]; dims * dims];
        for _ in 0..n {
            stream.next_point(&mut point);
            for i in 0..dims {
                for j in (i + 1)..dims {
                    let gi = (point[i] >> 29) as usize; // 8 bins
                    let gj = (point[j] >> 29) as usize;
                    grids[i * dims + j][gi * 8 + gj] += 1;
                }
            }
        }
        // 4096 points over 64 cells: 64 expected; digital-net structure keeps
        // every pair projection close to balanced
        for i in 0..dims {
            for j in (i + 1)..dims {
                let g = &grids[i * dims + j];
                let min = *g.iter().min().unwrap();
                let max = *g.iter().max().unwrap();
                assert!(
                    min >= 16 && max <= 112,
                    "projection ({i},{j}) unbalanced: min {min}, max {max}"
                );
            }
        }
    }

    #[test]
    fn first_points_of_dimension_two_follow_the_classic_pattern() {
        let mut stream = SobolStream::new(2);
        let mut p = [0u32; 2];
        let mut seen = Vec::new();
        for _ in 0..4 {
            stream.next_point(&mut p);
            seen.push((p[0] as f64 / 2f64.powi(32), p[1] as f64 / 2f64.powi(32)));
        }
        assert_eq!(seen[0], (0.0, 0.0));
        assert_eq!(seen[1], (0.5, 0.5));
        // the next two points land in opposite quadrants
        assert_eq!(seen[2], (0.75, 0.25));
        assert_eq!(seen[3], (0.25, 0.75));
    }
}
