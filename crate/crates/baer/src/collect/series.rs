//! Truncated free associative algebra `Z<X_1..X_d>` modulo words of length
//! `> max_deg`, the faithful carrier for free-nilpotent group arithmetic:
//! the generator `x_i` embeds as `1 + X_i`, an element of the lower central
//! term `γ_n` embeds as `1 + (degree-n Lie part) + higher`, and truncation at
//! `max_deg` is exactly the quotient by `γ_{max_deg + 1}`.
//!
//! Words of length `<= max_deg` are indexed by a d-ary heap numbering:
//! `id(ε) = 0`, `id(w·i) = id(w)·d + i + 1`, which makes concatenation
//! `id(uv) = id(u)·d^|v| + id(v)` and keeps each degree contiguous.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Shared shape data for one `(d, max_deg)` algebra.
#[derive(Debug, Clone)]
pub(crate) struct Algebra {
    d: usize,
    max_deg: u32,
    /// `deg_start[k]` = id of the first word of length `k`; one past the end
    /// at index `max_deg + 1`.
    deg_start: Vec<usize>,
    /// `d^k` for `k <= max_deg`.
    pow: Vec<usize>,
}

impl Algebra {
    /// Total number of words of length `<= max_deg` on `d` letters, or
    /// `None` on overflow of the addressable range.
    pub fn size(d: usize, max_deg: u32) -> Option<usize> {
        let mut total = 1usize;
        let mut layer = 1usize;
        for _ in 0..max_deg {
            layer = layer.checked_mul(d)?;
            total = total.checked_add(layer)?;
        }
        Some(total)
    }

    pub fn new(d: usize, max_deg: u32) -> Self {
        let mut deg_start = Vec::with_capacity(max_deg as usize + 2);
        let mut pow = Vec::with_capacity(max_deg as usize + 1);
        let mut start = 0usize;
        let mut layer = 1usize;
        for k in 0..=max_deg {
            deg_start.push(start);
            pow.push(layer);
            start += layer;
            if k < max_deg {
                layer *= d;
            }
        }
        deg_start.push(start);
        Algebra {
            d,
            max_deg,
            deg_start,
            pow,
        }
    }

    pub fn total(&self) -> usize {
        *self.deg_start.last().expect("nonempty")
    }

    /// Index range of the degree-`k` coefficient block.
    pub fn deg_range(&self, k: u32) -> std::ops::Range<usize> {
        self.deg_start[k as usize]..self.deg_start[k as usize + 1]
    }

    /// The constant series 1.
    pub fn one(&self) -> Series {
        let mut c = vec![BigInt::zero(); self.total()];
        c[0] = BigInt::one();
        Series { c }
    }

    /// The series `1 + X_i` (image of the `i`-th group generator).
    pub fn generator(&self, i: usize) -> Series {
        assert!(i < self.d, "generator index out of range");
        let mut s = self.one();
        if self.max_deg >= 1 {
            s.c[1 + i] = BigInt::one();
        }
        s
    }

    /// The homogeneous degree-1 polynomial `X_i`.
    pub fn letter_poly(&self, i: usize) -> Series {
        assert!(i < self.d, "letter index out of range");
        let mut c = vec![BigInt::zero(); self.total()];
        if self.max_deg >= 1 {
            c[1 + i] = BigInt::one();
        }
        Series { c }
    }

    /// Truncated product.
    pub fn mul(&self, a: &Series, b: &Series) -> Series {
        let mut c = vec![BigInt::zero(); self.total()];
        for da in 0..=self.max_deg {
            for ia in self.deg_range(da) {
                let av = &a.c[ia];
                if av.is_zero() {
                    continue;
                }
                for db in 0..=(self.max_deg - da) {
                    let shift = self.pow[db as usize];
                    for ib in self.deg_range(db) {
                        let bv = &b.c[ib];
                        if bv.is_zero() {
                            continue;
                        }
                        // id(uv) = id(u) * d^|v| + id(v)
                        c[ia * shift + ib] += av * bv;
                    }
                }
            }
        }
        Series { c }
    }

    /// Additive combination `a + sign * b`.
    pub fn add_scaled(&self, a: &Series, b: &Series, sign: i64) -> Series {
        let s = BigInt::from(sign);
        let c = a
            .c
            .iter()
            .zip(b.c.iter())
            .map(|(x, y)| x + &s * y)
            .collect();
        Series { c }
    }

    /// Inverse of a series with constant term 1: the finite geometric series
    /// in `u = a - 1`, exact in the truncation.
    pub fn inv(&self, a: &Series) -> Series {
        assert!(a.c[0].is_one(), "inverse requires constant term 1");
        let mut u = a.clone();
        u.c[0] = BigInt::zero();
        let mut acc = self.one();
        let mut term = self.one();
        for _ in 0..self.max_deg {
            term = self.mul(&term, &u);
            if term.c.iter().all(Zero::is_zero) {
                break;
            }
            acc = self.add_scaled(&acc, &term, -1);
            // flip sign by negating the running term instead of tracking parity
            for x in &mut term.c {
                *x = -std::mem::take(x);
            }
        }
        acc
    }

    /// Group commutator `a^{-1} b^{-1} a b` of two constant-term-1 series.
    pub fn group_commutator(&self, a: &Series, b: &Series) -> Series {
        let ai = self.inv(a);
        let bi = self.inv(b);
        self.mul(&self.mul(&ai, &bi), &self.mul(a, b))
    }

    /// Lie bracket `ab - ba`.
    pub fn lie_bracket(&self, a: &Series, b: &Series) -> Series {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.add_scaled(&ab, &ba, -1)
    }

    /// Integer power of a constant-term-1 series by square and multiply;
    /// negative exponents go through the inverse.
    pub fn pow(&self, a: &Series, e: &BigInt) -> Series {
        if e.is_zero() {
            return self.one();
        }
        let base = if e.is_negative() { self.inv(a) } else { a.clone() };
        let mag = e.magnitude();
        let bits = mag.bits();
        let mut acc = self.one();
        for i in (0..bits).rev() {
            acc = self.mul(&acc, &acc);
            if mag.bit(i) {
                acc = self.mul(&acc, &base);
            }
        }
        acc
    }

    /// The degree-`k` coefficient block.
    pub fn deg_slice<'s>(&self, s: &'s Series, k: u32) -> &'s [BigInt] {
        &s.c[self.deg_range(k)]
    }

    /// True when all blocks of degree `1..=k` vanish.
    pub fn trivial_up_to(&self, s: &Series, k: u32) -> bool {
        (1..=k).all(|n| self.deg_slice(s, n).iter().all(Zero::is_zero))
    }
}

/// Dense coefficient vector over the word index space of one [`Algebra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Series {
    pub c: Vec<BigInt>,
}

impl Series {
    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }
}
