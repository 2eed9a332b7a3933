//! Arithmetic in the base field `F_q`, `q = 2^s` with `1 <= s <= 16`.
//!
//! Elements are bit vectors of length `s`: bit `i` of [`FqElem`] is the
//! coefficient of `z^i` in `F_2[z]/(reduction_poly)`. Addition is XOR;
//! multiplication and inversion go through log/antilog tables built once per
//! [`FieldParams`].
//!
//! All public arithmetic increments the process-wide counters in [`ops`],
//! one count per operation. Extension-field code performs bulk work through
//! uncounted raw helpers and reports exact totals through [`ops::record`],
//! so a snapshot delta around any call equals the number of base-field
//! operations that call executed.

use std::fmt;
use std::ops::Sub;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::{Error, Result};

/// Snapshot of the operation counters. Counts are monotonically
/// non-decreasing between explicit resets.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct OpCounter {
    pub mul_count: u64,
    pub add_count: u64,
    pub inv_count: u64,
}

impl Sub for OpCounter {
    type Output = OpCounter;

    /// Delta between two snapshots (saturating, so a reset in between does
    /// not wrap).
    fn sub(self, rhs: OpCounter) -> OpCounter {
        OpCounter {
            mul_count: self.mul_count.saturating_sub(rhs.mul_count),
            add_count: self.add_count.saturating_sub(rhs.add_count),
            inv_count: self.inv_count.saturating_sub(rhs.inv_count),
        }
    }
}

impl fmt::Display for OpCounter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mul={} add={} inv={}",
            self.mul_count, self.add_count, self.inv_count
        )
    }
}

/// Process-wide tallies of executed `F_q` operations.
///
/// The counts are exact when all arithmetic happens on one thread; under
/// concurrent use they aggregate without corruption (relaxed atomics).
pub mod ops {
    use super::*;

    static MUL: AtomicU64 = AtomicU64::new(0);
    static ADD: AtomicU64 = AtomicU64::new(0);
    static INV: AtomicU64 = AtomicU64::new(0);

    /// Zero all counters.
    pub fn reset() {
        MUL.store(0, Ordering::Relaxed);
        ADD.store(0, Ordering::Relaxed);
        INV.store(0, Ordering::Relaxed);
    }

    /// Current counts, without modifying them.
    pub fn snapshot() -> OpCounter {
        OpCounter {
            mul_count: MUL.load(Ordering::Relaxed),
            add_count: ADD.load(Ordering::Relaxed),
            inv_count: INV.load(Ordering::Relaxed),
        }
    }

    /// Record a batch of operations that were executed through raw helpers.
    pub(crate) fn record(adds: u64, muls: u64, invs: u64) {
        if adds > 0 {
            ADD.fetch_add(adds, Ordering::Relaxed);
        }
        if muls > 0 {
            MUL.fetch_add(muls, Ordering::Relaxed);
        }
        if invs > 0 {
            INV.fetch_add(invs, Ordering::Relaxed);
        }
    }
}

/// Local tally used by bulk operations; flushed once per public call.
#[derive(Default, Clone, Copy)]
pub(crate) struct Tally {
    pub adds: u64,
    pub muls: u64,
    pub invs: u64,
}

impl Tally {
    pub(crate) fn flush(self) {
        ops::record(self.adds, self.muls, self.invs);
    }
}

/// An element of `F_q`, value in `[0, q)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct FqElem(pub u16);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FqTables {
    /// `log[a]` = discrete log of `a` base the chosen generator; `log[0]` unused.
    log: Vec<u16>,
    /// `exp[i]` = generator^i, doubled in length so `exp[log a + log b]`
    /// needs no reduction.
    exp: Vec<u16>,
}

/// The base field `F_q = F_2[z]/(reduction_poly)`.
///
/// Cheap to clone; the internal tables are shared.
#[derive(Clone)]
pub struct FieldParams {
    s: u32,
    q: u32,
    reduction_poly: u32,
    tables: Arc<FqTables>,
}

impl PartialEq for FieldParams {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s && self.reduction_poly == other.reduction_poly
    }
}
impl Eq for FieldParams {}

impl fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldParams")
            .field("s", &self.s)
            .field("q", &self.q)
            .field("reduction_poly", &format_args!("{:#x}", self.reduction_poly))
            .finish()
    }
}

impl FieldParams {
    /// Build `F_{2^s}` with an explicit reduction polynomial (bitmask,
    /// bit `i` = coefficient of `z^i`). The polynomial must have degree
    /// exactly `s` and be irreducible over `F_2`.
    pub fn new(s: u32, reduction_poly: u32) -> Result<Self> {
        if !(1..=16).contains(&s) {
            return Err(Error::InvalidParams(format!(
                "s = {s} out of range 1..=16"
            )));
        }
        let deg = 31 - reduction_poly.leading_zeros();
        if reduction_poly == 0 || deg != s {
            return Err(Error::InvalidParams(format!(
                "reduction polynomial {reduction_poly:#x} does not have degree {s}"
            )));
        }
        if !f2_is_irreducible(reduction_poly as u64, s) {
            return Err(Error::InvalidParams(format!(
                "reduction polynomial {reduction_poly:#x} is reducible over F_2"
            )));
        }
        let q = 1u32 << s;
        let tables = Arc::new(build_tables(s, reduction_poly));
        Ok(FieldParams {
            s,
            q,
            reduction_poly,
            tables,
        })
    }

    /// Build `F_{2^s}` with the crate's default reduction polynomial for `s`.
    pub fn with_default_poly(s: u32) -> Result<Self> {
        Self::new(s, default_reduction_poly(s)?)
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn reduction_poly(&self) -> u32 {
        self.reduction_poly
    }

    /// Validate a raw value as a field element.
    pub fn elem(&self, value: u32) -> Result<FqElem> {
        if value < self.q {
            Ok(FqElem(value as u16))
        } else {
            Err(Error::InvalidParams(format!(
                "value {value:#x} not below q = {}",
                self.q
            )))
        }
    }

    /// `a + b` (XOR). Counts one addition. Addition equals subtraction.
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        ops::record(1, 0, 0);
        FqElem(a.0 ^ b.0)
    }

    /// `a * b`. Counts one multiplication.
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        ops::record(0, 1, 0);
        FqElem(self.raw_mul(a.0, b.0))
    }

    /// `a^{-1}`. Counts one inversion. Zero input is a domain error.
    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        ops::record(0, 0, 1);
        Ok(FqElem(self.raw_inv(a.0)))
    }

    #[inline]
    pub(crate) fn raw_add(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }

    #[inline]
    pub(crate) fn raw_mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.tables;
        t.exp[t.log[a as usize] as usize + t.log[b as usize] as usize]
    }

    #[inline]
    pub(crate) fn raw_inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        let t = &self.tables;
        t.exp[(self.q as usize - 1) - t.log[a as usize] as usize]
    }

    /// Width in hex digits of a serialized element.
    pub fn hex_width(&self) -> usize {
        ((self.s + 3) / 4) as usize
    }

    /// Lowercase hex, fixed width `ceil(s/4)`.
    pub fn format_elem(&self, a: FqElem) -> String {
        format!("{:0width$x}", a.0, width = self.hex_width())
    }

    pub fn parse_elem(&self, text: &str) -> Result<FqElem> {
        let v = u32::from_str_radix(text.trim(), 16)
            .map_err(|e| Error::Parse(format!("bad element {text:?}: {e}")))?;
        self.elem(v)
    }
}

/// Default reduction polynomials. The small sizes are the standard choices;
/// remaining degrees take the lexicographically smallest irreducible.
pub fn default_reduction_poly(s: u32) -> Result<u32> {
    let fixed = match s {
        1 => Some(0b10),            // z
        2 => Some(0b111),           // z^2 + z + 1
        3 => Some(0b1011),          // z^3 + z + 1
        4 => Some(0b1_0011),        // z^4 + z + 1
        8 => Some(0x11b),           // z^8 + z^4 + z^3 + z + 1
        _ => None,
    };
    if let Some(p) = fixed {
        return Ok(p);
    }
    if !(1..=16).contains(&s) {
        return Err(Error::InvalidParams(format!("s = {s} out of range 1..=16")));
    }
    let lo = 1u32 << s;
    // Constant term must be nonzero for degree >= 2.
    for p in (lo + 1..2 * lo).step_by(2) {
        if f2_is_irreducible(p as u64, s) {
            return Ok(p);
        }
    }
    unreachable!("an irreducible polynomial of degree {s} always exists")
}

fn build_tables(s: u32, poly: u32) -> FqTables {
    let q = 1usize << s;
    let g = find_generator(s, poly);
    let mut exp = vec![0u16; 2 * (q - 1).max(1)];
    let mut log = vec![0u16; q];
    let mut x = 1u16;
    for i in 0..q - 1 {
        exp[i] = x;
        log[x as usize] = i as u16;
        x = f2_mulmod(x as u64, g as u64, poly as u64) as u16;
    }
    debug_assert_eq!(x, 1, "generator order must be q - 1");
    for i in q - 1..exp.len() {
        exp[i] = exp[i - (q - 1)];
    }
    FqTables { log, exp }
}

fn find_generator(s: u32, poly: u32) -> u32 {
    let order = (1u32 << s) - 1;
    if order == 1 {
        return 1;
    }
    let primes = prime_factors(order);
    'outer: for g in 2..(1u32 << s) {
        for &p in &primes {
            if f2_powmod(g as u64, (order / p) as u64, poly as u64) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("F_q* is cyclic, a generator exists")
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- polynomials over F_2 as bitmasks -------------------------------------

fn f2_deg(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// Carry-less product reduced modulo `modulus`.
fn f2_mulmod(a: u64, b: u64, modulus: u64) -> u64 {
    let mut acc: u128 = 0;
    let a = a as u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    f2_rem128(acc, modulus)
}

fn f2_rem128(mut a: u128, m: u64) -> u64 {
    let md = f2_deg(m);
    while a >> md != 0 {
        let d = 127 - a.leading_zeros() as i32;
        a ^= (m as u128) << (d - md);
    }
    a as u64
}

fn f2_powmod(mut base: u64, mut e: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base = f2_rem128(base as u128, modulus);
    while e > 0 {
        if e & 1 != 0 {
            acc = f2_mulmod(acc, base, modulus);
        }
        base = f2_mulmod(base, base, modulus);
        e >>= 1;
    }
    acc
}

/// Exhaustive trial division by every polynomial of degree `1..=s/2`.
fn f2_is_irreducible(poly: u64, s: u32) -> bool {
    if s == 1 {
        return true;
    }
    if poly & 1 == 0 {
        return false; // divisible by z
    }
    for d in 2..=(1u64 << (s / 2 + 1)) {
        if f2_deg(d) as u32 > s / 2 {
            break;
        }
        if f2_rem128(poly as u128, d) == 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf256() -> FieldParams {
        FieldParams::with_default_poly(8).unwrap()
    }

    /// Independent schoolbook multiply, used as the oracle for table-based
    /// multiplication and inversion.
    fn naive_mul(params: &FieldParams, a: u16, b: u16) -> u16 {
        let mut acc: u64 = 0;
        for i in 0..16 {
            if (b >> i) & 1 != 0 {
                acc ^= (a as u64) << i;
            }
        }
        f2_rem128(acc as u128, params.reduction_poly() as u64) as u16
    }

    #[test]
    fn default_polys_are_the_standard_ones() {
        assert_eq!(default_reduction_poly(2).unwrap(), 0b111);
        assert_eq!(default_reduction_poly(4).unwrap(), 0b1_0011);
        assert_eq!(default_reduction_poly(8).unwrap(), 0x11b);
    }

    #[test]
    fn rejects_reducible_poly() {
        // z^4 + 1 = (z + 1)^4
        assert!(FieldParams::new(4, 0b1_0001).is_err());
        // z^4 + z^2 + 1 = (z^2 + z + 1)^2
        assert!(FieldParams::new(4, 0b1_0101).is_err());
    }

    #[test]
    fn add_examples() {
        let f = FieldParams::with_default_poly(4).unwrap();
        assert_eq!(f.add(FqElem(0x0), FqElem(0xb)).0, 0xb);
        assert_eq!(f.add(FqElem(0x9), FqElem(0x5)).0, 0xc);
        for a in 0..16 {
            assert_eq!(f.add(FqElem(a), FqElem(a)).0, 0);
        }
    }

    #[test]
    fn mul_identity_and_zero() {
        let f = gf256();
        for a in 0..256u16 {
            assert_eq!(f.mul(FqElem(1), FqElem(a)), FqElem(a));
            assert_eq!(f.mul(FqElem(0), FqElem(a)), FqElem(0));
        }
    }

    #[test]
    fn aes_inverse_pair_by_brute_force() {
        let f = gf256();
        // Exhaustive search for the inverse of 0xca with an independent
        // multiply, then check both the table path and the claimed pair.
        let mut found = None;
        for b in 1..256u16 {
            if naive_mul(&f, 0xca, b) == 1 {
                found = Some(b);
                break;
            }
        }
        assert_eq!(found, Some(0x53));
        assert_eq!(f.mul(FqElem(0x53), FqElem(0xca)), FqElem(0x01));
        assert_eq!(f.inv(FqElem(0xca)).unwrap(), FqElem(0x53));
    }

    #[test]
    fn inv_in_gf4() {
        let f = FieldParams::with_default_poly(2).unwrap();
        assert_eq!(f.inv(FqElem(0x1)).unwrap(), FqElem(0x1));
        assert_eq!(f.inv(FqElem(0x2)).unwrap(), FqElem(0x3));
        assert!(f.inv(FqElem(0)).is_err());
    }

    #[test]
    fn table_mul_matches_naive_everywhere_gf256() {
        let f = gf256();
        for a in 0..256u16 {
            for b in 0..256u16 {
                assert_eq!(f.raw_mul(a, b), naive_mul(&f, a, b));
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_q() {
        for s in [1u32, 2, 4] {
            let f = FieldParams::with_default_poly(s).unwrap();
            let q = f.q() as u16;
            for a in 0..q {
                let (a, av) = (FqElem(a), a);
                // additive inverse is the element itself
                assert_eq!(f.add(a, a), FqElem(0));
                if av != 0 {
                    let inv = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, inv), FqElem(1));
                }
                for b in 0..q {
                    let b = FqElem(b);
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        let c = FqElem(c);
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn counters_track_each_operation() {
        let f = gf256();
        ops::reset();
        assert_eq!(ops::snapshot(), OpCounter::default());
        f.mul(FqElem(3), FqElem(5));
        f.mul(FqElem(3), FqElem(5));
        f.mul(FqElem(3), FqElem(5));
        let snap = ops::snapshot();
        assert_eq!(snap.mul_count, 3);
        assert_eq!(snap.add_count, 0);
        f.add(FqElem(3), FqElem(5));
        f.inv(FqElem(7)).unwrap();
        let snap2 = ops::snapshot();
        assert_eq!(snap2.add_count, 1);
        assert_eq!(snap2.inv_count, 1);
        let delta = snap2 - snap;
        assert_eq!(delta.mul_count, 0);
        assert_eq!(delta.add_count, 1);
    }

    #[test]
    fn hex_round_trip() {
        let f = FieldParams::with_default_poly(12).unwrap();
        assert_eq!(f.hex_width(), 3);
        let e = FqElem(0xabc);
        assert_eq!(f.format_elem(e), "abc");
        assert_eq!(f.parse_elem("abc").unwrap(), e);
        let f1 = FieldParams::with_default_poly(1).unwrap();
        assert_eq!(f1.format_elem(FqElem(1)), "1");
    }

    proptest! {
        #[test]
        fn add_is_an_involution(a in 0u16..256, b in 0u16..256) {
            let f = gf256();
            let x = f.add(FqElem(a), FqElem(b));
            prop_assert_eq!(f.add(x, FqElem(b)), FqElem(a));
        }

        #[test]
        fn mul_matches_naive_gf2_16(a in 0u16.., b in 0u16..) {
            let f = FieldParams::with_default_poly(16).unwrap();
            prop_assert_eq!(f.raw_mul(a, b), naive_mul(&f, a, b));
        }
    }
}
