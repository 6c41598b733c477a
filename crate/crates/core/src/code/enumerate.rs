//! Exhaustive weight distribution by Gray-order codeword enumeration.
//!
//! A code over GF(p^v) with `k` generator rows is spanned over GF(p) by the
//! `k * v` rows `x^t * g_j`. Walking the p-ary modular Gray code over those
//! coefficients changes exactly one coefficient by +1 per step, so every step
//! adds one precomputed row to the running codeword. Any index range can be
//! started directly: the Gray digits of index `s` are `(d_i - d_{i+1}) mod p`
//! for the base-p digits `d` of `s`.

use rayon::prelude::*;

use super::{CodeError, LinearCode, WeightEnumerator};
use crate::gf::{Elem, Field};

/// Default cap on the number of enumerated codewords.
pub const DEFAULT_BUDGET: u128 = 1 << 32;

/// Smallest range handed to a worker.
const MIN_RANGE: u64 = 1 << 16;

enum Rows {
    /// Characteristic 2: each row is `v` bit planes of `words` u64 each.
    Planes { v: usize, words: usize, data: Vec<u64> },
    /// GF(3): per row, `words` u64 of "is 1" bits then `words` of "is 2" bits.
    Ternary { words: usize, data: Vec<u64> },
    /// Other odd characteristic: dense element rows plus their nonzero positions.
    Dense { rows: Vec<Vec<Elem>>, support: Vec<Vec<usize>> },
}

struct Walker<'a> {
    field: &'a Field,
    n: usize,
    p: u64,
    /// Number of base-p digits, `k * v`.
    digits: usize,
    expanded: Vec<Vec<Elem>>,
    rows: Rows,
}

impl<'a> Walker<'a> {
    fn new(code: &'a LinearCode) -> Self {
        let field = code.field().as_ref();
        let (p, v) = (field.p() as u64, field.v() as usize);
        let n = code.len();
        // The basis element x^t of GF(p^v) over GF(p) has index p^t.
        let mut expanded: Vec<Vec<Elem>> = Vec::with_capacity(code.dim() * v);
        for row in code.generator() {
            for t in 0..v {
                let alpha = p.pow(t as u32) as Elem;
                expanded.push(row.iter().map(|&g| field.mul(alpha, g)).collect());
            }
        }
        let rows = if p == 2 {
            let words = n.div_ceil(64).max(1);
            let mut data = vec![0u64; expanded.len() * v * words];
            for (r, row) in expanded.iter().enumerate() {
                for (c, &e) in row.iter().enumerate() {
                    for bit in 0..v {
                        if (e >> bit) & 1 == 1 {
                            data[(r * v + bit) * words + c / 64] |= 1 << (c % 64);
                        }
                    }
                }
            }
            Rows::Planes { v, words, data }
        } else if p == 3 && v == 1 {
            let words = n.div_ceil(64).max(1);
            let mut data = vec![0u64; expanded.len() * 2 * words];
            for (r, row) in expanded.iter().enumerate() {
                for (c, &e) in row.iter().enumerate() {
                    if e != 0 {
                        data[(2 * r + e as usize - 1) * words + c / 64] |= 1 << (c % 64);
                    }
                }
            }
            Rows::Ternary { words, data }
        } else {
            let support = expanded
                .iter()
                .map(|row| row.iter().enumerate().filter(|(_, &e)| e != 0).map(|(c, _)| c).collect())
                .collect();
            Rows::Dense { rows: expanded.clone(), support }
        };
        Walker { field, n, p, digits: expanded.len(), expanded, rows }
    }

    fn total(&self) -> u128 {
        (self.p as u128).pow(self.digits as u32)
    }

    /// Gray-code coefficients of index `s`.
    fn gray_digits(&self, s: u64) -> Vec<u64> {
        let p = self.p;
        let mut d = Vec::with_capacity(self.digits + 1);
        let mut t = s;
        for _ in 0..self.digits {
            d.push(t % p);
            t /= p;
        }
        d.push(0);
        (0..self.digits).map(|i| (d[i] + p - d[i + 1]) % p).collect()
    }

    /// Codeword at Gray index `s`, as dense elements.
    fn codeword_at(&self, s: u64) -> Vec<Elem> {
        let f = self.field;
        let mut cw = vec![0 as Elem; self.n];
        for (g, row) in self.gray_digits(s).into_iter().zip(&self.expanded) {
            if g == 0 {
                continue;
            }
            for (c, &e) in cw.iter_mut().zip(row) {
                *c = f.add(*c, f.mul(g as Elem, e));
            }
        }
        cw
    }

    /// Weight histogram over Gray indices `start..start + count`.
    fn histogram(&self, start: u64, count: u64) -> Vec<u64> {
        let mut hist = vec![0u64; self.n + 1];
        if count == 0 {
            return hist;
        }
        let cw = self.codeword_at(start);
        match &self.rows {
            Rows::Planes { v, words, data } => {
                let (v, words) = (*v, *words);
                let stride = v * words;
                let mut planes = vec![0u64; stride];
                for (c, &e) in cw.iter().enumerate() {
                    for bit in 0..v {
                        if (e >> bit) & 1 == 1 {
                            planes[bit * words + c / 64] |= 1 << (c % 64);
                        }
                    }
                }
                let weight = |planes: &[u64]| -> usize {
                    (0..words)
                        .map(|w| (0..v).fold(0u64, |acc, b| acc | planes[b * words + w]).count_ones() as usize)
                        .sum()
                };
                hist[weight(&planes)] += 1;
                if self.p == 2 && v == 1 && words <= 2 {
                    // Hot path for binary codes up to length 128.
                    let mut lo = planes[0];
                    let mut hi = if words == 2 { planes[1] } else { 0 };
                    for t in start..start + count - 1 {
                        let i = t.trailing_ones() as usize;
                        lo ^= data[i * words];
                        if words == 2 {
                            hi ^= data[i * words + 1];
                        }
                        hist[(lo.count_ones() + hi.count_ones()) as usize] += 1;
                    }
                } else {
                    for t in start..start + count - 1 {
                        let i = t.trailing_ones() as usize;
                        let row = &data[i * stride..(i + 1) * stride];
                        for (x, &r) in planes.iter_mut().zip(row) {
                            *x ^= r;
                        }
                        hist[weight(&planes)] += 1;
                    }
                }
            }
            Rows::Ternary { words, data } => {
                let words = *words;
                let (mut ones, mut twos) = (vec![0u64; words], vec![0u64; words]);
                for (c, &e) in cw.iter().enumerate() {
                    match e {
                        1 => ones[c / 64] |= 1 << (c % 64),
                        2 => twos[c / 64] |= 1 << (c % 64),
                        _ => {}
                    }
                }
                let weight = |ones: &[u64], twos: &[u64]| -> usize {
                    ones.iter().zip(twos).map(|(a, b)| (a | b).count_ones() as usize).sum()
                };
                hist[weight(&ones, &twos)] += 1;
                let mut digits = base_p_digits(start, 3, self.digits + 1);
                for _ in 1..count {
                    let i = increment(&mut digits, 3);
                    let row = &data[2 * i * words..2 * (i + 1) * words];
                    let (r1, r2) = row.split_at(words);
                    for w in 0..words {
                        let (x1, x2, y1, y2) = (ones[w], twos[w], r1[w], r2[w]);
                        let (x0, y0) = (!(x1 | x2), !(y1 | y2));
                        ones[w] = (x0 & y1) | (x1 & y0) | (x2 & y2);
                        twos[w] = (x0 & y2) | (x2 & y0) | (x1 & y1);
                    }
                    hist[weight(&ones, &twos)] += 1;
                }
            }
            Rows::Dense { rows, support } => {
                let f = self.field;
                let p = self.p;
                let mut cw = cw;
                let mut weight = cw.iter().filter(|&&e| e != 0).count();
                hist[weight] += 1;
                let mut digits = base_p_digits(start, p, self.digits + 1);
                for _ in 1..count {
                    let i = increment(&mut digits, p);
                    let row = &rows[i];
                    for &c in &support[i] {
                        let old = cw[c];
                        let new = f.add(old, row[c]);
                        cw[c] = new;
                        weight = weight + (new != 0) as usize - (old != 0) as usize;
                    }
                    hist[weight] += 1;
                }
            }
        }
        hist
    }
}

fn base_p_digits(mut t: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = t % p;
            t /= p;
            d
        })
        .collect()
}

/// Adds one to a little-endian base-p counter and returns the carry position,
/// which is the Gray coefficient that changes on this step.
#[inline]
fn increment(digits: &mut [u64], p: u64) -> usize {
    let mut i = 0;
    while digits[i] == p - 1 {
        digits[i] = 0;
        i += 1;
    }
    digits[i] += 1;
    i
}

fn check_budget(code: &LinearCode, budget: u128) -> Result<u128, CodeError> {
    let count = (code.q() as u128)
        .checked_pow(code.dim() as u32)
        .unwrap_or(u128::MAX);
    if count > budget {
        Err(CodeError::TooLarge { count, budget })
    } else {
        Ok(count)
    }
}

/// Weight distribution from `ranges` disjoint index ranges, enumerated in
/// parallel and summed. The result does not depend on `ranges`.
pub fn enumerate_ranges(code: &LinearCode, budget: u128, ranges: usize) -> Result<WeightEnumerator, CodeError> {
    check_budget(code, budget)?;
    let walker = Walker::new(code);
    let total = walker.total() as u64;
    let ranges = (ranges.max(1) as u64).min(total);
    let chunk = total.div_ceil(ranges);
    let bounds: Vec<(u64, u64)> = (0..ranges)
        .map(|r| (r * chunk, ((r + 1) * chunk).min(total)))
        .filter(|(s, e)| s < e)
        .collect();
    let hist = bounds
        .par_iter()
        .map(|&(s, e)| walker.histogram(s, e - s))
        .reduce(
            || vec![0u64; code.len() + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(WeightEnumerator::from_counts(&hist).with_provenance(code.q() as u64, code.dim()))
}

/// Exact weight enumerator by enumerating all `q^k` codewords.
pub fn weight_enumerator(code: &LinearCode, budget: u128) -> Result<WeightEnumerator, CodeError> {
    let count = check_budget(code, budget)?;
    let workers = rayon::current_num_threads() as u128 * 4;
    let ranges = (count / MIN_RANGE as u128).clamp(1, workers.max(1)) as usize;
    enumerate_ranges(code, budget, ranges)
}

/// Enumerates the code directly when it fits the budget, otherwise enumerates
/// its dual and applies the MacWilliams transform.
pub fn weight_enumerator_smart(code: &LinearCode, budget: u128) -> Result<WeightEnumerator, CodeError> {
    match check_budget(code, budget) {
        Ok(_) => weight_enumerator(code, budget),
        Err(direct) => {
            let dual = code.dual();
            match check_budget(&dual, budget) {
                Ok(_) => {
                    let wd = weight_enumerator(&dual, budget)?;
                    super::macwilliams(&wd, code.q() as u64, dual.dim())
                }
                Err(_) => Err(direct),
            }
        }
    }
}
