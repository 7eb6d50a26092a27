//! Complex tables over Boolean variables.
//!
//! A [`Factor`] of rank `r` stores `2^r` values; its variable labels are
//! strictly ascending and the first label is the most significant bit of the
//! table index.

use std::fmt::Debug;

use num_complex::Complex;
use num_traits::{Float, FromPrimitive};

use crate::exec::{for_each_chunk_mut, Execution};

/// Floating-point type usable for factor tables.
pub trait Real: Float + FromPrimitive + Send + Sync + Default + Debug + 'static {}
impl Real for f32 {}
impl Real for f64 {}

#[derive(Debug, Clone, PartialEq)]
pub struct Factor<T = f64> {
    vars: Vec<usize>,
    values: Vec<Complex<T>>,
}

impl<T: Real> Factor<T> {
    /// Panics unless `vars` is strictly ascending and `values.len() == 2^vars.len()`.
    pub fn new(vars: Vec<usize>, values: Vec<Complex<T>>) -> Self {
        assert!(vars.windows(2).all(|w| w[0] < w[1]), "factor variables must ascend");
        assert_eq!(values.len(), 1usize << vars.len(), "table size must be 2^rank");
        Factor { vars, values }
    }

    pub fn scalar(value: Complex<T>) -> Self {
        Factor {
            vars: Vec::new(),
            values: vec![value],
        }
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    /// Value of a rank-0 factor.
    pub fn as_scalar(&self) -> Option<Complex<T>> {
        (self.vars.is_empty()).then(|| self.values[0])
    }

    pub fn size_bytes(&self) -> u64 {
        (self.values.len() * std::mem::size_of::<Complex<T>>()) as u64
    }

    /// Value at an assignment given in `vars` order.
    pub fn get(&self, bits: &[bool]) -> Complex<T> {
        assert_eq!(bits.len(), self.rank());
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        self.values[idx]
    }

    /// Value under a full assignment indexed by variable label.
    pub fn eval(&self, assignment: &[bool]) -> Complex<T> {
        let idx = self
            .vars
            .iter()
            .fold(0usize, |acc, &v| (acc << 1) | assignment[v] as usize);
        self.values[idx]
    }

    /// Slice `var = bit`, dropping the variable. No-op if `var` is absent.
    pub fn fix(&self, var: usize, bit: bool) -> Self {
        let Some(pos) = self.vars.iter().position(|&v| v == var) else {
            return self.clone();
        };
        let shift = self.rank() - 1 - pos;
        let low_mask = (1usize << shift) - 1;
        let values = (0..self.values.len() / 2)
            .map(|i| {
                let hi = (i & !low_mask) << 1;
                self.values[hi | ((bit as usize) << shift) | (i & low_mask)]
            })
            .collect();
        let mut vars = self.vars.clone();
        vars.remove(pos);
        Factor { vars, values }
    }

    /// Rename variables through `map` (injective on this factor's labels),
    /// re-sorting labels and permuting the table to keep the layout invariant.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Self {
        let r = self.rank();
        let new: Vec<usize> = self.vars.iter().map(|&v| map(v)).collect();
        let mut perm: Vec<usize> = (0..r).collect();
        perm.sort_by_key(|&i| new[i]);
        let vars: Vec<usize> = perm.iter().map(|&i| new[i]).collect();
        assert!(vars.windows(2).all(|w| w[0] < w[1]), "relabel must be injective");
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return Factor {
                vars,
                values: self.values.clone(),
            };
        }
        // new position k holds old position perm[k]
        let mut values = vec![Complex::new(T::zero(), T::zero()); self.values.len()];
        for (new_idx, slot) in values.iter_mut().enumerate() {
            let mut old_idx = 0usize;
            for (k, &p) in perm.iter().enumerate() {
                let bit = (new_idx >> (r - 1 - k)) & 1;
                old_idx |= bit << (r - 1 - p);
            }
            *slot = self.values[old_idx];
        }
        Factor { vars, values }
    }

    /// Sum over `var`.
    pub fn sum_out(&self, var: usize) -> Self {
        let pos = self
            .vars
            .iter()
            .position(|&v| v == var)
            .expect("variable not in factor");
        let a = self.fix(var, false);
        let b = self.fix(var, true);
        let values = a.values.iter().zip(&b.values).map(|(x, y)| *x + *y).collect();
        let mut vars = self.vars.clone();
        vars.remove(pos);
        Factor { vars, values }
    }

    /// Elementwise product with broadcasting over the union of variables.
    pub fn product(factors: &[&Factor<T>]) -> Self {
        contract(factors, false, Execution::Sequential)
    }

    /// Broadcast product of all factors followed by summation over the lowest
    /// variable among them.
    pub fn product_sum_first(factors: &[&Factor<T>], exec: Execution) -> Self {
        contract(factors, true, exec)
    }

    pub fn cast<U: Real>(&self) -> Factor<U> {
        Factor {
            vars: self.vars.clone(),
            values: self
                .values
                .iter()
                .map(|c| {
                    Complex::new(
                        U::from_f64(c.re.to_f64().unwrap()).unwrap(),
                        U::from_f64(c.im.to_f64().unwrap()).unwrap(),
                    )
                })
                .collect(),
        }
    }
}

const LUT_BITS: usize = 8;
const LUT_SIZE: usize = 1 << LUT_BITS;
const CHUNK: usize = 1 << 12;

/// Maps output-table indices to one input factor's table index.
struct Gather {
    /// `luts[c][byte]`: index contribution of output bits `[8c, 8c + 8)`.
    luts: Vec<[usize; LUT_SIZE]>,
    /// Contribution when the summed variable is 1 (0 if absent).
    summed_bit: usize,
}

impl Gather {
    fn new(factor_vars: &[usize], out_vars: &[usize], summed: Option<usize>) -> Self {
        let r = factor_vars.len();
        let out_r = out_vars.len();
        let chunks = out_r.div_ceil(LUT_BITS).max(1);
        let mut luts = vec![[0usize; LUT_SIZE]; chunks];
        // output bit position (from LSB) -> factor bit position (from LSB)
        let mut bit_map = vec![None; out_r];
        for (p, v) in factor_vars.iter().enumerate() {
            if let Ok(i) = out_vars.binary_search(v) {
                bit_map[out_r - 1 - i] = Some(r - 1 - p);
            }
        }
        for (c, lut) in luts.iter_mut().enumerate() {
            for (byte, slot) in lut.iter_mut().enumerate() {
                let mut idx = 0usize;
                for k in 0..LUT_BITS {
                    let ob = c * LUT_BITS + k;
                    if ob < out_r && (byte >> k) & 1 == 1 {
                        if let Some(fb) = bit_map[ob] {
                            idx |= 1 << fb;
                        }
                    }
                }
                *slot = idx;
            }
        }
        let summed_bit = match summed {
            Some(s) if factor_vars.first() == Some(&s) => 1 << (r - 1),
            _ => 0,
        };
        Gather { luts, summed_bit }
    }

    #[inline]
    fn high(&self, o: usize) -> usize {
        self.luts
            .iter()
            .enumerate()
            .skip(1)
            .map(|(c, lut)| lut[(o >> (c * LUT_BITS)) & (LUT_SIZE - 1)])
            .sum()
    }
}

fn contract<T: Real>(factors: &[&Factor<T>], sum_first: bool, exec: Execution) -> Factor<T> {
    let mut union: Vec<usize> = factors.iter().flat_map(|f| f.vars.iter().copied()).collect();
    union.sort_unstable();
    union.dedup();
    let summed = if sum_first { union.first().copied() } else { None };
    let out_vars: Vec<usize> = if sum_first && !union.is_empty() {
        union[1..].to_vec()
    } else {
        union.clone()
    };
    let gathers: Vec<Gather> = factors
        .iter()
        .map(|f| Gather::new(&f.vars, &out_vars, summed))
        .collect();
    let out_len = 1usize << out_vars.len();
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let branches: &[usize] = if summed.is_some() { &[0, 1] } else { &[0] };

    let mut out = vec![zero; out_len];
    for_each_chunk_mut(exec, &mut out, CHUNK, |ci, chunk| {
        let base = ci * CHUNK;
        let mut offsets = vec![0usize; factors.len()];
        for (bi, block) in chunk.chunks_mut(LUT_SIZE).enumerate() {
            let block_base = base + bi * LUT_SIZE;
            for (off, g) in offsets.iter_mut().zip(&gathers) {
                *off = g.high(block_base);
            }
            for (lo, slot) in block.iter_mut().enumerate() {
                let mut acc = zero;
                for &b in branches {
                    let mut prod = one;
                    for ((f, g), off) in factors.iter().zip(&gathers).zip(&offsets) {
                        let idx = off + g.luts[0][lo] + if b == 1 { g.summed_bit } else { 0 };
                        prod = prod * f.values[idx];
                    }
                    acc = acc + prod;
                }
                *slot = acc;
            }
        }
    });
    Factor {
        vars: out_vars,
        values: out,
    }
}
