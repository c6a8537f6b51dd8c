//! Truncated graded Tor by linear algebra on graded pieces.
//!
//! A minimal free resolution of `M = R/I` is built one internal degree at a
//! time: in degree `j` the kernel of the previous map is compared with the part
//! already generated by lower-degree generators, and whatever is missing becomes
//! new generators of degree `j`. Tensoring with `N = R/J` and taking ranks gives
//! `dim Tor_i(M, N)_j`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{FreeLayout, GradedQuotient};
use crate::arith::IntPoly;
use crate::error::{Error, Result};
use crate::hilbert::hilbert_series;
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::ring::{GradedRing, MultiPoly, PolyRing};
use crate::scalar::Field;

/// One homological step `F_i -> F_{i-1}`, truncated at the resolution's `d_max`.
#[derive(Clone, Debug)]
pub struct ResolutionStep<F: Field> {
    layout: FreeLayout,
    /// `maps[j][s]`: image of coordinate `s` of `(F_i)_j` in `(F_{i-1})_j`
    /// (for `i = 0`, in `M_j`).
    maps: Vec<Vec<SparseVec<F>>>,
    target_dims: Vec<usize>,
}

impl<F: Field> ResolutionStep<F> {
    pub fn layout(&self) -> &FreeLayout {
        &self.layout
    }

    pub fn gen_degrees(&self) -> &[usize] {
        self.layout.gen_degrees()
    }

    /// Matrix of the map in internal degree `j`, column by column.
    pub fn map_in_degree(&self, j: usize) -> &[SparseVec<F>] {
        &self.maps[j]
    }

    pub fn target_dim(&self, j: usize) -> usize {
        self.target_dims[j]
    }

    /// Image of generator `g` in the previous free module, in degree `deg g`.
    pub fn image_of_generator(&self, g: usize) -> &SparseVec<F> {
        let a = self.layout.gen_degrees()[g];
        &self.maps[a][self.layout.offset(a, g)]
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedResolution<F: Field> {
    ring: GradedQuotient<F>,
    module: GradedQuotient<F>,
    i_max: usize,
    d_max: usize,
    steps: Vec<ResolutionStep<F>>,
}

impl<F: Field> TruncatedResolution<F> {
    pub fn i_max(&self) -> usize {
        self.i_max
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    pub fn ring_pieces(&self) -> &GradedQuotient<F> {
        &self.ring
    }

    pub fn module_pieces(&self) -> &GradedQuotient<F> {
        &self.module
    }

    /// Step `i` for `0 <= i <= i_max`; step 0 is the projection `R -> M`.
    pub fn step(&self, i: usize) -> &ResolutionStep<F> {
        &self.steps[i]
    }

    pub fn steps(&self) -> &[ResolutionStep<F>] {
        &self.steps
    }

    pub fn betti_degrees(&self, i: usize) -> &[usize] {
        self.steps[i].gen_degrees()
    }

    /// Smallest homological index with no generators in degrees `<= d_max`.
    pub fn length(&self) -> Option<usize> {
        self.steps.iter().position(|s| s.gen_degrees().is_empty())
    }
}

/// Minimal graded free resolution of `R / I` through homological degree `i_max`,
/// exact in internal degrees `<= d_max`.
pub fn truncated_resolution<F: Field>(
    ring: &GradedRing<F>,
    ideal: &[MultiPoly<F>],
    i_max: usize,
    d_max: usize,
) -> Result<TruncatedResolution<F>> {
    let rq = GradedQuotient::new(ring, &[], d_max)?;
    let mq = GradedQuotient::new(ring, ideal, d_max)?;

    let mut layout = FreeLayout::new();
    if mq.dim(0) > 0 {
        layout.add_generator(0);
    }
    let mut maps = Vec::with_capacity(d_max + 1);
    for j in 0..=d_max {
        layout.close_degree(&rq);
        let cols = if layout.gens_in(j) == 1 {
            rq.basis(j)
                .iter()
                .map(|m| {
                    let p = MultiPoly::monomial(rq.groebner().ring(), m.clone(), F::one());
                    mq.coords(&p, j).expect("monomial is homogeneous")
                })
                .collect()
        } else {
            Vec::new()
        };
        maps.push(cols);
    }
    let first = ResolutionStep {
        layout,
        maps,
        target_dims: (0..=d_max).map(|j| mq.dim(j)).collect(),
    };

    let mut steps = vec![first];
    for _ in 1..=i_max {
        let next = next_step(&rq, steps.last().unwrap(), d_max);
        steps.push(next);
    }
    Ok(TruncatedResolution {
        ring: rq,
        module: mq,
        i_max,
        d_max,
        steps,
    })
}

fn next_step<F: Field>(rq: &GradedQuotient<F>, prev: &ResolutionStep<F>, d_max: usize) -> ResolutionStep<F> {
    let weights = rq.weights();
    let mut layout = FreeLayout::new();
    let mut maps: Vec<Vec<SparseVec<F>>> = Vec::with_capacity(d_max + 1);
    for j in 0..=d_max {
        let mut cols = Vec::new();
        for (g, &a) in layout.gen_degrees().iter().enumerate() {
            for t in 0..rq.dim(j - a) {
                let (k, t0) = rq.split(j - a, t).expect("positive degree");
                let lower = j - weights[k] as usize;
                let src = &maps[lower][layout.offset(lower, g) + t0];
                cols.push(prev.layout.mul_var(rq, k, lower, src));
            }
        }
        let mut span = Echelon::new();
        for c in &cols {
            span.insert(c);
        }
        for kv in kernel(&prev.maps[j], prev.layout.dim(j).max(prev.target_dims[j])) {
            if span.insert(&kv) {
                layout.add_generator(j);
                cols.push(kv);
            }
        }
        layout.close_degree(rq);
        maps.push(cols);
    }
    let target_dims = (0..=d_max).map(|j| prev.layout.dim(j)).collect();
    ResolutionStep {
        layout,
        maps,
        target_dims,
    }
}

/// `dim_k Tor_i(R/I, R/J)_j` for `i <= i_max`, `j <= d_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorTable {
    i_max: usize,
    d_max: usize,
    entries: Vec<Vec<u64>>,
    series_complete_through: usize,
    max_weight: usize,
}

impl TorTable {
    pub fn i_max(&self) -> usize {
        self.i_max
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// Every stored entry is exact; anything outside the table is unknown.
    pub fn is_complete(&self, i: usize, j: usize) -> bool {
        i <= self.i_max && j <= self.d_max
    }

    /// Largest `j` such that `Tor_i(M, N)_j` vanishes for every `i > i_max`.
    pub fn series_complete_through(&self) -> usize {
        self.series_complete_through
    }

    /// `Tor_i` vanishes in the top `max_weight + 1` computed degrees.
    pub fn row_settled(&self, i: usize) -> bool {
        if i > self.i_max {
            return false;
        }
        let from = self.d_max.saturating_sub(self.max_weight);
        self.entries[i][from..].iter().all(|&x| x == 0)
    }

    pub fn row_total(&self, i: usize) -> u64 {
        self.entries[i].iter().sum()
    }
}

/// Tor table of `(R/I, R/J)` through `i_max` and `d_max`.
pub fn tor_table<F: Field>(
    ring: &GradedRing<F>,
    i_ideal: &[MultiPoly<F>],
    j_ideal: &[MultiPoly<F>],
    i_max: usize,
    d_max: usize,
) -> Result<TorTable> {
    let res = truncated_resolution(ring, i_ideal, i_max + 1, d_max)?;
    let nq = GradedQuotient::new(ring, j_ideal, d_max)?;
    Ok(tor_from_resolution(&res, &nq))
}

pub fn tor_from_resolution<F: Field>(res: &TruncatedResolution<F>, nq: &GradedQuotient<F>) -> TorTable {
    let rq = &res.ring;
    let d_max = res.d_max;
    let i_top = res.i_max;
    assert!(i_top >= 1, "resolution must reach one step past the table");
    let weights = nq.weights();

    // R_a -> N_a on standard-monomial coordinates
    let proj: Vec<Vec<SparseVec<F>>> = (0..=d_max)
        .map(|a| {
            rq.basis(a)
                .iter()
                .map(|m| {
                    let p = MultiPoly::monomial(rq.groebner().ring(), m.clone(), F::one());
                    nq.coords(&p, a).expect("monomial is homogeneous")
                })
                .collect()
        })
        .collect();

    let chains: Vec<FreeLayout> = res
        .steps
        .iter()
        .map(|s| {
            let mut lay = FreeLayout::new();
            for &a in s.gen_degrees() {
                lay.add_generator(a);
            }
            for _ in 0..=d_max {
                lay.close_degree(nq);
            }
            lay
        })
        .collect();

    // ranks[i][j] = rank of d_i ⊗ N in degree j, for 1 <= i <= i_top
    let mut ranks = vec![vec![0usize; d_max + 1]; i_top + 1];
    for i in 1..=i_top {
        let step = &res.steps[i];
        let src = &chains[i];
        let dst = &chains[i - 1];
        let flay = &res.steps[i - 1].layout;
        let mut bd: Vec<Vec<SparseVec<F>>> = Vec::with_capacity(d_max + 1);
        for j in 0..=d_max {
            let mut cols = Vec::with_capacity(src.dim(j));
            for (g, &a) in step.gen_degrees().iter().enumerate().take(src.gens_in(j)) {
                for t in 0..nq.dim(j - a) {
                    if j == a {
                        let img = step.image_of_generator(g);
                        let mut v: SparseVec<F> = Vec::new();
                        for (idx, c) in img {
                            let (h, loc) = flay.locate(a, *idx);
                            let b = flay.gen_degrees()[h];
                            let shift = dst.offset(a, h);
                            let piece: SparseVec<F> = proj[a - b][loc]
                                .iter()
                                .map(|(x, y)| (x + shift, y.clone()))
                                .collect();
                            v = crate::linalg::axpy(&v, c, &piece);
                        }
                        cols.push(v);
                    } else {
                        let (k, t0) = nq.split(j - a, t).expect("positive degree");
                        let lower = j - weights[k] as usize;
                        let from = &bd[lower][src.offset(lower, g) + t0];
                        cols.push(dst.mul_var(nq, k, lower, from));
                    }
                }
            }
            ranks[i][j] = crate::linalg::rank(&cols);
            bd.push(cols);
        }
    }

    let i_max = i_top - 1;
    let entries = (0..=i_max)
        .map(|i| {
            (0..=d_max)
                .map(|j| {
                    let out = if i == 0 { 0 } else { ranks[i][j] };
                    (chains[i].dim(j) - out - ranks[i + 1][j]) as u64
                })
                .collect()
        })
        .collect();
    let delta = res.steps[i_top].gen_degrees().first().copied();
    let series_complete_through = delta.map_or(d_max, |d| d_max.min(d - 1));
    TorTable {
        i_max,
        d_max,
        entries,
        series_complete_through,
        max_weight: weights.iter().copied().max().unwrap_or(1) as usize,
    }
}

/// `Σ_i (-1)^i dim Tor_i(M,N)_j` for `j` up to
/// [`TorTable::series_complete_through`]; the vector has that many entries plus one.
pub fn chi_truncated(tt: &TorTable) -> Vec<BigInt> {
    (0..=tt.series_complete_through)
        .map(|j| {
            tt.entries.iter().enumerate().fold(BigInt::zero(), |acc, (i, row)| {
                let x = BigInt::from(row[j]);
                if i % 2 == 0 {
                    acc + x
                } else {
                    acc - x
                }
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveCoeff {
    pub value: BigInt,
    pub complete: bool,
}

/// `(-1)^i length Tor_i(M, N)` for `i = 0..=n`. A coefficient is marked complete
/// when its row vanishes in the top degrees of the table.
pub fn naive_series(tt: &TorTable, n: usize) -> Vec<NaiveCoeff> {
    (0..=n)
        .map(|i| {
            if i > tt.i_max {
                return NaiveCoeff {
                    value: BigInt::zero(),
                    complete: false,
                };
            }
            let total = BigInt::from(tt.row_total(i));
            NaiveCoeff {
                value: if i % 2 == 0 { total } else { -total },
                complete: tt.row_settled(i),
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Gulliksen {
    pub value: BigInt,
    pub table: TorTable,
    /// `HS_{S/I} HS_{S/J} / HS_S`, a polynomial when the intersection is proper.
    pub closed_form: IntPoly,
}

const GULLIKSEN_DMAX_CAP: usize = 1024;

/// `Σ (-1)^i length Tor^S_i(S/I, S/J)` over the polynomial ring `S` itself.
pub fn gulliksen_chi<F: Field>(
    ambient: &Arc<PolyRing>,
    i_ideal: &[MultiPoly<F>],
    j_ideal: &[MultiPoly<F>],
) -> Result<Gulliksen> {
    let s = GradedRing::polynomial(ambient.clone());
    let both: Vec<MultiPoly<F>> = i_ideal.iter().chain(j_ideal).cloned().collect();
    if hilbert_series(&s, &both)?.length().is_none() {
        return Err(Error::NotProperAmbient);
    }
    let hm = hilbert_series(&s, i_ideal)?;
    let hn = hilbert_series(&s, j_ideal)?;
    let closed = (hm.numerator() * hn.numerator())
        .div_exact(&hm.denominator())
        .ok_or(Error::NotProperAmbient)?;

    let n = ambient.nvars();
    let gen_deg = both
        .iter()
        .filter_map(|p| p.leading_monomial().map(|m| m.degree(ambient.weights())))
        .max()
        .unwrap_or(1);
    let mut d_max = (2 * gen_deg).max(4);
    let res_i = |d| truncated_resolution(&s, i_ideal, n + 1, d);
    while d_max <= GULLIKSEN_DMAX_CAP {
        let res = res_i(d_max)?;
        let nq = GradedQuotient::new(&s, j_ideal, d_max)?;
        let tt = tor_from_resolution(&res, &nq);
        let settled = (0..=tt.i_max()).all(|i| tt.row_settled(i));
        let fits = closed.degree().is_none_or(|d| d + tt.max_weight < d_max);
        if settled && fits {
            let series = chi_truncated(&tt);
            let agrees = series
                .iter()
                .enumerate()
                .all(|(j, c)| *c == closed.coeff(j));
            let value = naive_series(&tt, n).into_iter().map(|c| c.value).sum::<BigInt>();
            if agrees && value == closed.eval_at_one() {
                return Ok(Gulliksen {
                    value,
                    table: tt,
                    closed_form: closed,
                });
            }
        }
        d_max *= 2;
    }
    Err(Error::NoStabilization(GULLIKSEN_DMAX_CAP))
}
