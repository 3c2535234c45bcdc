//! Genus-zero equivariant Gromov–Witten invariants by localization over
//! decorated trees.
//!
//! Invariants can be computed symbolically (exact sums of rational functions
//! with linear denominators) or by exact evaluation at random rational points
//! followed by dense interpolation in the expected degree, with extra points
//! checking the fit. Markings are summed over all maps from the markings to
//! tree vertices, grouped by the number of markings and ψ-exponent per vertex.

pub mod hfactor;
mod marking;
pub mod trees;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::interp::{count_monomials, interpolate_homogeneous, PointStream};
use crate::algebra::{Factored, FormProduct, MultiPoly, RatForm, RationalFunction};
use crate::cohomology::{euler_at, EquivariantClass};
use crate::curves::{CurveClass, CurveLattice};
use crate::error::{Error, Result};

pub use hfactor::{h_factor, h_factor_product, HMode};
pub use trees::{enumerate_trees, DecoratedTree, TreeEdge};

/// An insertion ev_i^*(class) · ψ_i^psi at one marking.
#[derive(Clone, Debug)]
pub struct Insertion {
    pub class: EquivariantClass,
    pub psi: u32,
}

impl Insertion {
    pub fn ev(class: EquivariantClass) -> Self {
        Insertion { class, psi: 0 }
    }

    pub fn with_psi(class: EquivariantClass, psi: u32) -> Self {
        Insertion { class, psi }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Evaluate and interpolate when the expected degree is known, otherwise
    /// (or if the fit fails) fall back to the symbolic sum.
    Auto,
    Symbolic,
    Evaluate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkingSum {
    /// Sum over all maps from markings to tree vertices, divided by |Aut| of the unmarked tree.
    Grouped,
    /// Sum over isomorphism classes of marked trees with automorphisms counted directly.
    PerIsomorphismClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnstablePsi {
    /// ψ at a marking on a vertex with fewer than three special points is an error.
    Reject,
    /// Use the cotangent weight -α(e, v) of the edge curve at that point.
    Cotangent,
}

#[derive(Clone, Debug)]
pub struct GwOptions {
    pub mode: Mode,
    pub h: HMode,
    pub markings: MarkingSum,
    pub unstable_psi: UnstablePsi,
    pub seed: u64,
    /// Extra evaluation points confirming an interpolated result.
    pub checks: usize,
    /// Largest interpolation problem attempted (number of monomials).
    pub max_monomials: u128,
}

impl Default for GwOptions {
    fn default() -> Self {
        GwOptions {
            mode: Mode::Auto,
            h: HMode::ConnectionFree,
            markings: MarkingSum::Grouped,
            unstable_psi: UnstablePsi::Reject,
            seed: 0x6b6d,
            checks: 2,
            max_monomials: 300,
        }
    }
}

impl GwOptions {
    pub fn symbolic() -> Self {
        GwOptions { mode: Mode::Symbolic, ..Default::default() }
    }

    pub fn evaluate() -> Self {
        GwOptions { mode: Mode::Evaluate, ..Default::default() }
    }
}

pub(crate) enum EvalError {
    Singular,
    Fatal(Error),
}

impl From<Error> for EvalError {
    fn from(e: Error) -> Self {
        EvalError::Fatal(e)
    }
}

type Eval<T> = std::result::Result<T, EvalError>;

/// Field in which contributions are accumulated.
pub(crate) trait Backend: Sync {
    type V: Clone + Send + Sync;
    fn zero(&self) -> Self::V;
    fn rational(&self, q: &BigRational) -> Self::V;
    fn product(&self, p: &FormProduct) -> Eval<Self::V>;
    fn recip_sum(&self, forms: &[RatForm]) -> Eval<Self::V>;
    fn class_value(&self, f: &RationalFunction) -> Eval<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn pow(&self, a: &Self::V, k: u32) -> Self::V;
    fn is_zero(&self, a: &Self::V) -> bool;
}

struct Symbolic {
    nvars: usize,
}

impl Backend for Symbolic {
    type V = Factored;
    fn zero(&self) -> Factored {
        Factored::zero(self.nvars)
    }
    fn rational(&self, q: &BigRational) -> Factored {
        Factored::from_poly(MultiPoly::constant(self.nvars, q.clone()))
    }
    fn product(&self, p: &FormProduct) -> Eval<Factored> {
        Ok(p.to_factored(self.nvars))
    }
    fn recip_sum(&self, forms: &[RatForm]) -> Eval<Factored> {
        let mut s = Factored::zero(self.nvars);
        for f in forms {
            let mut p = FormProduct::one();
            p.mul_form(f, -1);
            s = s.add(&p.to_factored(self.nvars));
        }
        Ok(s)
    }
    fn class_value(&self, f: &RationalFunction) -> Eval<Factored> {
        f.as_polynomial()
            .map(Factored::from_poly)
            .ok_or_else(|| EvalError::Fatal(Error::Unsupported("symbolic sums need polynomial insertions".into())))
    }
    fn add(&self, a: &Factored, b: &Factored) -> Factored {
        a.add(b)
    }
    fn mul(&self, a: &Factored, b: &Factored) -> Factored {
        a.mul(b)
    }
    fn pow(&self, a: &Factored, k: u32) -> Factored {
        a.pow(k)
    }
    fn is_zero(&self, a: &Factored) -> bool {
        a.is_zero()
    }
}

struct AtPoint {
    point: Vec<BigRational>,
}

impl Backend for AtPoint {
    type V = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn rational(&self, q: &BigRational) -> BigRational {
        q.clone()
    }
    fn product(&self, p: &FormProduct) -> Eval<BigRational> {
        p.eval(&self.point).ok_or(EvalError::Singular)
    }
    fn recip_sum(&self, forms: &[RatForm]) -> Eval<BigRational> {
        let mut s = BigRational::zero();
        for f in forms {
            let x = f.eval(&self.point);
            if x.is_zero() {
                return Err(EvalError::Singular);
            }
            s += x.recip();
        }
        Ok(s)
    }
    fn class_value(&self, f: &RationalFunction) -> Eval<BigRational> {
        f.eval(&self.point).map_err(|_| EvalError::Singular)
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn pow(&self, a: &BigRational, k: u32) -> BigRational {
        num_traits::pow(a.clone(), k as usize)
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// Per-tree data independent of insertions.
pub(crate) struct TreeData {
    pub tree: DecoratedTree,
    /// (1/|Aut|) ∏_e h(e, d)/d ∏_v e(T_v)^{val-1} ∏_{(e,v)} α_{(e,v)}^{-1}; without the 1/|Aut|.
    pub base: FormProduct,
    /// α(e, v) / d_e for the tree edges at each tree vertex.
    pub flags: Vec<Vec<RatForm>>,
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// All T-fixed loci for a curve class, ready to be integrated against insertions.
pub struct FixedLoci {
    lattice: CurveLattice,
    beta: CurveClass,
    pub(crate) trees: Vec<TreeData>,
}

impl FixedLoci {
    pub fn new(lattice: &CurveLattice, beta: &[i64], h: &HMode) -> Result<Self> {
        let g = lattice.graph().clone();
        let trees = enumerate_trees(lattice, beta)?;
        let mut hcache: HashMap<(usize, u32), FormProduct> = HashMap::new();
        let mut data = Vec::with_capacity(trees.len());
        for t in trees {
            let mut base = FormProduct::one();
            for e in &t.edges {
                let key = (e.graph_edge, e.degree);
                if !hcache.contains_key(&key) {
                    hcache.insert(key, h_factor_product(&g, 2 * e.graph_edge, e.degree, h)?);
                }
                base = base.mul(&hcache[&key]);
                base.scale(&BigRational::new(BigInt::one(), BigInt::from(e.degree)));
            }
            let adj = t.adjacency();
            let mut flags = Vec::with_capacity(t.num_vertices());
            for (v, nb) in adj.iter().enumerate() {
                let p = t.vertex_image[v];
                let val = nb.len() as i32;
                let euler = euler_at(&g, p);
                for _ in 0..(val - 1).max(0) {
                    base = base.mul(&euler);
                }
                if val == 0 {
                    base = base.mul(&euler.inv());
                }
                let mut fl = Vec::with_capacity(nb.len());
                for &(ei, u) in nb {
                    let q = t.vertex_image[u];
                    let f = g.flag_towards(p, q).expect("tree edges map to graph edges");
                    let d = t.edges[ei].degree;
                    let rf = RatForm::new(g.weight(f), BigRational::new(BigInt::one(), BigInt::from(d))).unwrap();
                    base.mul_form(&rf, -1);
                    fl.push(rf);
                }
                flags.push(fl);
            }
            data.push(TreeData { tree: t, base, flags });
        }
        Ok(FixedLoci { lattice: lattice.clone(), beta: beta.to_vec(), trees: data })
    }

    pub fn num_trees(&self) -> usize {
        self.trees.len()
    }

    pub fn trees(&self) -> impl Iterator<Item = &DecoratedTree> {
        self.trees.iter().map(|t| &t.tree)
    }

    /// Expected degree of the invariant in the torus weights, if the insertions are homogeneous.
    pub fn expected_degree(&self, ins: &[Insertion]) -> Option<i64> {
        let g = self.lattice.graph();
        let c1 = self.lattice.chern_of_class(&self.beta).ok()?;
        let vdim = g.valency() as i64 - 3 + c1 + ins.len() as i64;
        let mut total = 0i64;
        for i in ins {
            if i.class.is_zero() {
                return Some(0);
            }
            total += i.class.degree()? as i64 + i.psi as i64;
        }
        Some(total - vdim)
    }

    pub fn integrate(&self, ins: &[Insertion], opts: &GwOptions) -> Result<RationalFunction> {
        let r = self.lattice.graph().rank();
        if ins.iter().any(|i| !std::sync::Arc::ptr_eq(i.class.graph(), self.lattice.graph()) && **i.class.graph() != **self.lattice.graph()) {
            return Err(Error::Precondition("insertion lives on a different graph".into()));
        }
        if self.beta.iter().all(|&x| x == 0) {
            return constant_map_invariant(ins);
        }
        if ins.iter().any(|i| i.class.is_zero()) || self.trees.is_empty() {
            return Ok(RationalFunction::zero(r));
        }
        match opts.mode {
            Mode::Symbolic => self.symbolic(ins, opts),
            Mode::Evaluate => self
                .by_evaluation(ins, opts)?
                .ok_or_else(|| Error::Unsupported("result is not a polynomial of the expected degree".into())),
            Mode::Auto => match self.by_evaluation(ins, opts)? {
                Some(p) => Ok(p),
                None => self.symbolic(ins, opts),
            },
        }
    }

    fn sum_with<B: Backend>(&self, b: &B, ins: &[Insertion], opts: &GwOptions) -> Eval<B::V> {
        let g = self.lattice.graph();
        let mut table: Vec<Vec<B::V>> = Vec::with_capacity(ins.len());
        for i in ins {
            let scale = BigRational::new(BigInt::one(), factorial(i.psi));
            let mut row = Vec::with_capacity(g.num_vertices());
            for w in 0..g.num_vertices() {
                let v = i.class.value(w);
                row.push(if v.is_zero() { b.zero() } else { b.mul(&b.class_value(v)?, &b.rational(&scale)) });
            }
            table.push(row);
        }
        let psi: Vec<u32> = ins.iter().map(|i| i.psi).collect();
        let parts: Vec<Eval<B::V>> = self
            .trees
            .par_iter()
            .map(|t| match opts.markings {
                MarkingSum::Grouped => marking::grouped(b, t, &table, &psi, opts.unstable_psi),
                MarkingSum::PerIsomorphismClass => marking::per_class(b, t, &table, &psi, opts.unstable_psi),
            })
            .collect();
        let mut vals = Vec::with_capacity(parts.len());
        for p in parts {
            vals.push(p?);
        }
        Ok(tree_sum(b, vals))
    }

    fn symbolic(&self, ins: &[Insertion], opts: &GwOptions) -> Result<RationalFunction> {
        let b = Symbolic { nvars: self.lattice.graph().rank() };
        match self.sum_with(&b, ins, opts) {
            Ok(v) => Ok(v.to_rational_function()),
            Err(EvalError::Fatal(e)) => Err(e),
            Err(EvalError::Singular) => Err(Error::DivisionByZero),
        }
    }

    fn by_evaluation(&self, ins: &[Insertion], opts: &GwOptions) -> Result<Option<RationalFunction>> {
        let r = self.lattice.graph().rank();
        let Some(deg) = self.expected_degree(ins) else { return Ok(None) };
        let mut fatal = None;
        let mut eval = |p: &[BigRational]| -> Option<BigRational> {
            match self.sum_with(&AtPoint { point: p.to_vec() }, ins, opts) {
                Ok(v) => Some(v),
                Err(EvalError::Singular) => None,
                Err(EvalError::Fatal(e)) => {
                    fatal.get_or_insert(e);
                    None
                }
            }
        };
        let result = if deg < 0 {
            let mut points = PointStream::new(r, opts.seed);
            let mut zeros = 0;
            let mut tries = 0;
            let mut ok = true;
            while zeros < opts.checks + 1 && tries < 16 {
                tries += 1;
                match eval(&points.next_point()) {
                    Some(v) if v.is_zero() => zeros += 1,
                    Some(_) => {
                        ok = false;
                        break;
                    }
                    None => {}
                }
            }
            (ok && zeros == opts.checks + 1).then(|| MultiPoly::zero(r))
        } else {
            if count_monomials(r, deg as u32) > opts.max_monomials {
                return Ok(None);
            }
            interpolate_homogeneous(r, deg as u32, opts.checks, opts.seed, &mut eval)
        };
        if let Some(e) = fatal {
            return Err(e);
        }
        Ok(result.map(RationalFunction::from_poly))
    }
}

/// Balanced pairwise sum, keeping intermediate symbolic sums small.
fn tree_sum<B: Backend>(b: &B, mut vals: Vec<B::V>) -> B::V {
    if vals.is_empty() {
        return b.zero();
    }
    while vals.len() > 1 {
        let next: Vec<B::V> = vals
            .par_chunks(2)
            .map(|c| if c.len() == 2 { b.add(&c[0], &c[1]) } else { c[0].clone() })
            .collect();
        vals = next;
    }
    vals.pop().unwrap()
}

/// β = 0: ∫_{M_{0,n}} ∏ ψ_i^{k_i} times ∫_X ∏ γ_i.
fn constant_map_invariant(ins: &[Insertion]) -> Result<RationalFunction> {
    let n = ins.len();
    if n < 3 {
        return Err(Error::Precondition("constant maps need at least three markings".into()));
    }
    let g = ins[0].class.graph().clone();
    let k: u32 = ins.iter().map(|i| i.psi).sum();
    if k as usize != n - 3 {
        return Ok(RationalFunction::zero(g.rank()));
    }
    let mut c = BigRational::from_integer(factorial(n as u32 - 3));
    for i in ins {
        c /= BigRational::from_integer(factorial(i.psi));
    }
    let mut prod = EquivariantClass::one(g);
    for i in ins {
        prod = prod.mul(&i.class)?;
    }
    Ok(prod.integrate().scale(&c))
}

/// GW^β_{0,n}(insertions) for the curve class `beta`.
pub fn gromov_witten(lattice: &CurveLattice, beta: &[i64], ins: &[Insertion], opts: &GwOptions) -> Result<RationalFunction> {
    if beta.iter().all(|&x| x == 0) {
        return constant_map_invariant(ins);
    }
    FixedLoci::new(lattice, beta, &opts.h)?.integrate(ins, opts)
}
