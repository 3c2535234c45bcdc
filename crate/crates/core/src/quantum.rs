//! Small equivariant quantum products, truncated by Chern degree.
//!
//! The q^β coefficient of a ∗ b is the class whose restriction to w is
//! GW^β_{0,3}(a, b, [w]); the fixed-point classes are dual to the
//! indicator classes under the localized pairing.

use std::collections::BTreeMap;
use std::fmt;

use crate::cohomology::EquivariantClass;
use crate::curves::{CurveClass, CurveLattice};
use crate::error::{Error, Result};
use crate::gw::{FixedLoci, GwOptions, Insertion};

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumElement {
    pub terms: BTreeMap<CurveClass, EquivariantClass>,
}

impl QuantumElement {
    pub fn coefficient(&self, beta: &[i64]) -> Option<&EquivariantClass> {
        self.terms.get(beta)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }
}

impl fmt::Display for QuantumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (beta, c) in &self.terms {
            if c.is_zero() {
                continue;
            }
            let b: Vec<String> = beta.iter().map(|x| x.to_string()).collect();
            let vals: Vec<String> = c.values().iter().map(|v| v.to_string()).collect();
            writeln!(f, "q^({}): [{}]", b.join(", "), vals.join(", "))?;
        }
        Ok(())
    }
}

/// Coefficient class of q^β in a ∗ b.
pub fn structure_constant(
    lattice: &CurveLattice,
    a: &EquivariantClass,
    b: &EquivariantClass,
    beta: &[i64],
    opts: &GwOptions,
) -> Result<EquivariantClass> {
    let g = lattice.graph().clone();
    if !g.is_compact() {
        return Err(Error::Precondition("quantum products need a compact graph".into()));
    }
    if beta.iter().all(|&x| x == 0) {
        return a.mul(b);
    }
    let loci = FixedLoci::new(lattice, beta, &opts.h)?;
    let mut values = Vec::with_capacity(g.num_vertices());
    for w in 0..g.num_vertices() {
        let ins = [
            Insertion::ev(a.clone()),
            Insertion::ev(b.clone()),
            Insertion::ev(EquivariantClass::point_class(g.clone(), w)),
        ];
        values.push(loci.integrate(&ins, opts)?);
    }
    EquivariantClass::new(g, values)
}

/// Edges with vanishing Chern number, provided every other edge is positive
/// and at most one such edge exists.
pub fn exceptional_edges(lattice: &CurveLattice) -> Result<Vec<usize>> {
    let c = lattice.edge_chern_numbers();
    if let Some(e) = c.iter().position(|&x| x < 0) {
        return Err(Error::Precondition(format!("edge {e} has negative Chern number")));
    }
    let zero: Vec<usize> = (0..c.len()).filter(|&e| c[e] == 0).collect();
    if zero.len() > 1 {
        return Err(Error::Precondition("more than one edge has Chern number zero".into()));
    }
    Ok(zero)
}

/// Σ_β c_β q^β over nonzero effective β with C1(β) ≤ `chern_bound`, plus the
/// q^0 cup product; multiples of an exceptional edge are added up to `exceptional_max`.
pub fn quantum_product_truncated(
    lattice: &CurveLattice,
    a: &EquivariantClass,
    b: &EquivariantClass,
    chern_bound: i64,
    exceptional_max: u32,
    opts: &GwOptions,
) -> Result<QuantumElement> {
    let exc = exceptional_edges(lattice)?;
    let classes = lattice.effective_classes(chern_bound, &exc, exceptional_max)?;
    let mut terms = BTreeMap::new();
    terms.insert(lattice.zero_class(), a.mul(b)?);
    for beta in classes {
        let c = structure_constant(lattice, a, b, &beta, opts)?;
        terms.insert(beta, c);
    }
    Ok(QuantumElement { terms })
}
