//! Qubit POVM elements `aI + v·σ` and complete measurements.

use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::tolerance::{COMPLETENESS_TOL, PSD_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PovmElement {
    pub a: f64,
    pub v: BlochVector,
}

impl PovmElement {
    pub const ZERO: PovmElement = PovmElement {
        a: 0.0,
        v: BlochVector::ZERO,
    };
    pub const IDENTITY: PovmElement = PovmElement {
        a: 1.0,
        v: BlochVector::ZERO,
    };

    /// Checked constructor: finite and positive semidefinite.
    pub fn new(a: f64, v: BlochVector) -> Result<Self> {
        let e = PovmElement { a, v };
        e.check(0)?;
        Ok(e)
    }

    /// `weight · ½(I + n·σ)`; with `|n| = 1` this is a scaled rank-one projector.
    pub fn scaled_projector(weight: f64, direction: BlochVector) -> Self {
        PovmElement {
            a: 0.5 * weight,
            v: direction * (0.5 * weight),
        }
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.a
    }

    /// Eigenvalues `a ± |v|`, smallest first.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let n = self.v.norm();
        (self.a - n, self.a + n)
    }

    pub fn psd_margin(&self) -> f64 {
        self.a - self.v.norm()
    }

    pub fn is_psd(&self) -> bool {
        self.psd_margin() >= -PSD_TOL
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0.0 && self.v == BlochVector::ZERO
    }

    /// `Tr(½(I + b·σ) · (aI + v·σ)) = a + b·v`.
    pub fn overlap(&self, bloch: &BlochVector) -> f64 {
        self.a + bloch.dot(&self.v)
    }

    fn check(&self, index: usize) -> Result<()> {
        if !self.a.is_finite() || !self.v.is_finite() {
            return Err(Error::NonFinite(format!("POVM element {index}")));
        }
        if !self.is_psd() {
            return Err(Error::NotPsd {
                index,
                a: self.a,
                v_norm: self.v.norm(),
            });
        }
        Ok(())
    }
}

/// A complete POVM with one element per ensemble entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<PovmElement>", into = "Vec<PovmElement>")]
pub struct Povm {
    elements: Vec<PovmElement>,
}

/// How far a set of elements is from summing to the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletenessGap {
    pub trace_gap: f64,
    pub vector_gap: f64,
}

impl CompletenessGap {
    pub fn max(&self) -> f64 {
        self.trace_gap.max(self.vector_gap)
    }
}

pub fn completeness_gap(elements: &[PovmElement]) -> CompletenessGap {
    let a: f64 = elements.iter().map(|e| e.a).sum();
    let v: BlochVector = elements.iter().map(|e| e.v).sum();
    CompletenessGap {
        trace_gap: (a - 1.0).abs(),
        vector_gap: v.norm(),
    }
}

impl Povm {
    pub fn new(elements: Vec<PovmElement>) -> Result<Self> {
        for (i, e) in elements.iter().enumerate() {
            e.check(i)?;
        }
        let gap = completeness_gap(&elements);
        if gap.trace_gap > COMPLETENESS_TOL || gap.vector_gap > COMPLETENESS_TOL {
            return Err(Error::Incomplete {
                trace_gap: gap.trace_gap,
                vector_gap: gap.vector_gap,
            });
        }
        Ok(Povm { elements })
    }

    /// `Π_k = I`, every other element zero.
    pub fn guess(n: usize, k: usize) -> Self {
        let mut elements = vec![PovmElement::ZERO; n];
        elements[k] = PovmElement::IDENTITY;
        Povm { elements }
    }

    pub fn elements(&self) -> &[PovmElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn completeness_gap(&self) -> CompletenessGap {
        completeness_gap(&self.elements)
    }

    pub fn min_psd_margin(&self) -> f64 {
        self.elements
            .iter()
            .map(PovmElement::psd_margin)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn permuted(&self, order: &[usize]) -> Self {
        Povm {
            elements: order.iter().map(|&k| self.elements[k]).collect(),
        }
    }
}

impl TryFrom<Vec<PovmElement>> for Povm {
    type Error = Error;
    fn try_from(elements: Vec<PovmElement>) -> Result<Self> {
        Povm::new(elements)
    }
}

impl From<Povm> for Vec<PovmElement> {
    fn from(p: Povm) -> Self {
        p.elements
    }
}
