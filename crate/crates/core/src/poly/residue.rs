//! The residue ring `F_q[t]/(D)`.

use alloc::format;
use alloc::vec::Vec;

use super::{monic_count, UniPoly};
use crate::error::{Error, Result};
use crate::field::FieldElem;

/// A class `C mod D` with `deg C < deg D`; the modulus is kept monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    modulus: UniPoly,
    value: UniPoly,
}

fn check_modulus(modulus: &UniPoly) -> Result<UniPoly> {
    match modulus.degree() {
        None | Some(0) => Err(Error::InvalidModulus("modulus must have degree at least 1".into())),
        Some(_) => Ok(modulus.monic()),
    }
}

impl Residue {
    /// Reduces `value` modulo `modulus` (which is made monic).
    pub fn from_poly(value: &UniPoly, modulus: &UniPoly) -> Result<Self> {
        let modulus = check_modulus(modulus)?;
        let value = value.rem(&modulus)?;
        Ok(Self { modulus, value })
    }

    pub fn zero(modulus: &UniPoly) -> Result<Self> {
        Self::from_poly(&UniPoly::zero(modulus.field()), modulus)
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn value(&self) -> &UniPoly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            modulus: self.modulus.clone(),
            value: self.value.add(&other.value),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            modulus: self.modulus.clone(),
            value: self.value.sub(&other.value),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            modulus: self.modulus.clone(),
            value: self.value.mul(&other.value).rem(&self.modulus)?,
        })
    }
}

/// All `q^(deg D)` residues mod `D`, in the base-`q` digit order of their
/// representatives (digit `j` is the coefficient of `t^j`).
pub fn enumerate_residues(modulus: &UniPoly) -> Result<impl Iterator<Item = Residue>> {
    let modulus = check_modulus(modulus)?;
    let field = modulus.field().clone();
    let d = modulus.degree().expect("nonzero");
    let total = monic_count(&field, d).map_err(|_| {
        Error::Overflow(format!("q^{d} residues do not fit a 64-bit index"))
    })?;
    let q = field.q();
    Ok((0..total).map(move |mut idx| {
        let coeffs: Vec<FieldElem> = (0..d)
            .map(|_| {
                let c = field.element(idx % q).expect("digit below q");
                idx /= q;
                c
            })
            .collect();
        Residue {
            modulus: modulus.clone(),
            value: UniPoly::from_coeffs(&field, coeffs),
        }
    }))
}
