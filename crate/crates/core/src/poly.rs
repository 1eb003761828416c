//! Univariate polynomials with coefficients in a finite ring.

use std::fmt;

use crate::error::{Result, RingError};
use crate::hom::RingHom;
use crate::ring::{same_ring, Ring};

/// Coefficients least-significant first; trailing zeros are always trimmed.
#[derive(Clone)]
pub struct PolyOverRing {
    ring: Ring,
    coeffs: Vec<usize>,
}

impl PolyOverRing {
    pub fn new(ring: &Ring, mut coeffs: Vec<usize>) -> Result<PolyOverRing> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= ring.size()) {
            return Err(RingError::InvalidParameter(format!(
                "coefficient index {bad} out of range"
            )));
        }
        while coeffs.last() == Some(&ring.zero()) {
            coeffs.pop();
        }
        Ok(PolyOverRing {
            ring: ring.clone(),
            coeffs,
        })
    }

    pub fn from_names(ring: &Ring, names: &[&str]) -> Result<PolyOverRing> {
        let coeffs = names
            .iter()
            .map(|n| ring.index_of(n))
            .collect::<Result<Vec<_>>>()?;
        PolyOverRing::new(ring, coeffs)
    }

    pub fn zero(ring: &Ring) -> PolyOverRing {
        PolyOverRing {
            ring: ring.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<usize> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(self.ring.one())
    }

    fn check(&self, other: &PolyOverRing) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(RingError::RingMismatch(
                "polynomials over different rings".into(),
            ))
        }
    }

    pub fn add(&self, other: &PolyOverRing) -> Result<PolyOverRing> {
        self.check(other)?;
        let r = &self.ring;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(r.zero());
                let b = other.coeffs.get(i).copied().unwrap_or(r.zero());
                r.add(a, b)
            })
            .collect();
        PolyOverRing::new(r, c)
    }

    pub fn mul(&self, other: &PolyOverRing) -> Result<PolyOverRing> {
        self.check(other)?;
        let r = &self.ring;
        if self.is_zero() || other.is_zero() {
            return Ok(PolyOverRing::zero(r));
        }
        let mut c = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = r.add(c[i + j], r.mul(a, b));
            }
        }
        PolyOverRing::new(r, c)
    }

    /// Applies a homomorphism coefficientwise.
    pub fn map_coeffs(&self, hom: &RingHom) -> Result<PolyOverRing> {
        if !same_ring(hom.source(), &self.ring) {
            return Err(RingError::RingMismatch(
                "homomorphism source differs from coefficient ring".into(),
            ));
        }
        PolyOverRing::new(
            hom.target(),
            self.coeffs.iter().map(|&c| hom.apply(c)).collect(),
        )
    }
}

impl PartialEq for PolyOverRing {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for PolyOverRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PolyOverRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.coeffs.iter().map(|&c| self.ring.name(c)).collect();
        f.write_str(&format_univariate(&names, self.ring.name(self.ring.one()), "0", "X"))
    }
}

/// Renders `Σ cᵢ varⁱ` highest degree first, skipping zero coefficients.
/// Coefficient names that are not plain words are wrapped in braces.
pub(crate) fn format_univariate(coeffs: &[&str], one: &str, zero: &str, var: &str) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == zero {
            continue;
        }
        let c = if c.chars().all(|ch| ch.is_ascii_alphanumeric()) {
            c.to_string()
        } else {
            format!("{{{c}}}")
        };
        let mono = match deg {
            0 => String::new(),
            1 => var.to_string(),
            k => format!("{var}^{k}"),
        };
        let term = match (deg, c == one) {
            (0, _) => c,
            (_, true) => mono,
            (_, false) => format!("{c}{mono}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        zero.to_string()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::construct::mk_zmod;

    #[test]
    fn trims_and_multiplies() {
        let z4 = mk_zmod(4, &Budget::DEFAULT).unwrap();
        let p = PolyOverRing::new(&z4, vec![2, 2, 0, 0]).unwrap();
        assert_eq!(p.degree(), Some(1));
        let sq = p.mul(&p).unwrap();
        // (2X+2)^2 = 4X^2+8X+4 = 0 in Z4
        assert!(sq.is_zero());
        assert_eq!(sq.degree(), None);
        assert_eq!(p.to_string(), "2X+2");
    }

    #[test]
    fn formatting_wraps_compound_coefficients() {
        assert_eq!(format_univariate(&["1", "x+1"], "1", "0", "y"), "{x+1}y+1");
        assert_eq!(format_univariate(&["0", "0", "1"], "1", "0", "x"), "x^2");
        assert_eq!(format_univariate(&["0"], "1", "0", "x"), "0");
    }
}
