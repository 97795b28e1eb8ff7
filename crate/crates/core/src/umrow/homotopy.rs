use num_traits::{One, Zero};

use super::{is_unimodular, Certificate, Row, UmrowError, Unimodularity};
use crate::ring::{Poly, RingSpec};
use crate::Rational;

/// A row over `A[t]` together with the endpoints it is claimed to join.
#[derive(Clone, Debug)]
pub struct HomotopyWitness {
    pub ring: RingSpec,
    /// Entries over `ring` extended by a trailing variable `t`.
    pub path: Vec<Poly>,
    pub start: Vec<Poly>,
    pub end: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyReport {
    pub path_unimodular: bool,
    pub start_matches: bool,
    pub end_matches: bool,
    pub certificate: Option<Certificate>,
}

impl HomotopyReport {
    pub fn holds(&self) -> bool {
        self.path_unimodular && self.start_matches && self.end_matches
    }
}

impl HomotopyWitness {
    /// Name of the path variable: `t`, primed until it is fresh.
    pub fn path_var(ring: &RingSpec) -> String {
        let mut name = "t".to_string();
        while ring.vars().contains(&name) {
            name.push('_');
            name.push('1');
        }
        name
    }

    pub fn path_ring(&self) -> Result<RingSpec, UmrowError> {
        Ok(self.ring.extend(&Self::path_var(&self.ring))?)
    }

    pub fn parse(ring: &RingSpec, path: &str, start: &str, end: &str) -> Result<Self, UmrowError> {
        let ext = ring.extend(&Self::path_var(ring))?;
        Ok(HomotopyWitness {
            ring: ring.clone(),
            path: ext.parse_list(path)?,
            start: ring.parse_list(start)?,
            end: ring.parse_list(end)?,
        })
    }
}

/// Restricts a polynomial over `A[t]` to `t = value`.
fn at(p: &Poly, nvars: usize, value: &Rational) -> Poly {
    let mut images: Vec<Poly> = (0..nvars).map(|i| Poly::var(nvars, i)).collect();
    images.push(Poly::constant(nvars, value.clone()));
    p.compose(&images)
}

pub fn check_homotopy(w: &HomotopyWitness) -> Result<HomotopyReport, UmrowError> {
    let n = w.ring.nvars();
    let ext = w.path_ring()?;
    if w.path.iter().any(|p| p.nvars() != n + 1) || w.start.iter().chain(&w.end).any(|p| p.nvars() != n) {
        return Err(crate::ring::RingError::RingMismatch.into());
    }
    let path = Row::new(&ext, w.path.clone())?;
    let certificate = match is_unimodular(&path)? {
        Unimodularity::Certified(c) => Some(c),
        Unimodularity::Refuted { .. } => None,
    };
    let matches = |value: Rational, target: &[Poly]| -> Result<bool, UmrowError> {
        if target.len() != w.path.len() {
            return Ok(false);
        }
        for (p, q) in w.path.iter().zip(target) {
            if !w.ring.equal_mod_relations(&at(p, n, &value), q)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let report = HomotopyReport {
        path_unimodular: certificate.is_some(),
        start_matches: matches(Rational::zero(), &w.start)?,
        end_matches: matches(Rational::one(), &w.end)?,
        certificate,
    };
    if report.holds() {
        // specializing the certificate certifies both endpoints
        let c = report.certificate.as_ref().expect("certified path");
        for (value, target) in [(Rational::zero(), &w.start), (Rational::one(), &w.end)] {
            let spec = Certificate {
                entry_cofactors: c.entry_cofactors.iter().map(|p| at(p, n, &value)).collect(),
                relation_cofactors: c.relation_cofactors.iter().map(|p| at(p, n, &value)).collect(),
            };
            let mut gens: Vec<Poly> = w.path.iter().map(|p| at(p, n, &value)).collect();
            gens.truncate(target.len());
            assert!(spec.verify(&w.ring, &gens), "endpoint of a unimodular path must be unimodular");
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point() -> RingSpec {
        RingSpec::new(vec![], vec![], 0, false).unwrap()
    }

    #[test]
    fn elementary_homotopy() {
        let ring = RingSpec::sphere(2);
        let w = HomotopyWitness::parse(&ring, "1, t*(x+z^2)", "1, 0", "1, x+z^2").unwrap();
        assert!(check_homotopy(&w).unwrap().holds());
    }

    #[test]
    fn segment_over_a_point() {
        let w = HomotopyWitness::parse(&point(), "t, 1-t", "0, 1", "1, 0").unwrap();
        let r = check_homotopy(&w).unwrap();
        assert!(r.holds());
        let w = HomotopyWitness::parse(&point(), "t, t", "0, 0", "1, 1").unwrap();
        let r = check_homotopy(&w).unwrap();
        assert!(!r.path_unimodular && !r.holds());
    }

    #[test]
    fn wrong_endpoint() {
        let w = HomotopyWitness::parse(&point(), "t, 1-t", "0, 1", "1, 1").unwrap();
        let r = check_homotopy(&w).unwrap();
        assert!(r.path_unimodular && r.start_matches && !r.end_matches);
    }

    #[test]
    fn endpoints_compared_modulo_relations() {
        let ring = RingSpec::sphere(2);
        let w = HomotopyWitness::parse(&ring, "x^2+y^2+z^2 , t*x", "1, 0", "1, x").unwrap();
        assert!(check_homotopy(&w).unwrap().holds());
    }
}
