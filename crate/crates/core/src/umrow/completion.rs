use super::{Row, UmrowError};
use crate::ring::{det_with, Poly, RingSpec};

/// A square polynomial matrix proposed as a completion of a row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionMatrix {
    pub rows: Vec<Vec<Poly>>,
}

impl CompletionMatrix {
    pub fn parse(ring: &RingSpec, rows: &[String]) -> Result<Self, UmrowError> {
        Ok(CompletionMatrix { rows: rows.iter().map(|r| ring.parse_list(r)).collect::<Result<_, _>>()? })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn show(&self, ring: &RingSpec) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(|p| ring.show(p)).collect()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionReport {
    pub shape_ok: bool,
    pub first_row_matches: bool,
    /// Determinant reduced modulo the relations; `None` for a malformed matrix.
    pub det: Option<Poly>,
}

impl CompletionReport {
    pub fn verified(&self) -> bool {
        self.shape_ok && self.first_row_matches && self.det.as_ref().is_some_and(Poly::is_one)
    }
}

pub fn verify_completion(row: &Row, m: &CompletionMatrix) -> Result<CompletionReport, UmrowError> {
    let ring = row.ring();
    let n = row.len();
    let shape_ok = m.size() == n && m.rows.iter().all(|r| r.len() == n && r.iter().all(|p| p.nvars() == ring.nvars()));
    if !shape_ok {
        return Ok(CompletionReport { shape_ok, first_row_matches: false, det: None });
    }
    let mut first_row_matches = true;
    for (a, b) in row.entries().iter().zip(&m.rows[0]) {
        if !ring.equal_mod_relations(a, b)? {
            first_row_matches = false;
            break;
        }
    }
    let gb = ring.relation_basis()?;
    let normalize = |p: Poly| match &gb {
        Some(gb) => gb.reduce(&p).expect("same ring"),
        None => p,
    };
    let det = det_with(&m.rows, ring.nvars(), &normalize);
    Ok(CompletionReport { shape_ok, first_row_matches, det: Some(det) })
}

/// The left-multiplication matrix of unit quaternions: row `r` holds `e_r · x`.
pub fn quaternion_completion(row: &Row) -> Result<CompletionMatrix, UmrowError> {
    let e = row.entries();
    if e.len() != 4 {
        return Err(UmrowError::Precondition("quaternion completion needs a row of length 4".into()));
    }
    let [a, b, c, d] = [&e[0], &e[1], &e[2], &e[3]];
    Ok(CompletionMatrix {
        rows: vec![
            vec![a.clone(), b.clone(), c.clone(), d.clone()],
            vec![-b, a.clone(), -d, c.clone()],
            vec![-c, d.clone(), a.clone(), -b],
            vec![-d, -c, b.clone(), a.clone()],
        ],
    })
}

fn cd_conj(x: &[Poly]) -> Vec<Poly> {
    if x.len() == 1 {
        return x.to_vec();
    }
    let h = x.len() / 2;
    let mut out = cd_conj(&x[..h]);
    out.extend(x[h..].iter().map(|p| -p));
    out
}

fn cd_add(x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn cd_sub(x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// Cayley–Dickson product `(a,b)(c,d) = (ac − d̄b, da + bc̄)`.
fn cd_mul(x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    if x.len() == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let mut out = cd_sub(&cd_mul(a, c), &cd_mul(&cd_conj(d), b));
    out.extend(cd_add(&cd_mul(d, a), &cd_mul(b, &cd_conj(c))));
    out
}

/// For rows of length 2, 4 or 8: the matrix of `y ↦ y·x` in the Cayley–Dickson algebra.
///
/// Its first row is `x` and its determinant is `|x|^n`, which is 1 on the unit sphere.
pub fn cayley_dickson_completion(row: &Row) -> Result<CompletionMatrix, UmrowError> {
    let n = row.len();
    if ![2, 4, 8].contains(&n) {
        return Err(UmrowError::Precondition(format!("no composition algebra of dimension {n}")));
    }
    let nv = row.ring().nvars();
    let rows = (0..n)
        .map(|r| {
            let mut e = vec![Poly::zero(nv); n];
            e[r] = Poly::one(nv);
            cd_mul(&e, row.entries())
        })
        .collect();
    Ok(CompletionMatrix { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_completes_the_unit_row() {
        let ring = RingSpec::sphere(3);
        let row = Row::parse(&ring, "1,0,0,0").unwrap();
        let id: Vec<String> = ["1,0,0,0", "0,1,0,0", "0,0,1,0", "0,0,0,1"].iter().map(|s| s.to_string()).collect();
        assert!(verify_completion(&row, &CompletionMatrix::parse(&ring, &id).unwrap()).unwrap().verified());
    }

    #[test]
    fn quaternions_on_s3() {
        let ring = RingSpec::sphere(3);
        let row = Row::parse(&ring, "x1,x2,x3,x4").unwrap();
        let m = quaternion_completion(&row).unwrap();
        let r = verify_completion(&row, &m).unwrap();
        assert!(r.verified(), "{r:?}");
        assert_eq!(cayley_dickson_completion(&row).unwrap(), m);

        let mut flipped = m.clone();
        flipped.rows[1][0] = -&flipped.rows[1][0];
        let r = verify_completion(&row, &flipped).unwrap();
        assert!(r.first_row_matches && !r.verified());
    }

    #[test]
    fn determinant_without_relations() {
        // over the polynomial ring the quaternion determinant is the squared norm, squared
        let vars: Vec<String> = (1..=4).map(|i| format!("x{i}")).collect();
        let ring = RingSpec::new(vars, vec![], 4, false).unwrap();
        let row = Row::parse(&ring, "x1,x2,x3,x4").unwrap();
        let det = verify_completion(&row, &quaternion_completion(&row).unwrap()).unwrap().det.unwrap();
        assert_eq!(det, ring.parse("(x1^2+x2^2+x3^2+x4^2)^2").unwrap());
    }

    #[test]
    fn complex_completion_on_circle() {
        let ring = RingSpec::sphere(1);
        let row = Row::parse(&ring, "x1,x2").unwrap();
        assert!(verify_completion(&row, &cayley_dickson_completion(&row).unwrap()).unwrap().verified());
    }

    #[test]
    fn wrong_first_row_or_shape() {
        let ring = RingSpec::sphere(3);
        let row = Row::parse(&ring, "x1,x2,x3,x4").unwrap();
        let other = Row::parse(&ring, "x2,x1,x3,x4").unwrap();
        let r = verify_completion(&row, &quaternion_completion(&other).unwrap()).unwrap();
        assert!(!r.first_row_matches);
        let small = CompletionMatrix { rows: vec![vec![Poly::one(4)]] };
        assert!(!verify_completion(&row, &small).unwrap().shape_ok);
    }
}
