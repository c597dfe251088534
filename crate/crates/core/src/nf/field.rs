use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, primes, Int, Rat};
use crate::error::{Error, Result};
use crate::fp;
use crate::nf::prime::PrimePlace;
use crate::poly::QPoly;

/// Outcome of the irreducibility screen run on the defining polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    Certified,
    Unverified,
}

/// `K = Q[x]/(f)` for a monic squarefree integer polynomial `f`, with
/// `O_K = Z[theta]` assumed at every prime that is used.
///
/// Cloning is cheap; all clones share one immutable description plus a
/// memo of prime factorizations.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

struct FieldData {
    poly: Vec<Int>,
    qpoly: QPoly,
    signature: (usize, usize),
    discriminant: Int,
    assert_monogenic: bool,
    irreducibility: Irreducibility,
    places: Mutex<HashMap<u64, Vec<PrimePlace>>>,
}

impl NumberField {
    /// Builds the field from `f = c0 + c1 x + ... + x^n` (constant term first).
    pub fn new(poly: &[Int], assert_monogenic: bool) -> Result<Self> {
        if poly.len() < 2 || !poly.last().unwrap().is_one() {
            return Err(Error::NotMonic);
        }
        let qpoly = QPoly::from_bigints(poly);
        if !qpoly.gcd(&qpoly.derivative()).is_constant() {
            return Err(Error::NotSquarefree);
        }
        let n = poly.len() - 1;
        let r1 = qpoly.count_real_roots();
        let res = qpoly.resultant(&qpoly.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
        let discriminant = (res * Rat::from_integer(Int::from(sign))).to_integer();
        let irreducibility = screen_irreducibility(poly, &discriminant)?;
        Ok(NumberField(Arc::new(FieldData {
            poly: poly.to_vec(),
            qpoly,
            signature: (r1, (n - r1) / 2),
            discriminant,
            assert_monogenic,
            irreducibility,
            places: Mutex::new(HashMap::new()),
        })))
    }

    pub fn from_i64s(poly: &[i64], assert_monogenic: bool) -> Result<Self> {
        Self::new(
            &poly.iter().map(|&c| Int::from(c)).collect::<Vec<_>>(),
            assert_monogenic,
        )
    }

    /// The rationals, presented as `Q[x]/(x)`. All calls share one instance.
    pub fn rationals() -> Self {
        static Q: OnceLock<NumberField> = OnceLock::new();
        Q.get_or_init(|| NumberField::from_i64s(&[0, 1], false).expect("x is a valid field"))
            .clone()
    }

    /// `Q(sqrt(d))` presented by `x^2 - d`.
    pub fn quadratic(d: i64) -> Result<Self> {
        Self::from_i64s(&[-d, 0, 1], false)
    }

    pub fn degree(&self) -> usize {
        self.0.poly.len() - 1
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn defining_poly(&self) -> &[Int] {
        &self.0.poly
    }

    pub(crate) fn qpoly(&self) -> &QPoly {
        &self.0.qpoly
    }

    /// (r1, r2): real places and pairs of complex places.
    pub fn signature(&self) -> (usize, usize) {
        self.0.signature
    }

    pub fn archimedean_places(&self) -> usize {
        self.0.signature.0 + self.0.signature.1
    }

    pub fn discriminant(&self) -> &Int {
        &self.0.discriminant
    }

    pub fn asserts_monogenic(&self) -> bool {
        self.0.assert_monogenic
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.0.irreducibility
    }

    /// Human-readable warnings that every downstream report should carry.
    pub fn warnings(&self) -> Vec<String> {
        match self.0.irreducibility {
            Irreducibility::Certified => Vec::new(),
            Irreducibility::Unverified => vec![format!(
                "irreducibility of the defining polynomial {:?} was not certified",
                self.poly_strings()
            )],
        }
    }

    pub fn poly_strings(&self) -> Vec<String> {
        self.0.poly.iter().map(|c| c.to_string()).collect()
    }

    pub(crate) fn cached_places(&self, p: u64) -> Option<Vec<PrimePlace>> {
        self.0.places.lock().unwrap().get(&p).cloned()
    }

    pub(crate) fn cache_places(&self, p: u64, places: Vec<PrimePlace>) {
        self.0.places.lock().unwrap().insert(p, places);
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.poly == other.0.poly
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.0.qpoly)
    }
}

/// Rational-root sweep plus factorization degree patterns modulo small
/// primes. Reports a detected factor as an error.
fn screen_irreducibility(poly: &[Int], disc: &Int) -> Result<Irreducibility> {
    let n = poly.len() - 1;
    if n == 1 {
        return Ok(Irreducibility::Certified);
    }
    let f = QPoly::from_bigints(poly);
    if poly[0].is_zero() {
        return Err(Error::DetectedReducible { factor: "z".into() });
    }
    let mut sweep_complete = false;
    if let Some(divs) = divisors(&poly[0], 100_000) {
        sweep_complete = true;
        for d in divs {
            for r in [d.clone(), -d] {
                if f.eval(&Rat::from_integer(r.clone())).is_zero() {
                    return Err(Error::DetectedReducible {
                        factor: format!("z - ({r})"),
                    });
                }
            }
        }
    }
    // Degrees a rational factor could have, intersected over good primes.
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    for q in primes().take(60) {
        if (disc % Int::from(q)).is_zero() {
            continue;
        }
        let fs = fp::factor(&fp::reduce_poly(poly, q));
        let mut sums = BTreeSet::from([0usize]);
        for (g, e) in &fs {
            for _ in 0..*e {
                let d = g.deg0();
                sums = sums.iter().flat_map(|&s| [s, s + d]).collect();
            }
        }
        possible = possible.intersection(&sums).copied().collect();
        if possible.len() == 2 {
            return Ok(Irreducibility::Certified);
        }
    }
    if n <= 3 && sweep_complete {
        return Ok(Irreducibility::Certified);
    }
    Ok(Irreducibility::Unverified)
}

pub(crate) fn abs_disc(field: &NumberField) -> Int {
    field.discriminant().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures() {
        let q = NumberField::rationals();
        assert_eq!(q.signature(), (1, 0));
        assert_eq!(NumberField::quadratic(-1).unwrap().signature(), (0, 1));
        assert_eq!(NumberField::quadratic(2).unwrap().signature(), (2, 0));
        let cubic = NumberField::from_i64s(&[-2, 0, 0, 1], false).unwrap();
        assert_eq!(cubic.signature(), (1, 1));
    }

    #[test]
    fn discriminants() {
        assert_eq!(
            *NumberField::quadratic(-1).unwrap().discriminant(),
            Int::from(-4)
        );
        assert_eq!(
            *NumberField::quadratic(2).unwrap().discriminant(),
            Int::from(8)
        );
        let cubic = NumberField::from_i64s(&[-2, 0, 0, 1], false).unwrap();
        assert_eq!(*cubic.discriminant(), Int::from(-108));
    }

    #[test]
    fn rejects_bad_polynomials() {
        assert_eq!(
            NumberField::from_i64s(&[1, 2], false).unwrap_err(),
            Error::NotMonic
        );
        assert_eq!(
            NumberField::from_i64s(&[1, 2, 1], false).unwrap_err(),
            Error::NotSquarefree
        );
        assert!(matches!(
            NumberField::from_i64s(&[-1, 0, 1], false),
            Err(Error::DetectedReducible { .. })
        ));
        assert!(matches!(
            NumberField::from_i64s(&[0, 1, 1], false),
            Err(Error::DetectedReducible { .. })
        ));
    }

    #[test]
    fn irreducibility_screen() {
        assert_eq!(
            NumberField::quadratic(-5).unwrap().irreducibility(),
            Irreducibility::Certified
        );
        // x^4 + 1 splits modulo every prime, so no certificate is found.
        let f = NumberField::from_i64s(&[1, 0, 0, 0, 1], false).unwrap();
        assert_eq!(f.irreducibility(), Irreducibility::Unverified);
        assert_eq!(f.warnings().len(), 1);
        // x^5 - x - 1 is irreducible mod 5
        let g = NumberField::from_i64s(&[-1, -1, 0, 0, 0, 1], false).unwrap();
        assert_eq!(g.irreducibility(), Irreducibility::Certified);
    }
}
