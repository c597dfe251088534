//! Polynomials that map a prescribed chain `c_0 -> c_1 -> ... -> c_k` and
//! vanish at two extra points.

use std::collections::HashSet;

use crate::dynamics::{KPoly, ProjPoint, RationalMap};
use crate::error::{Error, Result};
use crate::nf::FieldElement;

#[derive(Clone, Debug)]
pub struct Interpolation {
    pub map: RationalMap,
    pub values: Vec<FieldElement>,
    pub roots: [FieldElement; 2],
}

fn linear(a: &FieldElement) -> KPoly {
    KPoly::new(a.field().clone(), vec![-a, FieldElement::one(a.field())])
}

/// The two smallest positive integers not among `values`.
pub fn default_roots(values: &[FieldElement]) -> [FieldElement; 2] {
    let field = values[0].field();
    let taken: HashSet<&FieldElement> = values.iter().collect();
    let mut free = (1..)
        .map(|n| FieldElement::from_i64(field, n))
        .filter(|x| !taken.contains(x));
    [free.next().unwrap(), free.next().unwrap()]
}

/// `phi = (z - r1)(z - r2) q(z)` with `q = prod_{j<k} (z - c_j) + L(z)`, where
/// `L` interpolates `c_{j+1} / ((c_j - r1)(c_j - r2))` at the nodes `c_j`.
/// The result has degree `k + 2`.
pub fn interpolation_construct(
    values: &[FieldElement],
    extra_roots: Option<[FieldElement; 2]>,
) -> Result<Interpolation> {
    if values.is_empty() {
        return Err(Error::InvalidInput(
            "interpolation needs at least one value".into(),
        ));
    }
    let field = values[0].field().clone();
    if values.iter().any(|c| c.field() != &field) {
        return Err(Error::FieldMismatch);
    }
    let mut seen = HashSet::new();
    for c in values {
        if !seen.insert(c) {
            return Err(Error::DuplicateNodes(format!(
                "{c} appears twice in the chain"
            )));
        }
    }
    let roots = extra_roots.unwrap_or_else(|| default_roots(values));
    if roots[0] == roots[1] || values.iter().any(|c| roots.contains(c)) {
        return Err(Error::DuplicateNodes(format!(
            "extra roots {} and {} must differ from each other and from the chain",
            roots[0], roots[1]
        )));
    }
    let k = values.len() - 1;
    let nodes = &values[..k];
    let one = KPoly::one(field.clone());
    let mut q = nodes.iter().fold(one.clone(), |acc, c| acc.mul(&linear(c)));
    for (j, cj) in nodes.iter().enumerate() {
        let target = values[j + 1].div(&(&(cj - &roots[0]) * &(cj - &roots[1])))?;
        let mut basis = one.clone();
        let mut scale = FieldElement::one(&field);
        for (m, cm) in nodes.iter().enumerate() {
            if m != j {
                basis = basis.mul(&linear(cm));
                scale = &scale * &(cj - cm);
            }
        }
        q = q.add(&basis.scale(&target.div(&scale)?));
    }
    let num = linear(&roots[0]).mul(&linear(&roots[1])).mul(&q);
    let map = RationalMap::new(num, one)?;
    if map.degree() != k + 2 {
        return Err(Error::AssertionFailed(format!(
            "interpolant has degree {}, expected {}",
            map.degree(),
            k + 2
        )));
    }
    for j in 0..k {
        if map.eval(&values[j]) != ProjPoint::Finite(values[j + 1].clone()) {
            return Err(Error::AssertionFailed(format!(
                "interpolant misses {} -> {}",
                values[j],
                values[j + 1]
            )));
        }
    }
    for r in &roots {
        if !map.num().eval(r).is_zero() {
            return Err(Error::AssertionFailed(format!(
                "interpolant does not vanish at {r}"
            )));
        }
    }
    Ok(Interpolation {
        map,
        values: values.to_vec(),
        roots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nf::NumberField;

    fn els(q: &NumberField, v: &[i64]) -> Vec<FieldElement> {
        v.iter().map(|&x| FieldElement::from_i64(q, x)).collect()
    }

    #[test]
    fn cubic_with_given_roots() {
        let q = NumberField::rationals();
        let r = els(&q, &[5, 7]);
        let it =
            interpolation_construct(&els(&q, &[1, 2]), Some([r[0].clone(), r[1].clone()])).unwrap();
        assert_eq!(it.map.degree(), 3);
        assert_eq!(
            it.map.eval(&r[0]),
            ProjPoint::Finite(FieldElement::zero(&q))
        );
        assert!(it.map.beta_z_pm_d().is_none());
    }

    #[test]
    fn chain_with_default_roots() {
        let q = NumberField::rationals();
        let it = interpolation_construct(&els(&q, &[1, 5, 25, 7]), None).unwrap();
        assert_eq!(
            it.roots,
            [FieldElement::from_i64(&q, 2), FieldElement::from_i64(&q, 3)]
        );
        assert_eq!(it.map.degree(), 5);
    }

    #[test]
    fn duplicates_rejected() {
        let q = NumberField::rationals();
        assert!(matches!(
            interpolation_construct(&els(&q, &[1, 5, 1]), None),
            Err(Error::DuplicateNodes(_))
        ));
        let r = els(&q, &[5, 9]);
        assert!(matches!(
            interpolation_construct(&els(&q, &[1, 5]), Some([r[0].clone(), r[1].clone()])),
            Err(Error::DuplicateNodes(_))
        ));
    }

    #[test]
    fn gaussian_chain() {
        let k = NumberField::quadratic(-1).unwrap();
        let i = FieldElement::theta(&k);
        let chain = vec![
            i.clone(),
            FieldElement::from_i64(&k, 2),
            &i + &FieldElement::from_i64(&k, 3),
        ];
        let it = interpolation_construct(&chain, None).unwrap();
        assert_eq!(it.map.eval(&chain[1]), ProjPoint::Finite(chain[2].clone()));
    }
}
