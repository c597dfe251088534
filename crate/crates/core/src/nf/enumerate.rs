//! Enumeration of field elements of bounded naive height.

use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::{Int, Rat};
use crate::nf::element::FieldElement;
use crate::nf::field::NumberField;

/// All `x = (N_0 + N_1 theta + ... ) / D` with `1 <= D <= H`,
/// `|N_i| <= H` and `gcd(D, N_0, ..., N_{n-1}) = 1`.
///
/// Each element appears exactly once, in the order: denominator ascending,
/// then numerator vectors in odometer order (first coordinate fastest).
#[derive(Clone, Debug)]
pub struct HeightBox {
    field: NumberField,
    height: u64,
}

impl HeightBox {
    pub fn new(field: &NumberField, height: u64) -> Self {
        HeightBox {
            field: field.clone(),
            height: height.max(1),
        }
    }

    pub fn height(&self) -> u64 {
        self.height
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// One slice per denominator, suitable for parallel scans.
    pub fn partitions(&self) -> impl Iterator<Item = BoxSlice> + '_ {
        (1..=self.height).map(|d| BoxSlice {
            field: self.field.clone(),
            height: self.height as i64,
            denominator: d as i64,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.partitions().flat_map(|s| s.iter())
    }

    /// Applies `f` to every element in parallel; results keep enumeration order.
    pub fn par_filter_map<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&FieldElement) -> Option<T> + Sync,
    {
        let slices: Vec<BoxSlice> = self.partitions().collect();
        slices
            .par_iter()
            .map(|s| s.iter().filter_map(|x| f(&x)).collect::<Vec<T>>())
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }
}

/// The elements of a height box with a fixed denominator.
#[derive(Clone, Debug)]
pub struct BoxSlice {
    field: NumberField,
    height: i64,
    denominator: i64,
}

impl BoxSlice {
    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    /// Raw numerator vectors (coprime with the denominator as a whole).
    pub fn numerators(&self) -> impl Iterator<Item = Vec<i64>> {
        let n = self.field.degree();
        let h = self.height;
        let d = self.denominator;
        let mut cur: Option<Vec<i64>> = Some(vec![-h; n]);
        std::iter::from_fn(move || loop {
            let v = cur.clone()?;
            // advance the odometer
            let mut next = v.clone();
            let mut i = 0;
            loop {
                if i == n {
                    cur = None;
                    break;
                }
                if next[i] < h {
                    next[i] += 1;
                    cur = Some(next);
                    break;
                }
                next[i] = -h;
                i += 1;
            }
            let g = v.iter().fold(d, |g, &x| g.gcd(&x));
            if g == 1 {
                return Some(v);
            }
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = FieldElement> {
        let d = Int::from(self.denominator);
        let field = self.field.clone();
        self.numerators().map(move |v| {
            let coords = v
                .into_iter()
                .map(|x| Rat::new(Int::from(x), d.clone()))
                .collect();
            FieldElement::new(&field, coords)
        })
    }
}

pub fn enumerate_box(field: &NumberField, height: u64) -> Vec<FieldElement> {
    HeightBox::new(field, height).iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn rational_box_matches_height_filter() {
        let q = NumberField::rationals();
        let xs = enumerate_box(&q, 6);
        let set: HashSet<_> = xs.iter().cloned().collect();
        assert_eq!(set.len(), xs.len());
        assert!(xs.iter().all(|x| x.height() <= Int::from(6)));
        // independent count: reduced fractions a/b, 1 <= b <= 6, |a| <= 6
        let mut count = 0;
        for b in 1i64..=6 {
            for a in -6i64..=6 {
                if a.gcd(&b) == 1 {
                    count += 1;
                }
            }
        }
        assert_eq!(xs.len(), count);
    }

    #[test]
    fn quadratic_box_is_complete() {
        let k = NumberField::quadratic(-1).unwrap();
        let xs = enumerate_box(&k, 3);
        let set: HashSet<_> = xs.iter().cloned().collect();
        assert_eq!(set.len(), xs.len());
        let mut brute = HashSet::new();
        for d in 1i64..=3 {
            for a in -3i64..=3 {
                for b in -3i64..=3 {
                    let x = FieldElement::new(
                        &k,
                        vec![Rat::new(a.into(), d.into()), Rat::new(b.into(), d.into())],
                    );
                    if x.height() <= Int::from(3) {
                        brute.insert(x);
                    }
                }
            }
        }
        assert_eq!(set, brute);
    }

    #[test]
    fn parallel_order_is_sequential_order() {
        let q = NumberField::rationals();
        let b = HeightBox::new(&q, 20);
        let seq: Vec<_> = b.iter().collect();
        let par = b.par_filter_map(|x| Some(x.clone()));
        assert_eq!(seq, par);
    }
}
