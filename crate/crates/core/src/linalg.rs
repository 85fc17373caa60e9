//! Sparse exact linear algebra: echelon bases keyed by an ordered coordinate
//! set, with optional tracking of how each row arose from the inputs.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::field::{Field, Scalar};

pub type SparseVec<K> = BTreeMap<K, Scalar>;

/// A combination of inserted vectors, keyed by insertion label.
pub type Combination = BTreeMap<usize, Scalar>;

#[derive(Debug, Clone)]
struct Row<K> {
    vec: SparseVec<K>,
    combo: Combination,
}

/// Outcome of inserting a vector.
#[derive(Debug, Clone, PartialEq)]
pub enum Insertion {
    /// The vector enlarged the span.
    Added { label: usize },
    /// The vector was already in the span; `relation` is a nonzero
    /// combination of inserted vectors (including this one) equal to zero.
    Dependent { label: usize, relation: Combination },
}

/// Subspace spanned by the inserted vectors, held as rows with distinct
/// leading (largest) coordinates.
#[derive(Debug, Clone)]
pub struct Subspace<K: Ord + Clone> {
    field: Field,
    rows: BTreeMap<K, Row<K>>,
    inserted: usize,
}

fn axpy<K: Ord + Clone>(field: &Field, target: &mut SparseVec<K>, c: &Scalar, v: &SparseVec<K>) {
    for (k, x) in v {
        let add = field.mul(c, x);
        match target.get_mut(k) {
            Some(t) => {
                *t = field.add(t, &add);
                if t.is_zero() {
                    target.remove(k);
                }
            }
            None => {
                if !add.is_zero() {
                    target.insert(k.clone(), add);
                }
            }
        }
    }
}

impl<K: Ord + Clone> Subspace<K> {
    pub fn new(field: Field) -> Self {
        Subspace {
            field,
            rows: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far (the next label).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Top-reduces `v`; returns the remainder and the combination of inserted
    /// vectors that was subtracted.
    fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, Combination) {
        let mut used = Combination::new();
        while let Some((lead, coeff)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            let Some(row) = self.rows.get(&lead) else {
                break;
            };
            let c = self.field.neg(&coeff);
            axpy(&self.field, &mut v, &c, &row.vec);
            axpy(&self.field, &mut used, &self.field.neg(&c), &row.combo);
        }
        (v, used)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).0.is_empty()
    }

    /// Coefficients over inserted vectors that sum to `v`, if `v` is in the span.
    pub fn express(&self, v: &SparseVec<K>) -> Option<Combination> {
        let (rest, used) = self.reduce(v.clone());
        rest.is_empty().then_some(used)
    }

    pub fn insert(&mut self, v: SparseVec<K>) -> Insertion {
        let label = self.inserted;
        self.inserted += 1;
        let (mut rest, used) = self.reduce(v);
        let mut combo = Combination::new();
        combo.insert(label, Scalar::one());
        axpy(&self.field, &mut combo, &self.field.from_i64(-1), &used);
        match rest.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            None => Insertion::Dependent {
                label,
                relation: combo,
            },
            Some((lead, c)) => {
                let inv = self.field.inv(&c).expect("nonzero leading coefficient");
                for x in rest.values_mut() {
                    *x = self.field.mul(x, &inv);
                }
                for x in combo.values_mut() {
                    *x = self.field.mul(x, &inv);
                }
                self.rows.insert(lead, Row { vec: rest, combo });
                Insertion::Added { label }
            }
        }
    }

    /// Leading coordinates of the echelon rows.
    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }
}
