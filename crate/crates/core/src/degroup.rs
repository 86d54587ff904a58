//! Degroupoidification: groupoids to vector spaces with a basis of
//! isomorphism classes, spans of groupoids to rational matrices.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{kronecker, mat_mul, ratio, QMatrix, QVector, Rat};
use crate::groupoids::{weak_pullback, Groupoid, GroupoidFunctor};
use crate::spans::{compose_groupoid_spans, product_groupoid_span, GroupoidSpan};

/// Basis of `D(G)`: iso classes in canonical order.
#[derive(Clone, Debug)]
pub struct Basis {
    pub groupoid: Groupoid,
    /// Minimal object of each class.
    pub representatives: Vec<u32>,
}

impl Basis {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

pub fn degroupoidify_groupoid(g: &Groupoid) -> Basis {
    Basis { groupoid: g.clone(), representatives: g.components().iter().map(|c| c.root()).collect() }
}

/// A groupoid with a functor to a base groupoid.
#[derive(Clone, Debug)]
pub struct GroupoidOver {
    pub total: Groupoid,
    pub projection: GroupoidFunctor,
}

impl GroupoidOver {
    pub fn new(projection: GroupoidFunctor) -> GroupoidOver {
        GroupoidOver { total: projection.source().clone(), projection }
    }
}

/// Entry at class `[x]` is the cardinality of the full inverse image of `x`.
pub fn vector_of(over: &GroupoidOver) -> QVector {
    let base = over.projection.target();
    let mut entries = vec![Rat::zero(); base.component_count()];
    for c in over.total.components() {
        let class = base.component_of(over.projection.apply_object(c.root()));
        entries[class as usize] += ratio(1, c.group.order() as i64);
    }
    QVector::new(entries)
}

/// Column for class `[x]` of the right foot: the vector of the weak
/// pullback of the right leg against `x: 1 → G`, over the left foot.
pub fn degroupoidify_column(s: &GroupoidSpan, x: u32) -> Result<QVector> {
    let point = GroupoidFunctor::point(s.right_foot(), x)?;
    let wp = weak_pullback(&s.right, &point)?;
    let over = GroupoidOver::new(wp.left_proj.then(&s.left)?);
    Ok(vector_of(&over))
}

pub fn degroupoidify_span(s: &GroupoidSpan) -> Result<QMatrix> {
    let reps = degroupoidify_groupoid(s.right_foot()).representatives;
    let columns: Vec<QVector> =
        reps.par_iter().map(|&x| degroupoidify_column(s, x)).collect::<Result<_>>()?;
    QMatrix::from_columns(s.left_foot().component_count(), &columns)
}

/// Outcome of an exact comparison of two matrices.
#[derive(Clone, Debug)]
pub struct MatrixCheck {
    pub pass: bool,
    pub lhs: QMatrix,
    pub rhs: QMatrix,
}

/// `D(t ∘ s) = D(t) · D(s)`.
pub fn check_functoriality(t: &GroupoidSpan, s: &GroupoidSpan) -> Result<MatrixCheck> {
    let lhs = degroupoidify_span(&compose_groupoid_spans(t, s)?)?;
    let rhs = mat_mul(&degroupoidify_span(t)?, &degroupoidify_span(s)?)?;
    Ok(MatrixCheck { pass: lhs == rhs, lhs, rhs })
}

/// Index in the Kronecker order of each iso class of a product groupoid.
pub fn product_class_order(product: &Groupoid) -> Result<Vec<usize>> {
    let (a, b) = product.product_factors().ok_or_else(|| Error::Precondition("not a product groupoid".into()))?;
    let nb = b.object_count() as u32;
    let ncb = b.component_count();
    Ok(product
        .components()
        .iter()
        .map(|c| {
            let (x, y) = (c.root() / nb, c.root() % nb);
            a.component_of(x) as usize * ncb + b.component_of(y) as usize
        })
        .collect())
}

/// `D(s × t) = D(s) ⊗ D(t)` after reordering classes of the product feet.
pub fn check_monoidal(s: &GroupoidSpan, t: &GroupoidSpan) -> Result<MatrixCheck> {
    let st = product_groupoid_span(s, t)?;
    let d = degroupoidify_span(&st)?;
    let rows = product_class_order(st.left_foot())?;
    let cols = product_class_order(st.right_foot())?;
    let mut entries = vec![Rat::zero(); d.rows() * d.cols()];
    for (i, &ri) in rows.iter().enumerate() {
        for (j, &cj) in cols.iter().enumerate() {
            entries[ri * d.cols() + cj] = d.get(i, j).clone();
        }
    }
    let lhs = QMatrix::new(d.rows(), d.cols(), entries)?;
    let rhs = kronecker(&degroupoidify_span(s)?, &degroupoidify_span(t)?);
    Ok(MatrixCheck { pass: lhs == rhs, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{nullspace, rat};
    use crate::groupoids::{action_groupoid, disjoint_union, terminal, FiniteGroup};
    use crate::groups::{GSet, PermGroup};
    use std::sync::Arc;

    fn pt_z2() -> Groupoid {
        let g = Arc::new(PermGroup::cyclic(2));
        action_groupoid(&GSet::point(g)).unwrap()
    }

    #[test]
    fn bases() {
        assert_eq!(degroupoidify_groupoid(&Groupoid::discrete(4)).dim(), 4);
        let g = Arc::new(PermGroup::symmetric(3));
        let x = action_groupoid(&GSet::natural(g)).unwrap();
        assert_eq!(degroupoidify_groupoid(&x).dim(), 1);
    }

    #[test]
    fn vector_of_identity_projection() {
        let g = pt_z2();
        let v = vector_of(&GroupoidOver::new(GroupoidFunctor::identity(&g)));
        assert_eq!(v, QVector::new(vec![ratio(1, 2)]));
    }

    #[test]
    fn terminal_identity_span() {
        let t = terminal();
        let d = degroupoidify_span(&GroupoidSpan::identity(&t)).unwrap();
        assert_eq!(d, QMatrix::identity(1));
    }

    #[test]
    fn point_mod_z2_over_terminal() {
        let g = pt_z2();
        let t = terminal();
        let leg = GroupoidFunctor::to_terminal(&g, &t).unwrap();
        let s = GroupoidSpan::new(leg.clone(), leg).unwrap();
        assert_eq!(degroupoidify_span(&s).unwrap(), QMatrix::new(1, 1, vec![ratio(1, 2)]).unwrap());
    }

    #[test]
    fn basis_functors_are_independent() {
        let u = disjoint_union(&[pt_z2(), terminal()]);
        let vectors: Vec<QVector> = (0..u.object_count() as u32)
            .map(|x| vector_of(&GroupoidOver::new(GroupoidFunctor::point(&u, x).unwrap())))
            .collect();
        assert_eq!(vectors.len(), 2);
        let m = QMatrix::from_columns(2, &vectors).unwrap();
        assert!(nullspace(&m).is_empty());
    }

    #[test]
    fn identity_span_is_identity_matrix() {
        let g = Arc::new(PermGroup::symmetric(3));
        let x = GSet::natural(g.clone());
        let xx = crate::groups::product_gset(&x, &x).unwrap();
        let h = action_groupoid(&xx).unwrap();
        let d = degroupoidify_span(&GroupoidSpan::identity(&h)).unwrap();
        assert_eq!(d, QMatrix::identity(2));
    }

    #[test]
    fn monoidal_on_cyclic_points() {
        let g = pt_z2();
        let s = GroupoidSpan::identity(&g);
        let t = terminal();
        let leg = GroupoidFunctor::to_terminal(&g, &t).unwrap();
        let half = GroupoidSpan::new(leg.clone(), leg).unwrap();
        let r = check_monoidal(&half, &half).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, QMatrix::new(1, 1, vec![ratio(1, 4)]).unwrap());
        let one = GroupoidSpan::identity(&terminal());
        let r = check_monoidal(&s, &one).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, QMatrix::identity(1));
    }

    #[test]
    fn one_object_groups() {
        let g = Groupoid::one_object(FiniteGroup::Trivial);
        assert_eq!(vector_of(&GroupoidOver::new(GroupoidFunctor::identity(&g))).entries()[0], rat(1));
    }
}
