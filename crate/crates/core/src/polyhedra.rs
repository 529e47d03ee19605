//! Exact rational polyhedral cones.
//!
//! A [`Cone`] always carries both representations:
//!
//! * V-representation: extreme rays plus a basis of the lineality space,
//! * H-representation: facet normals `a` (meaning `a·x >= 0`) plus a basis of
//!   the equations `e·x = 0` cutting out the linear span.
//!
//! Conversion between the two is the double description method over
//! arbitrary-precision integers. All vectors are stored primitive, so two
//! equal cones have identical sorted ray and facet lists.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{canonical_line, dot, primitive, rational_span_basis, RatVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
}

/// Generators of `{x : a·x >= 0 for a in ineqs, e·x = 0 for e in eqs}`.
///
/// Returns `(rays, lineality)`; rays are primitive, pairwise distinct and
/// irredundant, lineality is a basis.
fn double_description(
    dim: usize,
    ineqs: &[Vec<BigInt>],
    eqs: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    // constraints already imposed; rays are tested for adjacency against these
    let mut processed: Vec<Vec<BigInt>> = Vec::new();

    let mut constraints: Vec<(Vec<BigInt>, bool)> = Vec::new();
    for e in eqs {
        constraints.push((e.clone(), true));
    }
    for a in ineqs {
        constraints.push((a.clone(), false));
    }

    for (a, is_eq) in constraints {
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        let pivot = lineality.iter().position(|l| !dot(&a, l).is_zero());
        if let Some(p) = pivot {
            let mut l0 = lineality.swap_remove(p);
            let mut s0 = dot(&a, &l0);
            if s0.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                s0 = -s0;
            }
            let project = |v: &Vec<BigInt>| -> Vec<BigInt> {
                let s = dot(&a, v);
                if s.is_zero() {
                    return v.clone();
                }
                let w: Vec<BigInt> = v.iter().zip(&l0).map(|(x, y)| &s0 * x - &s * y).collect();
                primitive(&w)
            };
            lineality = lineality.iter().map(&project).collect();
            rays = rays.iter().map(&project).collect();
            if !is_eq {
                rays.push(primitive(&l0));
            }
            processed.push(a);
            continue;
        }

        let sign: Vec<BigInt> = rays.iter().map(|r| dot(&a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| sign[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| sign[i].is_negative()).collect();
        if neg.is_empty() && (!is_eq || pos.is_empty()) {
            processed.push(a);
            continue;
        }
        let zero_sets: Vec<BTreeSet<usize>> = rays
            .iter()
            .map(|r| {
                processed
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| dot(c, r).is_zero())
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        let mut next: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..rays.len() {
            let keep = if is_eq {
                sign[i].is_zero()
            } else {
                !sign[i].is_negative()
            };
            if keep {
                next.push(rays[i].clone());
            }
        }
        for &p in &pos {
            for &n in &neg {
                let common: BTreeSet<usize> =
                    zero_sets[p].intersection(&zero_sets[n]).copied().collect();
                let adjacent = (0..rays.len())
                    .filter(|&k| k != p && k != n)
                    .all(|k| !common.is_subset(&zero_sets[k]));
                if !adjacent {
                    continue;
                }
                let sp = &sign[p];
                let sn = -&sign[n];
                let w: Vec<BigInt> = rays[n]
                    .iter()
                    .zip(&rays[p])
                    .map(|(x, y)| sp * x + &sn * y)
                    .collect();
                next.push(primitive(&w));
            }
        }
        rays = next;
        processed.push(a);
    }

    let mut rays: Vec<Vec<BigInt>> = rays
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let lineality = canonical_basis(&lineality, dim);
    if !lineality.is_empty() {
        // rays are only defined modulo lineality; pick the representative
        // orthogonal to it so the output is canonical
        rays = rays
            .into_iter()
            .map(|r| reduce_modulo(&r, &lineality))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
    }
    (rays, lineality)
}

/// Canonical basis of the rational span: reduced echelon rows made primitive.
fn canonical_basis(vs: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    if vs.is_empty() {
        return Vec::new();
    }
    rational_span_basis(vs, dim)
        .into_iter()
        .map(|r| canonical_line(&r))
        .collect()
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`, scaled to
/// a primitive integer vector with the same direction as the projection.
fn reduce_modulo(v: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    // solve Gram * c = B v, then v - B^T c
    let k = basis.len();
    let gram: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| BigRational::from_integer(dot(&basis[i], &basis[j])))
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = basis
        .iter()
        .map(|b| BigRational::from_integer(dot(b, v)))
        .collect();
    let c = solve_square(gram, rhs);
    let proj: Vec<BigRational> = (0..v.len())
        .map(|t| {
            let mut x = BigRational::from_integer(v[t].clone());
            for (ci, b) in c.iter().zip(basis) {
                x -= ci * BigRational::from_integer(b[t].clone());
            }
            x
        })
        .collect();
    RatVector(proj).to_primitive_integer()
}

fn solve_square(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !a[i][c].is_zero())
            .expect("singular Gram matrix");
        a.swap(p, c);
        b.swap(p, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        b[c] *= &inv;
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let v = &f * &a[c][j];
                    a[i][j] -= v;
                }
                let v = &f * &b[c];
                b[i] -= v;
            }
        }
    }
    b
}

impl Cone {
    /// The cone generated by `generators`; zero vectors are ignored.
    pub fn from_generators(ambient_dim: usize, generators: &[Vec<BigInt>]) -> Self {
        Self::from_generators_and_lineality(ambient_dim, generators, &[])
    }

    pub fn from_generators_and_lineality(
        ambient_dim: usize,
        generators: &[Vec<BigInt>],
        lineality: &[Vec<BigInt>],
    ) -> Self {
        for g in generators.iter().chain(lineality) {
            assert_eq!(g.len(), ambient_dim, "generator has wrong dimension");
        }
        let gens: Vec<Vec<BigInt>> = generators
            .iter()
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        // H-rep: the dual of the generated cone
        let (facets, equations) = double_description(ambient_dim, &gens, lineality);
        // V-rep: recomputed from the H-rep, which removes redundant generators
        let (rays, lin) = double_description(ambient_dim, &facets, &equations);
        Self {
            ambient_dim,
            rays,
            lineality: lin,
            facets,
            equations,
        }
    }

    /// `{x : a·x >= 0 for every a in ineqs, e·x = 0 for every e in eqs}`.
    pub fn from_inequalities(
        ambient_dim: usize,
        ineqs: &[Vec<BigInt>],
        eqs: &[Vec<BigInt>],
    ) -> Self {
        for g in ineqs.iter().chain(eqs) {
            assert_eq!(g.len(), ambient_dim, "normal has wrong dimension");
        }
        let (rays, lineality) = double_description(ambient_dim, ineqs, eqs);
        let (facets, equations) = double_description(ambient_dim, &rays, &lineality);
        Self {
            ambient_dim,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    /// The cone `{0}`.
    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_generators(ambient_dim, &[])
    }

    /// The nonnegative orthant of `R^d`.
    pub fn orthant(d: usize) -> Self {
        let units: Vec<Vec<BigInt>> = (0..d)
            .map(|i| (0..d).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        Self::from_generators(d, &units)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_zero_cone(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.ambient_dim, "point has wrong dimension");
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|a| !dot(a, x).is_negative())
    }

    pub fn contains_rational(&self, x: &RatVector) -> bool {
        self.contains(&x.to_primitive_integer())
    }

    /// Strict containment in the relative interior.
    pub fn contains_in_relative_interior(&self, x: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|a| dot(a, x).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        self.ambient_dim == other.ambient_dim
            && other.rays.iter().all(|r| self.contains(r))
            && other.lineality.iter().all(|l| {
                let neg: Vec<BigInt> = l.iter().map(|x| -x).collect();
                self.contains(l) && self.contains(&neg)
            })
    }

    /// Equality by double inclusion.
    pub fn same_as(&self, other: &Cone) -> bool {
        self.contains_cone(other) && other.contains_cone(self)
    }

    /// A point in the relative interior: the sum of the extreme rays.
    pub fn relative_interior_point(&self) -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); self.ambient_dim];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    /// Relative-interior point of the face cut out by the facet normal `a`.
    pub fn facet_interior_point(&self, a: &[BigInt]) -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); self.ambient_dim];
        for r in self.rays.iter().filter(|r| dot(a, r).is_zero()) {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    /// Extreme rays of the face `self ∩ {a·x = 0}`.
    pub fn face_rays(&self, a: &[BigInt]) -> Vec<Vec<BigInt>> {
        self.rays
            .iter()
            .filter(|r| dot(a, r).is_zero())
            .cloned()
            .collect()
    }

    /// The linear span as a cone (lineality = span).
    pub fn linear_span(&self) -> Cone {
        let mut gens = self.rays.clone();
        gens.extend(self.lineality.iter().cloned());
        Cone::from_generators_and_lineality(self.ambient_dim, &[], &gens)
    }

    /// Image under the linear map given by `rows` (a `k × ambient_dim` matrix).
    pub fn image(&self, rows: &[Vec<BigInt>]) -> Cone {
        let k = rows.len();
        let apply = |v: &Vec<BigInt>| -> Vec<BigInt> { rows.iter().map(|r| dot(r, v)).collect() };
        let gens: Vec<Vec<BigInt>> = self.rays.iter().map(apply).collect();
        let lin: Vec<Vec<BigInt>> = self.lineality.iter().map(apply).collect();
        Cone::from_generators_and_lineality(k, &gens, &lin)
    }

    /// Preimage under the linear map given by `rows` (a `ambient_dim × d` matrix).
    pub fn preimage(&self, rows: &[Vec<BigInt>], d: usize) -> Cone {
        assert_eq!(
            rows.len(),
            self.ambient_dim,
            "map has wrong target dimension"
        );
        let pull = |a: &Vec<BigInt>| -> Vec<BigInt> {
            (0..d)
                .map(|j| a.iter().zip(rows).map(|(ai, r)| ai * &r[j]).sum())
                .collect()
        };
        let ineqs: Vec<Vec<BigInt>> = self.facets.iter().map(pull).collect();
        let eqs: Vec<Vec<BigInt>> = self.equations.iter().map(pull).collect();
        Cone::from_inequalities(d, &ineqs, &eqs)
    }
}

/// `{f : f·y >= 0 for all y in C}`.
pub fn dual_cone(c: &Cone) -> Cone {
    Cone {
        ambient_dim: c.ambient_dim,
        rays: c.facets.clone(),
        lineality: c.equations.clone(),
        facets: c.rays.clone(),
        equations: c.lineality.clone(),
    }
}

pub fn intersect(c1: &Cone, c2: &Cone) -> Result<Cone> {
    if c1.ambient_dim != c2.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: c1.ambient_dim,
            got: c2.ambient_dim,
        });
    }
    Ok(intersect_all(c1.ambient_dim, [c1, c2]))
}

/// Intersection of any number of cones in the same ambient space.
pub fn intersect_all<'a>(ambient_dim: usize, cones: impl IntoIterator<Item = &'a Cone>) -> Cone {
    let mut ineqs = Vec::new();
    let mut eqs = Vec::new();
    for c in cones {
        assert_eq!(c.ambient_dim, ambient_dim, "cone has wrong dimension");
        ineqs.extend(c.facets.iter().cloned());
        eqs.extend(c.equations.iter().cloned());
    }
    Cone::from_inequalities(ambient_dim, &ineqs, &eqs)
}

pub fn cone_dim(c: &Cone) -> usize {
    c.dim()
}

/// Whether two full-dimensional cones have disjoint interiors.
pub fn interiors_disjoint(c1: &Cone, c2: &Cone) -> Result<bool> {
    let n = c1.ambient_dim;
    if c2.ambient_dim != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: c2.ambient_dim,
        });
    }
    if !c1.is_full_dimensional() || !c2.is_full_dimensional() {
        return Err(Error::Precondition(
            "interiors_disjoint needs full-dimensional cones".into(),
        ));
    }
    Ok(intersect(c1, c2)?.dim() < n)
}

/// A rational point strictly inside a full-dimensional cone.
pub fn interior_point(c: &Cone) -> Result<RatVector> {
    if !c.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            dim: c.dim(),
            ambient: c.ambient_dim,
        });
    }
    let mut p = c.relative_interior_point();
    if p.iter().all(Zero::is_zero) {
        // no facets at all: the cone is the whole space
        if let Some(x) = p.first_mut() {
            *x = BigInt::from(1);
        }
    }
    Ok(RatVector::from_ints(&p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::to_big;

    fn v(x: &[i64]) -> Vec<BigInt> {
        to_big(x)
    }

    fn gens(vs: &[&[i64]]) -> Vec<Vec<BigInt>> {
        vs.iter().map(|x| v(x)).collect()
    }

    #[test]
    fn orthant_is_self_dual() {
        let o = Cone::orthant(3);
        assert!(dual_cone(&o).same_as(&o));
        assert_eq!(o.facets().len(), 3);
        assert_eq!(o.rays().len(), 3);
    }

    #[test]
    fn zero_cone_dual_is_everything() {
        let z = Cone::zero(2);
        assert_eq!(cone_dim(&z), 0);
        let d = dual_cone(&z);
        assert_eq!(d.dim(), 2);
        assert_eq!(d.lineality_dim(), 2);
        assert!(d.contains(&v(&[-3, 7])));
    }

    #[test]
    fn intersections() {
        let c = Cone::from_generators(2, &gens(&[&[1, 0], &[1, 1]]));
        assert!(intersect(&c, &c).unwrap().same_as(&c));
        let q1 = Cone::from_generators(2, &gens(&[&[1, 0], &[0, 1]]));
        let q2 = Cone::from_generators(2, &gens(&[&[0, 1], &[-1, 0]]));
        let meet = intersect(&q1, &q2).unwrap();
        assert_eq!(meet.dim(), 1);
        assert_eq!(meet.rays(), &gens(&[&[0, 1]])[..]);
        let bad = intersect(&q1, &Cone::orthant(3));
        assert!(matches!(bad, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn dimensions() {
        assert_eq!(cone_dim(&Cone::zero(3)), 0);
        assert_eq!(cone_dim(&Cone::from_generators(3, &gens(&[&[1, 2, 3]]))), 1);
        assert_eq!(
            cone_dim(&Cone::from_generators(3, &gens(&[&[1, 0, 0], &[-1, 0, 0]]))),
            1
        );
    }

    #[test]
    fn disjoint_interiors() {
        let q1 = Cone::from_generators(2, &gens(&[&[1, 0], &[0, 1]]));
        let q2 = Cone::from_generators(2, &gens(&[&[0, 1], &[-1, 0]]));
        assert!(!interiors_disjoint(&q1, &q1).unwrap());
        assert!(interiors_disjoint(&q1, &q2).unwrap());
        let a = Cone::from_generators(2, &gens(&[&[1, 0], &[1, 1]]));
        let b = Cone::from_generators(2, &gens(&[&[2, 1], &[0, 1]]));
        assert!(!interiors_disjoint(&a, &b).unwrap());
        assert!(!interiors_disjoint(&b, &a).unwrap());
        let ray = Cone::from_generators(2, &gens(&[&[1, 0]]));
        assert!(interiors_disjoint(&q1, &ray).is_err());
    }

    #[test]
    fn interior_points() {
        let o = Cone::orthant(3);
        let p = interior_point(&o).unwrap();
        let ip = p.to_primitive_integer();
        assert!(o.contains_in_relative_interior(&ip));
        let half = Cone::from_inequalities(2, &gens(&[&[1, 0]]), &[]);
        let h = interior_point(&half).unwrap().to_primitive_integer();
        assert!(h[0].is_positive());
        let ray = Cone::from_generators(3, &gens(&[&[1, 1, 1]]));
        assert!(matches!(
            interior_point(&ray),
            Err(Error::NotFullDimensional { .. })
        ));
    }

    #[test]
    fn redundant_generators_are_removed() {
        let c = Cone::from_generators(2, &gens(&[&[1, 0], &[2, 1], &[0, 1], &[0, 0], &[3, 3]]));
        assert_eq!(c.rays(), &gens(&[&[0, 1], &[1, 0]])[..]);
        assert_eq!(c.facets().len(), 2);
    }

    #[test]
    fn halfspace_and_lineality() {
        // {x : x1 + x2 + x3 >= 0}
        let h = Cone::from_inequalities(3, &gens(&[&[1, 1, 1]]), &[]);
        assert_eq!(h.lineality_dim(), 2);
        assert_eq!(h.rays().len(), 1);
        assert!(h.contains(&v(&[5, -2, -3])));
        assert!(!h.contains(&v(&[0, -1, 0])));
        assert!(dual_cone(&h).same_as(&Cone::from_generators(3, &gens(&[&[1, 1, 1]]))));
    }

    #[test]
    fn simplicial_cone_has_n_facets() {
        let c = Cone::from_generators(3, &gens(&[&[1, 0, 0], &[1, 2, 0], &[-1, -1, 3]]));
        assert_eq!(c.facets().len(), 3);
        assert!(c.is_full_dimensional());
    }

    #[test]
    fn image_and_preimage() {
        let o = Cone::orthant(3);
        let img = o.image(&gens(&[&[1, 0, -1], &[0, 1, -1]]));
        assert_eq!(img.dim(), 2);
        assert_eq!(img.lineality_dim(), 2);
        let pre = Cone::orthant(1).preimage(&gens(&[&[1, 1, 1]]), 3);
        assert!(pre.same_as(&Cone::from_inequalities(3, &gens(&[&[1, 1, 1]]), &[])));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cone_strategy() -> impl Strategy<Value = Cone> {
            (2usize..5).prop_flat_map(|d| {
                proptest::collection::vec(proptest::collection::vec(-3i64..4, d), 0..6).prop_map(
                    move |g| {
                        Cone::from_generators(d, &g.iter().map(|x| to_big(x)).collect::<Vec<_>>())
                    },
                )
            })
        }

        proptest! {
            #[test]
            fn double_dual_is_identity(c in cone_strategy()) {
                let dd = dual_cone(&dual_cone(&c));
                prop_assert!(dd.same_as(&c));
                // recompute from the H-rep alone
                let h = Cone::from_inequalities(c.ambient_dim(), c.facets(), c.equations());
                prop_assert!(h.same_as(&c));
                prop_assert_eq!(h.rays(), c.rays());
            }

            #[test]
            fn generators_satisfy_facets(c in cone_strategy()) {
                for r in c.rays() {
                    prop_assert!(c.contains(r));
                }
                for l in c.lineality() {
                    prop_assert!(c.equations().iter().all(|e| dot(e, l).is_zero()));
                }
            }

            #[test]
            fn disjointness_is_symmetric(a in cone_strategy(), b in cone_strategy()) {
                if a.ambient_dim() == b.ambient_dim() && a.is_full_dimensional() && b.is_full_dimensional() {
                    prop_assert_eq!(interiors_disjoint(&a, &b).unwrap(), interiors_disjoint(&b, &a).unwrap());
                }
            }
        }
    }
}
