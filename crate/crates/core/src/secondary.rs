//! Gale duality: weight matrices, bunches, nef and movable cones.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan_search::{validate_fan_matrix, Fan, FanMatrix, IndexSet};
use crate::linalg::{
    hermite_normal_form, integer_kernel_basis, primitive, same_row_lattice, solve_rational,
    IntMatrix, RatVector,
};
use crate::polyhedra::{interiors_disjoint, intersect_all, Cone};

/// A Gale dual `Q` of a fan matrix: its rows are a basis of `ker(V) ∩ Z^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightMatrix {
    matrix: IntMatrix,
}

impl WeightMatrix {
    /// Wraps `q` after checking that its rows are a basis of the kernel lattice of `v`.
    pub fn new(q: IntMatrix, v: &FanMatrix) -> Result<Self> {
        let kernel = integer_kernel_basis(v.matrix());
        if q.cols() != v.m() || q.rows() != kernel.rows() {
            return Err(Error::DimensionMismatch {
                expected: kernel.rows(),
                got: q.rows(),
            });
        }
        if !same_row_lattice(&q, &kernel) {
            return Err(Error::InvalidInput(
                "rows of Q are not a basis of the kernel lattice of V".into(),
            ));
        }
        Ok(Self { matrix: q })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn r(&self) -> usize {
        self.matrix.rows()
    }

    pub fn m(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_nonnegative(&self) -> bool {
        (0..self.r()).all(|i| self.matrix.row(i).iter().all(|x| !x.is_negative()))
    }

    /// Cone generated by the columns in `idx`.
    pub fn cone(&self, idx: &IndexSet) -> Cone {
        let cols: Vec<Vec<BigInt>> = idx.iter().map(|j| self.matrix.column(j)).collect();
        Cone::from_generators(self.r(), &cols)
    }

    /// The effective cone `⟨Q⟩`.
    pub fn effective_cone(&self) -> Cone {
        Cone::from_generators(self.r(), &self.matrix.columns())
    }

    /// `Q · (1, …, 1)ᵀ`.
    pub fn anticanonical_class(&self) -> Vec<BigInt> {
        (0..self.r())
            .map(|i| self.matrix.row(i).iter().sum())
            .collect()
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// A strictly positive primitive vector of `ker V`.
fn positive_kernel_vector(v: &FanMatrix) -> Result<Vec<BigInt>> {
    let m = v.m();
    let orthant: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let u = Cone::from_inequalities(m, &orthant, &v.matrix().to_rows());
    let p = primitive(&u.relative_interior_point());
    if p.iter().any(|x| !x.is_positive()) {
        return Err(Error::Internal("no strictly positive kernel vector".into()));
    }
    Ok(p)
}

fn inverse_unimodular(u: &IntMatrix) -> IntMatrix {
    let k = u.rows();
    let cols: Vec<Vec<BigInt>> = (0..k)
        .map(|j| {
            let e: Vec<BigRational> = (0..k)
                .map(|i| BigRational::from_integer(BigInt::from((i == j) as i64)))
                .collect();
            let x = solve_rational(u, &RatVector(e)).expect("unimodular matrix is invertible");
            x.0.into_iter().map(|t| t.to_integer()).collect()
        })
        .collect();
    IntMatrix::from_columns(&cols, k)
}

/// A nonnegative Gale dual.
///
/// A strictly positive kernel vector `p` is completed to a lattice basis and
/// multiples of `p` are added to the other rows until they are nonnegative.
/// Rows are then shrunk by nonnegative differences of rows.
pub fn gale_dual(v: &FanMatrix) -> Result<WeightMatrix> {
    let kernel = integer_kernel_basis(v.matrix());
    let r = kernel.rows();
    let p = positive_kernel_vector(v)?;
    let coeffs = solve_rational(&kernel.transpose(), &RatVector::from_ints(&p))
        .ok_or_else(|| Error::Internal("positive vector outside the kernel".into()))?;
    let c: Vec<BigInt> = coeffs.0.iter().map(|t| t.to_integer()).collect();
    let (_, u) = hermite_normal_form(&IntMatrix::from_columns(&[c], r));
    // rows of (U⁻¹)ᵀ form a unimodular matrix whose first row is c
    let basis = inverse_unimodular(&u).transpose().mul(&kernel);
    let mut rows = basis.to_rows();
    if rows[0] != p {
        let neg: Vec<BigInt> = rows[0].iter().map(|x| -x).collect();
        if neg != p {
            return Err(Error::Internal(
                "basis completion lost the positive vector".into(),
            ));
        }
        rows[0] = neg;
    }
    for row in rows.iter_mut().skip(1) {
        let t = row
            .iter()
            .zip(&p)
            .map(|(x, pj)| ceil_div(&-x, pj))
            .max()
            .unwrap_or_default()
            .max(BigInt::zero());
        for (x, pj) in row.iter_mut().zip(&p) {
            *x += &t * pj;
        }
    }
    shrink_nonnegative(&mut rows);
    let q = IntMatrix::from_rows(rows, v.m());
    let w = WeightMatrix::new(q, v)?;
    debug_assert!(w.is_nonnegative());
    Ok(w)
}

/// Subtracts one row from another while the difference stays nonnegative.
fn shrink_nonnegative(rows: &mut [Vec<BigInt>]) {
    loop {
        let mut changed = false;
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                if i == j {
                    continue;
                }
                while rows[i].iter().zip(&rows[j]).all(|(a, b)| a >= b) {
                    let rj = rows[j].clone();
                    for (a, b) in rows[i].iter_mut().zip(&rj) {
                        *a -= b;
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// The fan matrix `G(Q)` whose rows are a basis of `ker Q ∩ Z^m`.
pub fn fan_matrix_of(q: &IntMatrix) -> Result<FanMatrix> {
    validate_fan_matrix(&integer_kernel_basis(q))
}

/// The CF-matrix `G(G(V))` with the same Gale dual as `V`.
pub fn cf_cover(v: &FanMatrix) -> Result<FanMatrix> {
    let q = integer_kernel_basis(v.matrix());
    let cover = fan_matrix_of(&q)?;
    if !cover.is_cf() {
        return Err(Error::Internal(
            "double Gale dual is not a CF-matrix".into(),
        ));
    }
    Ok(cover)
}

/// One cone `⟨Q_Ī⟩` per maximal cone `J` of a fan, `Ī` the complement of `J`.
#[derive(Clone, Debug)]
pub struct Bunch {
    pub cones: Vec<Cone>,
}

impl Bunch {
    /// Pairwise intersecting interiors.
    pub fn is_bunch(&self) -> Result<bool> {
        for (i, a) in self.cones.iter().enumerate() {
            for b in &self.cones[i + 1..] {
                if interiors_disjoint(a, b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every column cone `⟨Q^{i}⟩` (column `i` deleted) contains a bunch cone.
    pub fn covers_column_deletions(&self, q: &WeightMatrix) -> bool {
        let all = IndexSet::new((0..q.m()).collect());
        (0..q.m()).all(|i| {
            let deleted = q.cone(&all.without(i));
            self.cones.iter().any(|c| deleted.contains_cone(c))
        })
    }
}

pub fn bunch_of_fan(fan: &Fan, q: &WeightMatrix) -> Bunch {
    let m = q.m();
    Bunch {
        cones: fan
            .max_cones()
            .iter()
            .map(|j| q.cone(&j.complement(m)))
            .collect(),
    }
}

/// The chamber of a fan: the intersection of its bunch cones.
pub fn nef_cone(fan: &Fan, q: &WeightMatrix) -> Cone {
    let bunch = bunch_of_fan(fan, q);
    intersect_all(q.r(), bunch.cones.iter())
}

pub fn is_projective(fan: &Fan, q: &WeightMatrix) -> bool {
    nef_cone(fan, q).dim() == q.r()
}

/// Nef cones of many fans, in order.
pub fn nef_cones(fans: &[Fan], q: &WeightMatrix) -> Vec<Cone> {
    fans.par_iter().map(|f| nef_cone(f, q)).collect()
}

/// `⋂_i ⟨Q^{i}⟩`.
pub fn movable_cone(q: &WeightMatrix) -> Cone {
    let all = IndexSet::new((0..q.m()).collect());
    let cones: Vec<Cone> = (0..q.m()).map(|i| q.cone(&all.without(i))).collect();
    intersect_all(q.r(), cones.iter())
}

/// The deformation family `(Q_{p/q}, V_{p/q})`.
pub fn family_matrices(p: u64, q: u64) -> Result<(WeightMatrix, FanMatrix)> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidInput("p and q must be positive".into()));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let (p, q) = (p as i64, q as i64);
    let qm = IntMatrix::from_i64_rows(&[
        vec![1, 1, 0, 0, 1, 0],
        vec![0, 1, 1, q, 0, 0],
        vec![0, 0, 0, p, 1, 1],
    ]);
    let vm = IntMatrix::from_i64_rows(&[
        vec![1, 0, 0, 0, -1, 1],
        vec![0, 1, q - 1, -1, -1, p + 1],
        vec![0, 0, q, -1, 0, p],
    ]);
    let v = validate_fan_matrix(&vm)?;
    if !same_row_lattice(&integer_kernel_basis(&qm), &vm) {
        return Err(Error::Internal(
            "printed V is not the Gale dual of Q".into(),
        ));
    }
    let w = WeightMatrix::new(qm, &v)?;
    Ok((w, v))
}

/// A point of the plane section `x1 + x2 + x3 = 1`, in the coordinates `(x1, x2)`.
pub type SectionPoint = [BigRational; 2];

fn cross(o: &SectionPoint, a: &SectionPoint, b: &SectionPoint) -> BigRational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Vertices, counterclockwise, of the section of a cone in `R^3_{>=0}` by the
/// standard simplex. Empty for `{0}`.
pub fn section_polygon(cone: &Cone) -> Result<Vec<SectionPoint>> {
    if cone.ambient_dim() != 3 {
        return Err(Error::UnsupportedRank(cone.ambient_dim()));
    }
    if !cone.lineality().is_empty() {
        return Err(Error::Precondition(
            "section of a cone with lineality".into(),
        ));
    }
    let mut pts: Vec<SectionPoint> = Vec::new();
    for r in cone.rays() {
        let s: BigInt = r.iter().sum();
        if !s.is_positive() || r.iter().any(Signed::is_negative) {
            return Err(Error::Precondition(
                "cone leaves the nonnegative orthant".into(),
            ));
        }
        pts.push([
            BigRational::new(r[0].clone(), s.clone()),
            BigRational::new(r[1].clone(), s.clone()),
        ]);
    }
    if pts.len() < 3 {
        return Ok(pts);
    }
    let n = BigRational::from_integer(BigInt::from(pts.len() as i64));
    let c: SectionPoint = [
        pts.iter().map(|p| p[0].clone()).sum::<BigRational>() / &n,
        pts.iter().map(|p| p[1].clone()).sum::<BigRational>() / &n,
    ];
    let half = |p: &SectionPoint| -> bool {
        // upper half-plane around c, with the positive x-axis included
        let (dx, dy) = (&p[0] - &c[0], &p[1] - &c[1]);
        dy.is_positive() || (dy.is_zero() && dx.is_positive())
    };
    pts.sort_by(|a, b| match (half(a), half(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => cross(&c, b, a).cmp(&BigRational::zero()),
    });
    Ok(pts)
}

/// Area of a polygon given counterclockwise.
pub fn polygon_area(pts: &[SectionPoint]) -> BigRational {
    if pts.len() < 3 {
        return BigRational::zero();
    }
    let mut twice = BigRational::zero();
    for i in 0..pts.len() {
        let (a, b) = (&pts[i], &pts[(i + 1) % pts.len()]);
        twice += &a[0] * &b[1] - &a[1] * &b[0];
    }
    (twice / BigRational::from_integer(BigInt::from(2))).abs()
}

pub fn section_area(cone: &Cone) -> Result<BigRational> {
    Ok(polygon_area(&section_polygon(cone)?))
}

/// Chamber bookkeeping for rank 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AreaAccounting {
    pub movable_area: String,
    pub chamber_area_sum: String,
    pub interiors_disjoint: bool,
    pub inside_movable: bool,
}

impl AreaAccounting {
    pub fn holds(&self) -> bool {
        self.movable_area == self.chamber_area_sum && self.interiors_disjoint && self.inside_movable
    }
}

/// Checks that full-dimensional chambers tile the movable cone.
pub fn area_accounting(chambers: &[Cone], q: &WeightMatrix) -> Result<AreaAccounting> {
    if q.r() != 3 {
        return Err(Error::UnsupportedRank(q.r()));
    }
    let mov = movable_cone(q);
    let full: Vec<&Cone> = chambers
        .iter()
        .filter(|c| c.is_full_dimensional())
        .collect();
    let mut sum = BigRational::zero();
    for c in &full {
        sum += section_area(c)?;
    }
    let mut disjoint = true;
    for (i, a) in full.iter().enumerate() {
        for b in &full[i + 1..] {
            disjoint &= interiors_disjoint(a, b)?;
        }
    }
    Ok(AreaAccounting {
        movable_area: section_area(&mov)?.to_string(),
        chamber_area_sum: sum.to_string(),
        interiors_disjoint: disjoint,
        inside_movable: full.iter().all(|c| mov.contains_cone(c)),
    })
}

/// Ray of `cone` if it is one-dimensional.
pub fn single_ray(cone: &Cone) -> Option<Vec<BigInt>> {
    (cone.dim() == 1 && cone.lineality().is_empty() && cone.rays().len() == 1)
        .then(|| cone.rays()[0].clone())
}

/// Same ray up to positive scaling.
pub fn same_ray(a: &[BigInt], b: &[BigInt]) -> bool {
    primitive(a) == primitive(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan_search::enumerate_sf;
    use crate::linalg::to_big;

    fn fm(rows: &[Vec<i64>]) -> FanMatrix {
        validate_fan_matrix(&IntMatrix::from_i64_rows(rows)).unwrap()
    }

    fn p2() -> FanMatrix {
        fm(&[vec![1, 0, -1], vec![0, 1, -1]])
    }

    fn bh() -> FanMatrix {
        fm(&[
            vec![1, 0, 0, 0, -1, 1],
            vec![0, 1, 0, -1, -1, 2],
            vec![0, 0, 1, -1, 0, 1],
        ])
    }

    fn q_bh() -> IntMatrix {
        IntMatrix::from_i64_rows(&[
            vec![1, 1, 0, 0, 1, 0],
            vec![0, 1, 1, 1, 0, 0],
            vec![0, 0, 0, 1, 1, 1],
        ])
    }

    #[test]
    fn gale_dual_of_projective_plane() {
        let q = gale_dual(&p2()).unwrap();
        assert_eq!(q.matrix(), &IntMatrix::from_i64_rows(&[vec![1, 1, 1]]));
    }

    #[test]
    fn gale_dual_bh_is_nonnegative_basis() {
        let q = gale_dual(&bh()).unwrap();
        assert!(q.is_nonnegative());
        assert_eq!(q.matrix(), &q_bh());
        assert!(bh().matrix().mul(&q.matrix().transpose()).is_zero());
    }

    #[test]
    fn gale_dual_example71() {
        let v = fm(&[
            vec![1, 1, 0, 2, -1, 0, 1],
            vec![0, 2, 0, 2, -1, 0, 1],
            vec![0, 0, 1, -1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 1, -1],
        ]);
        let printed = IntMatrix::from_i64_rows(&[
            vec![1, 1, 0, 0, 2, 0, 0],
            vec![0, 0, 1, 1, 2, 0, 0],
            vec![0, 0, 0, 0, 1, 1, 1],
        ]);
        let q = gale_dual(&v).unwrap();
        assert!(q.is_nonnegative());
        assert!(same_row_lattice(q.matrix(), &printed));
        let cover = cf_cover(&v).unwrap();
        assert!(cover.is_cf());
        assert!(same_row_lattice(
            &integer_kernel_basis(cover.matrix()),
            q.matrix()
        ));
    }

    #[test]
    fn cf_cover_of_weighted_plane() {
        let v = fm(&[vec![1, 0, -2], vec![0, 1, -3]]);
        let cover = cf_cover(&v).unwrap();
        assert_eq!(
            integer_kernel_basis(cover.matrix()),
            integer_kernel_basis(v.matrix())
        );
        assert_eq!(
            integer_kernel_basis(v.matrix()),
            IntMatrix::from_i64_rows(&[vec![2, 3, 1]])
        );
        assert!(cover.is_cf());
    }

    #[test]
    fn projective_plane_nef_cone() {
        let v = p2();
        let q = gale_dual(&v).unwrap();
        let fans = enumerate_sf(&v, true).unwrap();
        assert_eq!(fans.len(), 1);
        let bunch = bunch_of_fan(&fans[0], &q);
        assert_eq!(bunch.cones.len(), 3);
        assert!(bunch.is_bunch().unwrap());
        assert!(is_projective(&fans[0], &q));
        assert!(movable_cone(&q).same_as(&q.effective_cone()));
    }

    #[test]
    fn bh_non_projective_fans_have_anticanonical_nef_ray() {
        let v = bh();
        let q = WeightMatrix::new(q_bh(), &v).unwrap();
        assert_eq!(q.anticanonical_class(), to_big(&[3, 3, 3]));
        let fans = enumerate_sf(&v, true).unwrap();
        assert_eq!(fans.len(), 8);
        let cones = nef_cones(&fans, &q);
        let projective = cones.iter().filter(|c| c.dim() == 3).count();
        assert_eq!(projective, 6);
        for c in cones.iter().filter(|c| c.dim() < 3) {
            let ray = single_ray(c).expect("a ray");
            assert!(same_ray(&ray, &q.anticanonical_class()));
        }
        for f in &fans {
            let b = bunch_of_fan(f, &q);
            assert!(b.is_bunch().unwrap());
            assert!(b.covers_column_deletions(&q));
        }
        let mov = movable_cone(&q);
        assert!(q.effective_cone().contains_cone(&mov));
        let acc = area_accounting(&cones, &q).unwrap();
        assert!(acc.holds(), "{acc:?}");
    }

    #[test]
    fn family_reproduces_bh() {
        let (q, v) = family_matrices(1, 1).unwrap();
        assert_eq!(q.matrix(), &q_bh());
        assert_eq!(v.matrix(), bh().matrix());
    }

    #[test]
    fn family_two_one() {
        let (q, v) = family_matrices(2, 1).unwrap();
        assert_eq!(q.matrix().column(3), to_big(&[0, 1, 2]));
        let fans = enumerate_sf(&v, true).unwrap();
        assert_eq!(fans.len(), 8);
        let cones = nef_cones(&fans, &q);
        assert_eq!(cones.iter().filter(|c| c.dim() == 3).count(), 7);
        assert!(cones.iter().any(|c| c.is_zero_cone()));
        assert!(area_accounting(&cones, &q).unwrap().holds());
    }

    #[test]
    fn family_three_two_is_valid() {
        let (q, v) = family_matrices(3, 2).unwrap();
        assert!(v.matrix().mul(&q.matrix().transpose()).is_zero());
    }

    #[test]
    fn family_rejects_common_factor() {
        assert!(matches!(
            family_matrices(2, 4),
            Err(Error::NotCoprime { p: 2, q: 4 })
        ));
    }

    #[test]
    fn unit_triangle_area() {
        let c = Cone::orthant(3);
        assert_eq!(
            section_area(&c).unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
    }
}
