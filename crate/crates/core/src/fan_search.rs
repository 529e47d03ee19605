//! Enumeration of all complete simplicial fans on the columns of a fan matrix.
//!
//! The search works purely combinatorially on the set of *minimal* full
//! dimensional simplicial cones (those containing no further column) and on
//! their oriented facets: a collection of such cones is kept when every facet
//! of a chosen cone is matched by exactly one chosen cone on the opposite
//! side. Overlap of interiors is checked afterwards, optionally.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Axiom, Error, Result};
use crate::linalg::{
    canonical_line, integer_kernel_basis, smith_invariants, solve_rational, vec_gcd, IntMatrix,
    RatVector,
};
use crate::polyhedra::{dual_cone, interiors_disjoint, intersect, Cone};

/// A validated F-matrix: `n × m`, rank `n`, columns primitive, pairwise not
/// positively proportional and positively spanning `R^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanMatrix {
    matrix: IntMatrix,
    columns: Vec<Vec<BigInt>>,
    is_cf: bool,
}

impl FanMatrix {
    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn m(&self) -> usize {
        self.matrix.cols()
    }

    /// Rank of the Gale dual, `m - n`.
    pub fn r(&self) -> usize {
        self.m() - self.n()
    }

    pub fn is_cf(&self) -> bool {
        self.is_cf
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn column(&self, j: usize) -> &[BigInt] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.columns
    }

    pub fn submatrix(&self, idx: &IndexSet) -> IntMatrix {
        self.matrix.select_columns(idx.as_slice())
    }

    /// The cone generated by the columns in `idx`.
    pub fn cone(&self, idx: &IndexSet) -> Cone {
        let gens: Vec<Vec<BigInt>> = idx.iter().map(|j| self.columns[j].clone()).collect();
        Cone::from_generators(self.n(), &gens)
    }
}

/// Sorted set of distinct column indices (0-based).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut idx: Vec<usize>) -> Self {
        idx.sort_unstable();
        idx.dedup();
        Self(idx)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn without(&self, j: usize) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&x| x != j).collect())
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    /// Complement inside `{0, …, m-1}`.
    pub fn complement(&self, m: usize) -> IndexSet {
        IndexSet((0..m).filter(|&j| !self.contains(j)).collect())
    }

    /// 1-based indices, as used in reports.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|j| j + 1).collect()
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, j) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", j + 1)?;
        }
        write!(f, "}}")
    }
}

impl Serialize for IndexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

/// A complete simplicial fan, given by its maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fan {
    max_cones: BTreeSet<IndexSet>,
}

impl Fan {
    pub fn new(cones: impl IntoIterator<Item = IndexSet>) -> Self {
        Self {
            max_cones: cones.into_iter().collect(),
        }
    }

    pub fn max_cones(&self) -> &BTreeSet<IndexSet> {
        &self.max_cones
    }

    pub fn len(&self) -> usize {
        self.max_cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.max_cones.is_empty()
    }

    /// All faces (subsets of maximal cones), including the empty face.
    pub fn faces(&self) -> BTreeSet<IndexSet> {
        let mut out = BTreeSet::new();
        for c in &self.max_cones {
            let elems = c.as_slice();
            for mask in 0u32..(1 << elems.len()) {
                let face: Vec<usize> = (0..elems.len())
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| elems[b])
                    .collect();
                out.insert(IndexSet(face));
            }
        }
        out
    }

    /// Checks every fan axiom directly: simplicial full-dimensional cones,
    /// pairwise disjoint interiors, all rays used, and every facet shared by
    /// exactly one cone on the other side.
    pub fn check(&self, v: &FanMatrix) -> Result<()> {
        let n = v.n();
        let cones: Vec<&IndexSet> = self.max_cones.iter().collect();
        for c in &cones {
            if c.len() != n || c.iter().any(|j| j >= v.m()) {
                return Err(Error::NotAFan(format!(
                    "cone {c:?} is not an {n}-subset of the columns"
                )));
            }
            if v.submatrix(c).det().is_zero() {
                return Err(Error::NotAFan(format!(
                    "cone {c:?} is not full-dimensional"
                )));
            }
        }
        let used: BTreeSet<usize> = cones.iter().flat_map(|c| c.iter()).collect();
        if used.len() != v.m() {
            return Err(Error::NotAFan(format!(
                "only {} of {} rays are used",
                used.len(),
                v.m()
            )));
        }
        for c in &cones {
            for k in c.iter() {
                let f = c.without(k);
                let normal = facet_normal(v, &f)?;
                let side = side_of(&normal, v.column(k));
                let partners: Vec<&&IndexSet> =
                    cones.iter().filter(|d| *d != c && f.is_subset(d)).collect();
                if partners.len() != 1 {
                    return Err(Error::NotAFan(format!(
                        "facet {f:?} of {c:?} has {} neighbours",
                        partners.len()
                    )));
                }
                let other = partners[0]
                    .iter()
                    .find(|j| !f.contains(*j))
                    .expect("facet partner");
                if side_of(&normal, v.column(other)) != -side {
                    return Err(Error::NotAFan(format!(
                        "cones {c:?} and {:?} lie on the same side of {f:?}",
                        partners[0]
                    )));
                }
            }
        }
        let geo: Vec<Cone> = cones.iter().map(|c| v.cone(c)).collect();
        for i in 0..geo.len() {
            for j in i + 1..geo.len() {
                if !interiors_disjoint(&geo[i], &geo[j])? {
                    return Err(Error::NotAFan(format!(
                        "cones {:?} and {:?} overlap",
                        cones[i], cones[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A facet of a minimal cone with its chosen positive side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientedFacet {
    pub facet: IndexSet,
    /// Primitive normal, first nonzero coordinate positive.
    pub normal: Vec<BigInt>,
    /// Indices (into the minimal-cone list) of cones on the positive side.
    pub plus: Vec<usize>,
    /// Indices of cones on the negative side.
    pub minus: Vec<usize>,
}

fn side_of(normal: &[BigInt], x: &[BigInt]) -> i8 {
    let s: BigInt = normal.iter().zip(x).map(|(a, b)| a * b).sum();
    if s.is_positive() {
        1
    } else if s.is_negative() {
        -1
    } else {
        0
    }
}

fn facet_normal(v: &FanMatrix, f: &IndexSet) -> Result<Vec<BigInt>> {
    let rows: Vec<Vec<BigInt>> = f.iter().map(|j| v.column(j).to_vec()).collect();
    let k = integer_kernel_basis(&IntMatrix::from_rows(rows, v.n()));
    if k.rows() != 1 {
        return Err(Error::Internal(format!(
            "facet {f:?} spans a space of the wrong dimension"
        )));
    }
    Ok(canonical_line(k.row(0)))
}

/// Checks axioms a-e and computes the CF flag (axiom f).
pub fn validate_fan_matrix(m: &IntMatrix) -> Result<FanMatrix> {
    let n = m.rows();
    let cols = m.columns();
    let violation = |axiom, witness: String| Err(Error::AxiomViolation { axiom, witness });
    if n == 0 || m.cols() == 0 {
        return violation(Axiom::A, "empty matrix".into());
    }
    let rank = m.rank();
    if rank != n {
        return violation(Axiom::A, format!("rank {rank} < {n}"));
    }
    if let Some(j) = cols.iter().position(|c| c.iter().all(Zero::is_zero)) {
        return violation(Axiom::B, format!("column {} is zero", j + 1));
    }
    let dirs: Vec<Vec<BigInt>> = cols.iter().map(|c| crate::linalg::primitive(c)).collect();
    for i in 0..dirs.len() {
        for j in i + 1..dirs.len() {
            if dirs[i] == dirs[j] {
                return violation(
                    Axiom::C,
                    format!("columns {} and {} span the same ray", i + 1, j + 1),
                );
            }
        }
    }
    let span = Cone::from_generators(n, &cols);
    let dual = dual_cone(&span);
    if span.dim() != n || !dual.is_zero_cone() {
        let cert = dual
            .rays()
            .first()
            .or(dual.lineality().first())
            .map(|r| {
                format!(
                    "all columns satisfy {:?}·x >= 0",
                    r.iter().map(ToString::to_string).collect::<Vec<_>>()
                )
            })
            .unwrap_or_else(|| "columns do not span".into());
        return violation(Axiom::D, format!("positive span is not R^{n}: {cert}"));
    }
    if let Some(j) = cols.iter().position(|c| !vec_gcd(c).is_one()) {
        return violation(
            Axiom::E,
            format!("column {} has gcd {}", j + 1, vec_gcd(&cols[j])),
        );
    }
    let inv = smith_invariants(m);
    let is_cf = inv.len() == n && inv.iter().all(One::is_one);
    Ok(FanMatrix {
        matrix: m.clone(),
        columns: cols,
        is_cf,
    })
}

/// Reports the CF axiom as an error, for callers that require a CF-matrix.
pub fn require_cf(v: &FanMatrix) -> Result<()> {
    if v.is_cf() {
        Ok(())
    } else {
        let inv = smith_invariants(v.matrix());
        Err(Error::AxiomViolation {
            axiom: Axiom::F,
            witness: format!(
                "invariant factors {:?}",
                inv.iter().map(ToString::to_string).collect::<Vec<_>>()
            ),
        })
    }
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..m {
            if m - j < k - cur.len() {
                break;
            }
            cur.push(j);
            rec(j + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// All `n`-subsets `I` with `V_I` invertible and `⟨V_I⟩` containing no other column.
pub fn minimal_cones(v: &FanMatrix) -> Vec<IndexSet> {
    combinations(v.m(), v.n())
        .into_par_iter()
        .filter_map(|idx| {
            let idx = IndexSet(idx);
            let sub = v.submatrix(&idx);
            if sub.det().is_zero() {
                return None;
            }
            let contains_other = (0..v.m()).filter(|&j| !idx.contains(j)).any(|j| {
                let rhs = RatVector::from_ints(v.column(j));
                let lambda = solve_rational(&sub, &rhs).expect("invertible system");
                lambda.0.iter().all(|x: &BigRational| !x.is_negative())
            });
            (!contains_other).then_some(idx)
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Facets of the given cones with their incidence on each side.
pub fn oriented_facets(cones: &[IndexSet], v: &FanMatrix) -> Result<Vec<OrientedFacet>> {
    let mut by_facet: BTreeMap<IndexSet, OrientedFacet> = BTreeMap::new();
    for (ci, c) in cones.iter().enumerate() {
        for k in c.iter() {
            let f = c.without(k);
            if !by_facet.contains_key(&f) {
                let normal = facet_normal(v, &f)?;
                by_facet.insert(
                    f.clone(),
                    OrientedFacet {
                        facet: f.clone(),
                        normal,
                        plus: Vec::new(),
                        minus: Vec::new(),
                    },
                );
            }
            let entry = by_facet.get_mut(&f).expect("inserted above");
            match side_of(&entry.normal, v.column(k)) {
                1 => entry.plus.push(ci),
                -1 => entry.minus.push(ci),
                _ => {
                    return Err(Error::Internal(format!(
                        "cone {c:?} is degenerate along {f:?}"
                    )))
                }
            }
        }
    }
    Ok(by_facet.into_values().collect())
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
enum Status {
    Undecided,
    In,
    Out,
}

struct SearchSpace<'a> {
    cones: &'a [IndexSet],
    facets: &'a [OrientedFacet],
    /// for every ray, the cones containing it
    ray_cones: Vec<Vec<usize>>,
}

impl SearchSpace<'_> {
    /// Applies forced moves; `false` when some facet cannot be matched.
    fn propagate(&self, status: &mut [Status]) -> bool {
        loop {
            let mut changed = false;
            for f in self.facets {
                let count =
                    |side: &[usize], s: Status| side.iter().filter(|&&c| status[c] == s).count();
                let (in_p, in_m) = (count(&f.plus, Status::In), count(&f.minus, Status::In));
                if in_p + in_m == 0 {
                    continue;
                }
                if in_p > 1 || in_m > 1 {
                    return false;
                }
                for (mine, theirs, in_mine, in_theirs) in [
                    (&f.plus, &f.minus, in_p, in_m),
                    (&f.minus, &f.plus, in_m, in_p),
                ] {
                    if in_mine == 1 {
                        for &c in mine {
                            if status[c] == Status::Undecided {
                                status[c] = Status::Out;
                                changed = true;
                            }
                        }
                        if in_theirs == 0 {
                            let open: Vec<usize> = theirs
                                .iter()
                                .copied()
                                .filter(|&c| status[c] == Status::Undecided)
                                .collect();
                            match open.len() {
                                0 => return false,
                                1 => {
                                    status[open[0]] = Status::In;
                                    changed = true;
                                }
                                _ => {}
                            }
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&self, mut status: Vec<Status>, out: &mut Vec<Vec<usize>>) {
        if !self.propagate(&mut status) {
            return;
        }
        if self
            .ray_cones
            .iter()
            .any(|cs| cs.iter().all(|&c| status[c] == Status::Out))
        {
            return;
        }
        // an open facet: one side chosen, the other still to pick
        for f in self.facets {
            for (mine, theirs) in [(&f.plus, &f.minus), (&f.minus, &f.plus)] {
                let chosen = mine.iter().any(|&c| status[c] == Status::In);
                let matched = theirs.iter().any(|&c| status[c] == Status::In);
                if chosen && !matched {
                    let open: Vec<usize> = theirs
                        .iter()
                        .copied()
                        .filter(|&c| status[c] == Status::Undecided)
                        .collect();
                    for &pick in &open {
                        let mut next = status.clone();
                        for &c in &open {
                            next[c] = if c == pick { Status::In } else { Status::Out };
                        }
                        self.search(next, out);
                    }
                    return;
                }
            }
        }
        if let Some(c) = status.iter().position(|&s| s == Status::Undecided) {
            let mut with = status.clone();
            with[c] = Status::In;
            self.search(with, out);
            status[c] = Status::Out;
            self.search(status, out);
            return;
        }
        let chosen: Vec<usize> = (0..status.len())
            .filter(|&c| status[c] == Status::In)
            .collect();
        let covered = self
            .ray_cones
            .iter()
            .all(|cs| cs.iter().any(|&c| status[c] == Status::In));
        if !chosen.is_empty() && covered {
            out.push(chosen);
        }
    }
}

/// All collections of minimal cones in which every facet of a chosen cone is
/// matched by exactly one chosen cone on its other side and every ray is
/// used, without any overlap check.
pub fn enumerate_pseudofans(v: &FanMatrix) -> Result<Vec<Fan>> {
    let cones = minimal_cones(v);
    let facets = oriented_facets(&cones, v)?;
    let ray_cones = (0..v.m())
        .map(|j| (0..cones.len()).filter(|&c| cones[c].contains(j)).collect())
        .collect();
    let space = SearchSpace {
        cones: &cones,
        facets: &facets,
        ray_cones,
    };
    let mut found = Vec::new();
    space.search(vec![Status::Undecided; cones.len()], &mut found);
    let fans: BTreeSet<Fan> = found
        .into_iter()
        .map(|sel| Fan::new(sel.into_iter().map(|c| space.cones[c].clone())))
        .collect();
    Ok(fans.into_iter().collect())
}

/// First pair of cones in the collection whose interiors meet, with a point
/// in the interior of their intersection.
pub fn overlap_witness(fan: &Fan, v: &FanMatrix) -> Result<Option<OverlapCertificate>> {
    let cones: Vec<&IndexSet> = fan.max_cones().iter().collect();
    let geo: Vec<Cone> = cones.iter().map(|c| v.cone(c)).collect();
    for i in 0..geo.len() {
        for j in i + 1..geo.len() {
            let meet = intersect(&geo[i], &geo[j])?;
            if meet.dim() == v.n() {
                return Ok(Some(OverlapCertificate {
                    first: cones[i].clone(),
                    second: cones[j].clone(),
                    interior_point: meet.relative_interior_point(),
                }));
            }
        }
    }
    Ok(None)
}

/// The set `SF(V)` of complete simplicial fans using every column as a ray.
pub fn enumerate_sf(v: &FanMatrix, verify_overlap: bool) -> Result<Vec<Fan>> {
    let candidates = enumerate_pseudofans(v)?;
    if !verify_overlap {
        return Ok(candidates);
    }
    let keep: Vec<bool> = candidates
        .par_iter()
        .map(|f| overlap_witness(f, v).map(|w| w.is_none()))
        .collect::<Result<_>>()?;
    Ok(candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(f, k)| k.then_some(f))
        .collect())
}

/// Two cones of a pseudofan with overlapping interiors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapCertificate {
    pub first: IndexSet,
    pub second: IndexSet,
    pub interior_point: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudofanCounterexample {
    pub pseudofan: Fan,
    pub certificate: OverlapCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudofanReport {
    pub pseudofans: usize,
    pub fans: usize,
    pub counterexamples: Vec<PseudofanCounterexample>,
}

impl PseudofanReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Runs the overlap check on every pseudofan and reports the ones failing it.
pub fn test_pseudofan_conjecture(v: &FanMatrix) -> Result<PseudofanReport> {
    let pseudo = enumerate_pseudofans(v)?;
    let witnesses: Vec<Option<OverlapCertificate>> = pseudo
        .par_iter()
        .map(|f| overlap_witness(f, v))
        .collect::<Result<_>>()?;
    let counterexamples: Vec<PseudofanCounterexample> = pseudo
        .iter()
        .zip(witnesses)
        .filter_map(|(f, w)| {
            w.map(|certificate| PseudofanCounterexample {
                pseudofan: f.clone(),
                certificate,
            })
        })
        .collect();
    Ok(PseudofanReport {
        pseudofans: pseudo.len(),
        fans: pseudo.len() - counterexamples.len(),
        counterexamples,
    })
}
