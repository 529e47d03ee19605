//! Gröbner fan traversal of the homogenized toric ideal and the map from
//! initial ideals to fans.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan_search::{Fan, FanMatrix, IndexSet};
use crate::linalg::dot;
use crate::polyhedra::{intersect, Cone};
use crate::toric::{
    buchberger_unchecked, normal_form, toric_ideal, weight_ties, BinomialIdeal, Exponent,
    MarkedBinomial, MonomialIdeal, TermOrder,
};

/// One full-dimensional Gröbner cone.
#[derive(Clone, Debug)]
pub struct GroebnerRecord {
    pub reduced_gb: Vec<MarkedBinomial>,
    pub initial: MonomialIdeal,
    pub cone: Cone,
    /// A weight in the interior of `cone`.
    pub weight: Vec<BigInt>,
}

impl GroebnerRecord {
    fn from_gb(reduced_gb: Vec<MarkedBinomial>, nvars: usize) -> Result<Self> {
        let ineqs: Vec<Vec<BigInt>> = reduced_gb.iter().map(MarkedBinomial::direction).collect();
        let cone = Cone::from_inequalities(nvars, &ineqs, &[]);
        if !cone.is_full_dimensional() {
            return Err(Error::Internal(
                "Gröbner cone is not full-dimensional".into(),
            ));
        }
        let weight = cone.relative_interior_point();
        if ineqs.iter().any(|a| !dot(a, &weight).is_positive()) {
            return Err(Error::Internal(
                "interior weight of a Gröbner cone is not generic".into(),
            ));
        }
        let initial = MonomialIdeal::new(nvars, reduced_gb.iter().map(|g| g.lead.clone()));
        Ok(Self {
            reduced_gb,
            initial,
            cone,
            weight,
        })
    }
}

/// Term order for an arbitrary weight on a homogeneous ideal: the weight is
/// shifted by a multiple of `(1, …, 1)` until it is nonnegative.
fn shifted_order(w: &[BigInt]) -> TermOrder {
    let min = w.iter().min().cloned().unwrap_or_default();
    let shift = if min.is_negative() {
        -min
    } else {
        BigInt::zero()
    };
    TermOrder::new(w.iter().map(|x| x + &shift).collect())
}

fn generators(ideal: &BinomialIdeal) -> Vec<(Exponent, Exponent)> {
    ideal
        .generators()
        .iter()
        .map(|g| (g.positive_part(), g.negative_part()))
        .collect()
}

fn total_degree(e: &[i64]) -> i64 {
    e.iter().sum()
}

/// Homogenizes a reduced Gröbner basis of `I` for the degree order with a new
/// last variable.
pub fn homogenize(ideal: &BinomialIdeal) -> BinomialIdeal {
    let m = ideal.nvars();
    let gb = buchberger_unchecked(&generators(ideal), &TermOrder::degree(m), true);
    BinomialIdeal::new(
        m + 1,
        gb.iter().map(|g| {
            let (da, db) = (total_degree(&g.lead), total_degree(&g.trail));
            let mut u: Vec<i64> = g.lead.iter().zip(&g.trail).map(|(a, b)| a - b).collect();
            u.push(db - da);
            crate::toric::Binomial::new(u)
        }),
    )
}

pub fn is_homogeneous(ideal: &BinomialIdeal) -> bool {
    ideal
        .generators()
        .iter()
        .all(|g| g.u.iter().sum::<i64>() == 0)
}

/// Sets the last variable to 1 in every generator.
pub fn dehomogenize_ideal(ideal: &BinomialIdeal) -> BinomialIdeal {
    let m = ideal.nvars() - 1;
    BinomialIdeal::new(
        m,
        ideal
            .generators()
            .iter()
            .filter(|g| g.u[..m].iter().any(|&x| x != 0))
            .map(|g| crate::toric::Binomial::new(g.u[..m].to_vec())),
    )
}

fn step_across(
    gens: &[(Exponent, Exponent)],
    rec: &GroebnerRecord,
    facet: &[BigInt],
) -> Result<GroebnerRecord> {
    let nvars = rec.cone.ambient_dim();
    let p = rec.cone.facet_interior_point(facet);
    let mut k = BigInt::one();
    for _ in 0..128 {
        let w: Vec<BigInt> = p.iter().zip(facet).map(|(x, a)| &k * x - a).collect();
        let gb = buchberger_unchecked(gens, &shifted_order(&w), true);
        let ok = gb.iter().all(|g| {
            let d = g.direction();
            dot(&w, &d).is_positive() && !dot(&p, &d).is_negative()
        });
        if ok {
            return GroebnerRecord::from_gb(gb, nvars);
        }
        k *= 2;
    }
    Err(Error::Internal(
        "could not step across a Gröbner cone facet".into(),
    ))
}

fn traverse(
    hi: &BinomialIdeal,
    start: &[BigInt],
    keep: impl Fn(&GroebnerRecord) -> bool + Sync,
) -> Result<Vec<GroebnerRecord>> {
    let nvars = hi.nvars();
    let gb = buchberger_unchecked(&generators(hi), &shifted_order(start), true);
    let first = GroebnerRecord::from_gb(gb, nvars)?;
    if !keep(&first) {
        return Err(Error::Internal(
            "start cone lies outside the traversed region".into(),
        ));
    }
    let mut visited: BTreeMap<Vec<MarkedBinomial>, GroebnerRecord> = BTreeMap::new();
    visited.insert(first.reduced_gb.clone(), first.clone());
    let mut frontier = vec![first];
    while !frontier.is_empty() {
        let found: Vec<Result<Vec<GroebnerRecord>>> = frontier
            .par_iter()
            .map(|rec| {
                let gens: Vec<(Exponent, Exponent)> = rec
                    .reduced_gb
                    .iter()
                    .map(|g| (g.lead.clone(), g.trail.clone()))
                    .collect();
                rec.cone
                    .facets()
                    .iter()
                    .map(|a| step_across(&gens, rec, a))
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for batch in found {
            for rec in batch? {
                if visited.contains_key(&rec.reduced_gb) || !keep(&rec) {
                    continue;
                }
                visited.insert(rec.reduced_gb.clone(), rec.clone());
                next.push(rec);
            }
        }
        next.sort_by(|a, b| a.reduced_gb.cmp(&b.reduced_gb));
        frontier = next;
    }
    Ok(visited.into_values().collect())
}

fn start_weight(nvars: usize) -> Vec<BigInt> {
    vec![BigInt::one(); nvars]
}

/// All reduced Gröbner bases of a homogeneous binomial ideal, sorted.
pub fn enumerate_initial_ideals(hi: &BinomialIdeal) -> Result<Vec<GroebnerRecord>> {
    if !is_homogeneous(hi) {
        return Err(Error::Precondition("ideal is not homogeneous".into()));
    }
    traverse(hi, &start_weight(hi.nvars()), |_| true)
}

/// The Gröbner cones of a homogenized ideal whose initial ideal contains no
/// power of the homogenizing variable. They form a convex region, so the
/// traversal never needs to leave it.
pub fn enumerate_dehomogenizable(hi: &BinomialIdeal) -> Result<Vec<GroebnerRecord>> {
    if !is_homogeneous(hi) {
        return Err(Error::Precondition("ideal is not homogeneous".into()));
    }
    let h = hi.nvars() - 1;
    traverse(hi, &start_weight(hi.nvars()), move |rec| {
        !rec.initial.contains_power_of(h)
    })
}

/// Result of dehomogenizing the traversal output.
#[derive(Clone, Debug)]
pub struct Dehomogenized {
    /// Distinct dehomogenized initial ideals before dropping variable powers.
    pub before_filter: Vec<MonomialIdeal>,
    /// Survivors, sorted.
    pub ideals: Vec<MonomialIdeal>,
}

/// Drops ideals with a power of the last variable, sets it to 1, then drops
/// ideals with a power of any remaining variable.
pub fn dehomogenize_and_filter(records: &[GroebnerRecord]) -> Dehomogenized {
    let before: BTreeSet<MonomialIdeal> = records
        .iter()
        .filter(|r| !r.initial.contains_power_of(r.initial.nvars() - 1))
        .map(|r| r.initial.dehomogenize())
        .collect();
    let ideals = before
        .iter()
        .filter(|i| !(0..i.nvars()).any(|j| i.contains_power_of(j)))
        .cloned()
        .collect();
    Dehomogenized {
        before_filter: before.into_iter().collect(),
        ideals,
    }
}

fn subsets_by_mask(m: usize) -> Result<u64> {
    if m > 30 {
        return Err(Error::Precondition(format!(
            "too many variables ({m}) for face enumeration"
        )));
    }
    Ok(1u64 << m)
}

fn mask_of(e: &[i64]) -> u64 {
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .fold(0, |acc, (i, _)| acc | (1 << i))
}

fn index_set_of(mask: u64, m: usize) -> IndexSet {
    IndexSet::new((0..m).filter(|i| mask >> i & 1 == 1).collect())
}

/// The fan whose cones are the `V_J` with `J` containing no generator support.
pub fn fan_from_initial_ideal(ideal: &MonomialIdeal, v: &FanMatrix) -> Result<Fan> {
    let m = v.m();
    if ideal.nvars() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: ideal.nvars(),
        });
    }
    let supports: Vec<u64> = ideal.generators().iter().map(|g| mask_of(g)).collect();
    let total = subsets_by_mask(m)?;
    let is_face = |j: u64| supports.iter().all(|s| s & !j != 0);
    let mut maximal = Vec::new();
    for j in 0..total {
        if !is_face(j) {
            continue;
        }
        if (0..m).all(|i| j >> i & 1 == 1 || !is_face(j | 1 << i)) {
            if j.count_ones() as usize != v.n() {
                return Err(Error::NotAFan(format!(
                    "maximal face {:?} has {} elements, expected {}",
                    index_set_of(j, m),
                    j.count_ones(),
                    v.n()
                )));
            }
            maximal.push(index_set_of(j, m));
        }
    }
    let fan = Fan::new(maximal);
    fan.check(v).map_err(|e| Error::NotAFan(e.to_string()))?;
    Ok(fan)
}

/// Squarefree ideal of the minimal non-faces of the fan.
pub fn stanley_reisner(fan: &Fan, m: usize) -> MonomialIdeal {
    let faces = fan.faces();
    let mut gens = Vec::new();
    let candidates: BTreeSet<IndexSet> = faces
        .iter()
        .flat_map(|f| {
            (0..m)
                .filter(|i| !f.contains(*i))
                .map(|i| {
                    let mut s = f.as_slice().to_vec();
                    s.push(i);
                    IndexSet::new(s)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    for s in candidates {
        if faces.contains(&s) {
            continue;
        }
        if s.iter().all(|i| faces.contains(&s.without(i))) {
            let mut e = vec![0; m];
            for i in s.iter() {
                e[i] = 1;
            }
            gens.push(e);
        }
    }
    MonomialIdeal::new(m, gens)
}

/// An initial ideal of `I_V` that survived the filters, with its fan.
#[derive(Clone, Debug, Serialize)]
pub struct InitialToFanRecord {
    pub initial: MonomialIdeal,
    pub fan: Fan,
    pub radical: MonomialIdeal,
    /// Reduced Gröbner basis of `I_V` with initial ideal `initial`.
    #[serde(skip)]
    pub reduced_gb: Vec<MarkedBinomial>,
    /// A strictly positive generic weight realizing `initial`.
    #[serde(skip)]
    pub weight: Vec<BigInt>,
    /// Closed Gröbner cone of `I_V` in `R^m`.
    #[serde(skip)]
    pub cone: Cone,
    /// The homogenized Gröbner cones dehomogenizing to `initial`.
    #[serde(skip)]
    pub homogenized_cones: Vec<Cone>,
}

/// Everything produced by the algebraic enumeration of projective fans.
#[derive(Clone, Debug)]
pub struct PsfResult {
    pub ideal: BinomialIdeal,
    pub homogenized: BinomialIdeal,
    pub groebner_cones: usize,
    pub before_filter: usize,
    pub records: Vec<InitialToFanRecord>,
    pub fans: Vec<Fan>,
}

impl PsfResult {
    /// Homogenized Gröbner cones surviving both filters.
    pub fn surviving_cones(&self) -> usize {
        self.records.iter().map(|r| r.homogenized_cones.len()).sum()
    }

    pub fn cones_of_fan(&self, fan: &Fan) -> usize {
        self.records
            .iter()
            .filter(|r| &r.fan == fan)
            .map(|r| r.homogenized_cones.len())
            .sum()
    }
}

/// Dehomogenizes a reduced basis of the homogenized ideal into the reduced
/// basis of `I_V` for the induced weight.
fn dehomogenized_gb(rec: &GroebnerRecord, initial: &MonomialIdeal) -> Vec<MarkedBinomial> {
    reduced_from_rules(&rec.reduced_gb, initial)
}

/// Reduced basis `{a - NF(a)}` of `I_V` over the minimal generators of
/// `initial`, reducing by the dehomogenized upstairs basis.
fn reduced_from_rules(upstairs: &[MarkedBinomial], initial: &MonomialIdeal) -> Vec<MarkedBinomial> {
    let m = initial.nvars();
    let rules: Vec<MarkedBinomial> = upstairs
        .iter()
        .map(|g| MarkedBinomial {
            lead: g.lead[..m].to_vec(),
            trail: g.trail[..m].to_vec(),
        })
        .collect();
    let mut gb: Vec<MarkedBinomial> = initial
        .generators()
        .iter()
        .map(|a| MarkedBinomial {
            lead: a.clone(),
            trail: normal_form(a, &rules),
        })
        .collect();
    gb.sort();
    gb
}

fn downstairs_weight(w: &[BigInt]) -> Vec<BigInt> {
    let m = w.len() - 1;
    w[..m].iter().map(|x| x - &w[m]).collect()
}

/// Gröbner cone of `I_V` cut with the nonnegative orthant; full-dimensional
/// since the cone's lineality contains the row space of `V`.
fn positive_weight(cone: &Cone) -> Result<Vec<BigInt>> {
    let positive = intersect(cone, &Cone::orthant(cone.ambient_dim()))?;
    if !positive.is_full_dimensional() {
        return Err(Error::Internal(
            "Gröbner cone misses the open orthant".into(),
        ));
    }
    Ok(positive.relative_interior_point())
}

/// Initial ideal of `I_V` at a weight of the Gröbner region, through the
/// homogenized ideal. The weight need not be nonnegative.
pub fn initial_ideal_via_homogenization(hi: &BinomialIdeal, w: &[BigInt]) -> Result<MonomialIdeal> {
    let m = hi.nvars() - 1;
    if w.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: w.len(),
        });
    }
    let mut lifted = w.to_vec();
    lifted.push(BigInt::zero());
    let gb = buchberger_unchecked(&generators(hi), &shifted_order(&lifted), true);
    let initial = MonomialIdeal::new(m + 1, gb.iter().map(|g| g.lead.clone()));
    if initial.contains_power_of(m) {
        return Err(Error::Precondition(
            "weight lies outside the Gröbner region".into(),
        ));
    }
    let initial = initial.dehomogenize();
    let ord = TermOrder::new(w.to_vec());
    if let Some(g) = weight_ties(&reduced_from_rules(&gb, &initial), &ord) {
        return Err(Error::NonGenericWeight {
            binomial: g.to_string(),
        });
    }
    Ok(initial)
}

/// The set of projective fans, computed algebraically.
pub fn enumerate_psf(v: &FanMatrix) -> Result<PsfResult> {
    let m = v.m();
    let ideal = toric_ideal(v);
    let homogenized = homogenize(&ideal);
    let cones = enumerate_dehomogenizable(&homogenized)?;
    let filtered = dehomogenize_and_filter(&cones);

    let mut by_ideal: BTreeMap<MonomialIdeal, InitialToFanRecord> = BTreeMap::new();
    for rec in &cones {
        let initial = rec.initial.dehomogenize();
        if filtered.ideals.binary_search(&initial).is_err() {
            continue;
        }
        if let Some(existing) = by_ideal.get_mut(&initial) {
            if dehomogenized_gb(rec, &initial) != existing.reduced_gb {
                return Err(Error::Internal(
                    "one initial ideal with two reduced Gröbner bases".into(),
                ));
            }
            existing.homogenized_cones.push(rec.cone.clone());
            continue;
        }
        let reduced_gb = dehomogenized_gb(rec, &initial);
        let ineqs: Vec<Vec<BigInt>> = reduced_gb.iter().map(MarkedBinomial::direction).collect();
        let cone = Cone::from_inequalities(m, &ineqs, &[]);
        let w = downstairs_weight(&rec.weight);
        if !cone.contains_in_relative_interior(&w) || !cone.is_full_dimensional() {
            return Err(Error::Internal(
                "dehomogenized weight is not interior".into(),
            ));
        }
        let weight = positive_weight(&cone)?;
        // direct route: Buchberger on I_V at a positive weight of the same cone
        let direct = crate::toric::buchberger(&ideal, &TermOrder::new(weight.clone()))?;
        if direct != reduced_gb {
            return Err(Error::Internal(format!(
                "direct Gröbner basis disagrees with the dehomogenized one for {initial}"
            )));
        }
        let fan = fan_from_initial_ideal(&initial, v)?;
        let radical = stanley_reisner(&fan, m);
        if radical != initial.radical() {
            return Err(Error::Internal(format!(
                "radical of {initial} is not the Stanley-Reisner ideal"
            )));
        }
        by_ideal.insert(
            initial.clone(),
            InitialToFanRecord {
                initial,
                fan,
                radical,
                reduced_gb,
                weight,
                cone,
                homogenized_cones: vec![rec.cone.clone()],
            },
        );
    }
    let fans: BTreeSet<Fan> = by_ideal.values().map(|r| r.fan.clone()).collect();
    Ok(PsfResult {
        ideal,
        homogenized,
        groebner_cones: cones.len(),
        before_filter: filtered.before_filter.len(),
        records: by_ideal.into_values().collect(),
        fans: fans.into_iter().collect(),
    })
}

/// Projection of a homogenized weight to the degree space `R^r`:
/// `(w, w_h) ↦ Q (w - w_h·1)`.
pub fn degree_projection(q: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    q.iter()
        .map(|row| {
            let mut out = row.clone();
            out.push(-row.iter().sum::<BigInt>());
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan_search::{enumerate_sf, validate_fan_matrix};
    use crate::linalg::IntMatrix;
    use crate::toric::{buchberger, Binomial};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fm(rows: &[Vec<i64>]) -> FanMatrix {
        validate_fan_matrix(&IntMatrix::from_i64_rows(rows)).unwrap()
    }

    fn p2() -> FanMatrix {
        fm(&[vec![1, 0, -1], vec![0, 1, -1]])
    }

    fn example71() -> FanMatrix {
        fm(&[
            vec![1, 1, 0, 2, -1, 0, 1],
            vec![0, 2, 0, 2, -1, 0, 1],
            vec![0, 0, 1, -1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 1, -1],
        ])
    }

    fn bh() -> FanMatrix {
        fm(&[
            vec![1, 0, 0, 0, -1, 1],
            vec![0, 1, 0, -1, -1, 2],
            vec![0, 0, 1, -1, 0, 1],
        ])
    }

    fn mono(pairs: &[(usize, i64)], m: usize) -> Exponent {
        let mut e = vec![0; m];
        for &(i, k) in pairs {
            e[i - 1] = k;
        }
        e
    }

    #[test]
    fn homogenize_projective_plane() {
        let hi = homogenize(&toric_ideal(&p2()));
        assert_eq!(hi.generators(), &[Binomial::new(vec![1, 1, 1, -3])]);
        assert!(is_homogeneous(&hi));
    }

    #[test]
    fn homogenize_example71_dehomogenizes_back() {
        let i = toric_ideal(&example71());
        let hi = homogenize(&i);
        assert!(is_homogeneous(&hi));
        assert!(dehomogenize_ideal(&hi).same_ideal(&i));
    }

    #[test]
    fn projective_plane_groebner_fan_matches_random_weights() {
        let hi = homogenize(&toric_ideal(&p2()));
        let records = enumerate_initial_ideals(&hi).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen = BTreeSet::new();
        for _ in 0..400 {
            let w: Vec<i64> = (0..4).map(|_| rng.gen_range(0..50)).collect();
            let ord = TermOrder::from_i64(&w);
            let gb = buchberger(&hi, &ord).unwrap();
            if crate::toric::weight_ties(&gb, &ord).is_none() {
                seen.insert(MonomialIdeal::new(4, gb.iter().map(|g| g.lead.clone())));
            }
        }
        let traversed: BTreeSet<MonomialIdeal> =
            records.iter().map(|r| r.initial.clone()).collect();
        assert_eq!(seen, traversed);
        assert_eq!(records.len(), 2);
    }

    #[test]
    fn fan_from_projective_plane_ideal() {
        let v = p2();
        let ideal = MonomialIdeal::new(3, vec![vec![1, 1, 1]]);
        let fan = fan_from_initial_ideal(&ideal, &v).unwrap();
        let expected = Fan::new([
            IndexSet::new(vec![0, 1]),
            IndexSet::new(vec![0, 2]),
            IndexSet::new(vec![1, 2]),
        ]);
        assert_eq!(fan, expected);
        assert_eq!(stanley_reisner(&fan, 3), ideal);
    }

    #[test]
    fn non_fan_ideal_is_rejected() {
        let ideal = MonomialIdeal::new(3, vec![vec![1, 1, 0]]);
        assert!(matches!(
            fan_from_initial_ideal(&ideal, &p2()),
            Err(Error::NotAFan(_))
        ));
    }

    #[test]
    fn variable_power_is_filtered() {
        let ideal = MonomialIdeal::new(3, vec![vec![0, 0, 2], vec![1, 1, 0]]);
        assert!(ideal.contains_power_of(2));
    }

    #[test]
    fn example71_pipeline() {
        let v = example71();
        let res = enumerate_psf(&v).unwrap();
        assert_eq!(res.fans.len(), 3);
        // six homogenized Gröbner cones, two per fan, but one chamber is a
        // single Gröbner cone of I_V itself
        assert_eq!(res.surviving_cones(), 6);
        for fan in &res.fans {
            assert_eq!(res.cones_of_fan(fan), 2);
        }
        assert_eq!(res.records.len(), 5);
        let in1 = MonomialIdeal::new(
            7,
            vec![
                mono(&[(1, 1), (2, 1)], 7),
                mono(&[(3, 1), (4, 1), (5, 1)], 7),
                mono(&[(5, 1), (6, 1), (7, 1)], 7),
                mono(&[(6, 2), (7, 2)], 7),
            ],
        );
        let in2 = MonomialIdeal::new(
            7,
            vec![
                mono(&[(1, 1), (2, 1)], 7),
                mono(&[(6, 1), (7, 1)], 7),
                mono(&[(3, 1), (4, 1), (5, 2)], 7),
            ],
        );
        let r1 = res
            .records
            .iter()
            .find(|r| r.initial == in1)
            .expect("In1 present");
        let r2 = res
            .records
            .iter()
            .find(|r| r.initial == in2)
            .expect("In2 present");
        assert_eq!(r1.fan, r2.fan);
        assert_eq!(r1.radical, r2.radical);
        let gb2: BTreeSet<MarkedBinomial> = r2.reduced_gb.iter().cloned().collect();
        let printed: BTreeSet<MarkedBinomial> = [
            (mono(&[(1, 1), (2, 1)], 7), mono(&[(3, 1), (4, 1)], 7)),
            (
                mono(&[(6, 1), (7, 1)], 7),
                mono(&[(3, 1), (4, 1), (5, 1)], 7),
            ),
            (mono(&[(3, 1), (4, 1), (5, 2)], 7), mono(&[], 7)),
        ]
        .into_iter()
        .map(|(lead, trail)| MarkedBinomial { lead, trail })
        .collect();
        assert_eq!(gb2, printed);
        let sf = enumerate_sf(&v, true).unwrap();
        assert_eq!(sf, res.fans);
    }

    #[test]
    fn bh_has_six_projective_fans() {
        let v = bh();
        let res = enumerate_psf(&v).unwrap();
        assert_eq!(res.fans.len(), 6);
        let sf = enumerate_sf(&v, true).unwrap();
        assert!(res.fans.iter().all(|f| sf.contains(f)));
        let radicals: BTreeSet<&MonomialIdeal> = res.records.iter().map(|r| &r.radical).collect();
        assert_eq!(radicals.len(), 6);
    }

    #[test]
    fn translation_by_row_space_keeps_initial_ideal() {
        let v = bh();
        let res = enumerate_psf(&v).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for rec in &res.records {
            for _ in 0..3 {
                let y: Vec<BigInt> = (0..v.n())
                    .map(|_| BigInt::from(rng.gen_range(-20..=20)))
                    .collect();
                let shift = v.matrix().transpose().mul_vec(&y);
                let w: Vec<BigInt> = rec.weight.iter().zip(&shift).map(|(a, b)| a + b).collect();
                assert_eq!(
                    initial_ideal_via_homogenization(&res.homogenized, &w).unwrap(),
                    rec.initial
                );
            }
        }
    }

    #[test]
    fn record_weights_reproduce_initial_ideals() {
        // one chamber of example71 is a single cone of I_V whose weight sits
        // on a wall of the homogenized fan
        let res = enumerate_psf(&example71()).unwrap();
        for rec in &res.records {
            assert_eq!(
                initial_ideal_via_homogenization(&res.homogenized, &rec.weight).unwrap(),
                rec.initial
            );
        }
    }

    #[test]
    fn full_traversal_agrees_with_region_traversal() {
        let hi = homogenize(&toric_ideal(&bh()));
        let all = enumerate_initial_ideals(&hi).unwrap();
        let region = enumerate_dehomogenizable(&hi).unwrap();
        let a = dehomogenize_and_filter(&all);
        let b = dehomogenize_and_filter(&region);
        assert_eq!(a.ideals, b.ideals);
        assert_eq!(a.before_filter, b.before_filter);
        assert!(all.len() >= region.len());
    }
}
