//! Toric ideals of fan matrices and binomial Gröbner bases.
//!
//! Every polynomial handled here is a pure difference of two monomials, so a
//! binomial is stored as a pair of exponent vectors. Exponents are machine
//! integers (the release profile keeps overflow checks on); weights are
//! arbitrary-precision integers.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan_search::FanMatrix;
use crate::linalg::{dot, integer_kernel_basis, IntMatrix};
use crate::polyhedra::{dual_cone, Cone};

pub type Exponent = Vec<i64>;

/// The binomial `x^{u+} - x^{u-}` of a nonzero integer vector `u`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Binomial {
    pub u: Vec<i64>,
}

impl Binomial {
    pub fn new(u: Vec<i64>) -> Self {
        assert!(u.iter().any(|&x| x != 0), "zero binomial");
        Self { u }
    }

    /// Canonical sign: first nonzero coordinate positive.
    pub fn canonical(&self) -> Self {
        let first = self.u.iter().find(|&&x| x != 0).copied().unwrap_or(0);
        if first < 0 {
            Self::new(self.u.iter().map(|x| -x).collect())
        } else {
            self.clone()
        }
    }

    pub fn positive_part(&self) -> Exponent {
        self.u.iter().map(|&x| x.max(0)).collect()
    }

    pub fn negative_part(&self) -> Exponent {
        self.u.iter().map(|&x| (-x).max(0)).collect()
    }

    pub fn nvars(&self) -> usize {
        self.u.len()
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} - {}",
            monomial_string(&self.positive_part()),
            monomial_string(&self.negative_part())
        )
    }
}

/// Human-readable monomial, `x1*x6^2`, or `1`.
pub fn monomial_string(e: &[i64]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, k)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// A binomial with its initial term singled out: `lead - trail`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MarkedBinomial {
    pub lead: Exponent,
    pub trail: Exponent,
}

impl MarkedBinomial {
    pub fn binomial(&self) -> Binomial {
        Binomial::new(
            self.lead
                .iter()
                .zip(&self.trail)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// `lead - trail` as a vector; the Gröbner cone is cut out by `w · this >= 0`.
    pub fn direction(&self) -> Vec<BigInt> {
        self.lead
            .iter()
            .zip(&self.trail)
            .map(|(a, b)| BigInt::from(a - b))
            .collect()
    }
}

impl fmt::Display for MarkedBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} - {}",
            monomial_string(&self.lead),
            monomial_string(&self.trail)
        )
    }
}

/// Weight vector refined by the lexicographic order `x1 > x2 > …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    weight: Vec<BigInt>,
    small: Option<Vec<i64>>,
}

impl TermOrder {
    pub fn new(weight: Vec<BigInt>) -> Self {
        let small = weight.iter().map(ToPrimitive::to_i64).collect();
        Self { weight, small }
    }

    pub fn from_i64(weight: &[i64]) -> Self {
        Self::new(weight.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Pure lexicographic order on `nvars` variables.
    pub fn lex(nvars: usize) -> Self {
        Self::from_i64(&vec![0; nvars])
    }

    /// Total degree refined by lex.
    pub fn degree(nvars: usize) -> Self {
        Self::from_i64(&vec![1; nvars])
    }

    pub fn weight(&self) -> &[BigInt] {
        &self.weight
    }

    pub fn nvars(&self) -> usize {
        self.weight.len()
    }

    /// A weight refined by lex is a term order iff the weight is nonnegative.
    pub fn check_term_order(&self) -> Result<()> {
        match self.weight.iter().position(Signed::is_negative) {
            Some(index) => Err(Error::NotATermOrder { index }),
            None => Ok(()),
        }
    }

    /// Sign of `w · (a - b)`.
    pub fn weight_cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        if let Some(w) = &self.small {
            let mut acc: i128 = 0;
            let mut ok = true;
            for ((wi, x), y) in w.iter().zip(a).zip(b) {
                let d = (*x as i128) - (*y as i128);
                match (*wi as i128)
                    .checked_mul(d)
                    .and_then(|t| acc.checked_add(t))
                {
                    Some(v) => acc = v,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return acc.cmp(&0);
            }
        }
        let s: BigInt = self
            .weight
            .iter()
            .zip(a.iter().zip(b))
            .map(|(w, (x, y))| w * BigInt::from(x - y))
            .sum();
        s.sign().cmp_zero()
    }

    pub fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        self.weight_cmp(a, b).then_with(|| {
            for (x, y) in a.iter().zip(b) {
                match x.cmp(y) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// `w · e`.
    pub fn value(&self, e: &[i64]) -> BigInt {
        self.weight
            .iter()
            .zip(e)
            .map(|(w, x)| w * BigInt::from(*x))
            .sum()
    }
}

trait SignExt {
    fn cmp_zero(self) -> Ordering;
}

impl SignExt for num_bigint::Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

/// An ideal generated by binomials in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialIdeal {
    nvars: usize,
    generators: Vec<Binomial>,
}

impl BinomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Binomial>) -> Self {
        let generators: BTreeSet<Binomial> = gens
            .into_iter()
            .inspect(|g| assert_eq!(g.nvars(), nvars, "binomial has wrong number of variables"))
            .map(|g| g.canonical())
            .collect();
        Self {
            nvars,
            generators: generators.into_iter().collect(),
        }
    }

    pub fn from_vectors(nvars: usize, us: &[Vec<i64>]) -> Self {
        Self::new(nvars, us.iter().map(|u| Binomial::new(u.clone())))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Binomial] {
        &self.generators
    }

    /// Ideal equality by mutual reduction to zero against reduced Gröbner bases.
    pub fn same_ideal(&self, other: &BinomialIdeal) -> bool {
        if self.nvars != other.nvars {
            return false;
        }
        let ord = TermOrder::degree(self.nvars);
        let g1 = buchberger_unchecked(&pairs_of(self), &ord, false);
        let g2 = buchberger_unchecked(&pairs_of(other), &ord, false);
        let reduces = |gens: &[Binomial], gb: &[MarkedBinomial]| {
            gens.iter()
                .all(|g| normal_form(&g.positive_part(), gb) == normal_form(&g.negative_part(), gb))
        };
        reduces(&self.generators, &g2) && reduces(&other.generators, &g1)
    }
}

impl fmt::Display for BinomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn pairs_of(ideal: &BinomialIdeal) -> Vec<(Exponent, Exponent)> {
    ideal
        .generators
        .iter()
        .map(|g| (g.positive_part(), g.negative_part()))
        .collect()
}

/// Monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Exponent>,
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    /// Minimalizes and sorts the generators.
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Exponent>) -> Self {
        let all: BTreeSet<Exponent> = gens.into_iter().collect();
        let minimal: Vec<Exponent> = all
            .iter()
            .filter(|g| !all.iter().any(|h| h != *g && divides(h, g)))
            .cloned()
            .collect();
        for g in &minimal {
            assert_eq!(g.len(), nvars, "monomial has wrong number of variables");
        }
        Self {
            nvars,
            generators: minimal,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Exponent] {
        &self.generators
    }

    pub fn contains(&self, e: &[i64]) -> bool {
        self.generators.iter().any(|g| divides(g, e))
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    /// Whether some power of `x_i` lies in the ideal.
    pub fn contains_power_of(&self, i: usize) -> bool {
        self.generators
            .iter()
            .any(|g| g.iter().enumerate().all(|(j, &x)| j == i || x == 0))
    }

    /// `(∏_{i in supp(g)} x_i)` over generators, minimalized.
    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.nvars,
            self.generators
                .iter()
                .map(|g| g.iter().map(|&x| i64::from(x > 0)).collect()),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(|g| g.iter().all(|&x| x <= 1))
    }

    /// Sets the last variable to 1.
    pub fn dehomogenize(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.nvars - 1,
            self.generators.iter().map(|g| g[..self.nvars - 1].to_vec()),
        )
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| monomial_string(g)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Rewrites `e` with the rules `lead -> trail` until no lead divides it.
pub fn normal_form(e: &[i64], gb: &[MarkedBinomial]) -> Exponent {
    let mut cur = e.to_vec();
    'outer: loop {
        for g in gb {
            if divides(&g.lead, &cur) {
                for ((c, l), t) in cur.iter_mut().zip(&g.lead).zip(&g.trail) {
                    *c = *c - l + t;
                }
                continue 'outer;
            }
        }
        return cur;
    }
}

fn orient(a: Exponent, b: Exponent, ord: &TermOrder) -> Option<MarkedBinomial> {
    match ord.cmp(&a, &b) {
        Ordering::Greater => Some(MarkedBinomial { lead: a, trail: b }),
        Ordering::Less => Some(MarkedBinomial { lead: b, trail: a }),
        Ordering::Equal => None,
    }
}

fn strip_common(a: &mut [i64], b: &mut [i64]) {
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let c = (*x).min(*y);
        *x -= c;
        *y -= c;
    }
}

/// Buchberger's algorithm for pure-difference binomials.
///
/// With `saturated`, common monomial factors are divided out of every new
/// binomial; this is valid only for ideals saturated with respect to all
/// variables (toric ideals).
pub(crate) fn buchberger_unchecked(
    gens: &[(Exponent, Exponent)],
    ord: &TermOrder,
    saturated: bool,
) -> Vec<MarkedBinomial> {
    let mut basis: Vec<MarkedBinomial> = Vec::new();
    let mut pending: Vec<(Exponent, Exponent)> = gens.to_vec();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    loop {
        while let Some((a, b)) = pending.pop() {
            let mut a = normal_form(&a, &basis);
            let mut b = normal_form(&b, &basis);
            if saturated {
                strip_common(&mut a, &mut b);
            }
            if let Some(g) = orient(a, b, ord) {
                let k = basis.len();
                basis.push(g);
                pairs.extend((0..k).map(|i| (i, k)));
            }
        }
        let Some((i, j)) = pairs.pop() else { break };
        let (gi, gj) = (&basis[i], &basis[j]);
        // coprime leading terms: the S-pair reduces to zero
        if gi
            .lead
            .iter()
            .zip(&gj.lead)
            .all(|(x, y)| *x == 0 || *y == 0)
        {
            continue;
        }
        let lcm: Exponent = gi
            .lead
            .iter()
            .zip(&gj.lead)
            .map(|(x, y)| *x.max(y))
            .collect();
        if chain_criterion(&basis, i, j, &lcm, &pairs) {
            continue;
        }
        let c: Exponent = lcm
            .iter()
            .zip(&gi.lead)
            .zip(&gi.trail)
            .map(|((l, a), t)| l - a + t)
            .collect();
        let d: Exponent = lcm
            .iter()
            .zip(&gj.lead)
            .zip(&gj.trail)
            .map(|((l, a), t)| l - a + t)
            .collect();
        pending.push((c, d));
    }
    reduce_basis(basis, ord, saturated)
}

/// Gebauer-Moller style chain criterion: skip `(i, j)` if some `k` has a lead
/// dividing `lcm(i, j)` and both pairs `(i, k)` and `(j, k)` are already done.
fn chain_criterion(
    basis: &[MarkedBinomial],
    i: usize,
    j: usize,
    lcm: &[i64],
    pending: &[(usize, usize)],
) -> bool {
    let done = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        !pending.contains(&(a, b))
    };
    (0..basis.len())
        .any(|k| k != i && k != j && divides(&basis[k].lead, lcm) && done(i, k) && done(j, k))
}

fn reduce_basis(
    basis: Vec<MarkedBinomial>,
    ord: &TermOrder,
    saturated: bool,
) -> Vec<MarkedBinomial> {
    let mut minimal: Vec<MarkedBinomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(l, h)| l != k && divides(&h.lead, &g.lead) && (h.lead != g.lead || l < k));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<MarkedBinomial> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let mut trail = normal_form(&minimal[k].trail, &minimal);
        let mut lead = minimal[k].lead.clone();
        if saturated {
            strip_common(&mut lead, &mut trail);
        }
        debug_assert_eq!(ord.cmp(&lead, &trail), Ordering::Greater);
        out.push(MarkedBinomial { lead, trail });
    }
    out.sort();
    out
}

/// The reduced Gröbner basis of a toric ideal with respect to `ord`.
pub fn buchberger(ideal: &BinomialIdeal, ord: &TermOrder) -> Result<Vec<MarkedBinomial>> {
    if ord.nvars() != ideal.nvars() {
        return Err(Error::DimensionMismatch {
            expected: ideal.nvars(),
            got: ord.nvars(),
        });
    }
    ord.check_term_order()?;
    Ok(buchberger_unchecked(&pairs_of(ideal), ord, true))
}

/// Marked binomials whose two terms have the same weight.
pub fn weight_ties<'a>(gb: &'a [MarkedBinomial], ord: &TermOrder) -> Option<&'a MarkedBinomial> {
    gb.iter()
        .find(|g| ord.weight_cmp(&g.lead, &g.trail) != Ordering::Greater)
}

/// Initial ideal for a generic weight; fails on a tie.
pub fn initial_ideal(ideal: &BinomialIdeal, ord: &TermOrder) -> Result<MonomialIdeal> {
    let gb = buchberger(ideal, ord)?;
    if let Some(g) = weight_ties(&gb, ord) {
        return Err(Error::NonGenericWeight {
            binomial: g.to_string(),
        });
    }
    Ok(MonomialIdeal::new(
        ideal.nvars(),
        gb.iter().map(|g| g.lead.clone()),
    ))
}

/// Binomials `x^{q+} - x^{q-}` for the rows `q` of a lattice basis.
pub fn lattice_basis_ideal(rows: &[Vec<i64>]) -> Vec<(Exponent, Exponent)> {
    rows.iter()
        .map(|q| {
            let b = Binomial::new(q.clone());
            (b.positive_part(), b.negative_part())
        })
        .collect()
}

/// `J : (x_1 ⋯ x_m)^∞` by eliminating `t` from `J + (t·x_1⋯x_m - 1)`.
pub fn saturate(gens: &[(Exponent, Exponent)], nvars: usize) -> Vec<(Exponent, Exponent)> {
    let lift = |e: &Exponent| -> Exponent {
        let mut out = Vec::with_capacity(nvars + 1);
        out.push(0);
        out.extend_from_slice(e);
        out
    };
    let mut lifted: Vec<(Exponent, Exponent)> =
        gens.iter().map(|(a, b)| (lift(a), lift(b))).collect();
    lifted.push((vec![1; nvars + 1], vec![0; nvars + 1]));
    // lex with t first is an elimination order for t
    let gb = buchberger_unchecked(&lifted, &TermOrder::lex(nvars + 1), false);
    gb.into_iter()
        .filter(|g| g.lead[0] == 0 && g.trail[0] == 0)
        .map(|g| (g.lead[1..].to_vec(), g.trail[1..].to_vec()))
        .collect()
}

/// The toric ideal `I_V`, as the reduced Gröbner basis for the degree order.
pub fn toric_ideal(v: &FanMatrix) -> BinomialIdeal {
    let m = v.m();
    let kernel = integer_kernel_basis(v.matrix());
    let rows = kernel.to_i64_rows().expect("kernel entries fit in i64");
    let sat = saturate(&lattice_basis_ideal(&rows), m);
    let gb = buchberger_unchecked(&sat, &TermOrder::degree(m), true);
    BinomialIdeal::new(m, gb.iter().map(MarkedBinomial::binomial))
}

/// Whether `u` lies in the integer kernel of `V`.
pub fn in_kernel(v: &FanMatrix, u: &[i64]) -> bool {
    let ub: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
    v.matrix().mul_vec(&ub).iter().all(Zero::is_zero)
}

/// The Gröbner region `W`, computed three independent ways.
#[derive(Clone, Debug)]
pub struct GroebnerRegion {
    /// Dual of `U = row-space(Q) ∩ R^m_{>=0}`.
    pub dual_of_u: Cone,
    /// `{w : ∃ y, Vᵀ y <= w}`, by projecting out `y`.
    pub projection: Cone,
    /// `Q⁻¹(⟨Q⟩)`.
    pub preimage: Cone,
}

impl GroebnerRegion {
    pub fn agree(&self) -> bool {
        self.dual_of_u.same_as(&self.projection) && self.dual_of_u.same_as(&self.preimage)
    }

    pub fn contains_orthant(&self) -> bool {
        Cone::orthant(self.dual_of_u.ambient_dim())
            .rays()
            .iter()
            .all(|e| self.dual_of_u.contains(e))
    }
}

pub fn groebner_region(v: &FanMatrix, q: &IntMatrix) -> GroebnerRegion {
    let m = v.m();
    let n = v.n();
    let unit = |i: usize, d: usize| -> Vec<BigInt> {
        (0..d).map(|j| BigInt::from((i == j) as i64)).collect()
    };

    // U = {x >= 0 : V x = 0}
    let orthant: Vec<Vec<BigInt>> = (0..m).map(|i| unit(i, m)).collect();
    let u = Cone::from_inequalities(m, &orthant, &v.matrix().to_rows());
    let dual_of_u = dual_cone(&u);

    // {(w, y) : w - Vᵀ y >= 0} in R^{m+n}, then forget y
    let vt = v.matrix().transpose();
    let lifted_ineqs: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            let mut row = unit(i, m + n);
            for (k, x) in vt.row(i).iter().enumerate() {
                row[m + k] = -x;
            }
            row
        })
        .collect();
    let lifted = Cone::from_inequalities(m + n, &lifted_ineqs, &[]);
    let forget: Vec<Vec<BigInt>> = (0..m).map(|i| unit(i, m + n)).collect();
    let projection = lifted.image(&forget);

    let effective = Cone::from_generators(q.rows(), &q.columns());
    let preimage = effective.preimage(&q.to_rows(), m);

    GroebnerRegion {
        dual_of_u,
        projection,
        preimage,
    }
}

/// Outcome of the exhaustive check of fiber minima against an initial ideal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NonMinimaReport {
    pub checked: usize,
    pub non_minima: usize,
    pub minimal_non_minima: usize,
    pub failures: Vec<String>,
}

impl NonMinimaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn exponents_up_to(m: usize, bound: usize) -> Vec<Exponent> {
    fn rec(i: usize, left: i64, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, bound as i64, &mut vec![0; m], &mut out);
    out
}

/// Exhaustive check, over all exponents of degree at most `bound`, that the
/// initial ideal is spanned by the non-minima of the fibers.
///
/// Fiber minima come from `normal_form`. They are cross-checked against a
/// brute-force enumeration of each fiber truncated at degree `2·bound`: no
/// truncated fiber element may beat the normal form, and every exponent
/// beaten by a truncated fiber element must lie in the initial ideal. Minimal
/// non-minima must have support disjoint from their fiber minimum.
pub fn check_fiber_minima(
    v: &FanMatrix,
    gb: &[MarkedBinomial],
    ord: &TermOrder,
    bound: usize,
) -> NonMinimaReport {
    let m = v.m();
    let initial = MonomialIdeal::new(m, gb.iter().map(|g| g.lead.clone()));
    let key = |e: &Exponent| -> Vec<BigInt> {
        let eb: Vec<BigInt> = e.iter().map(|&x| BigInt::from(x)).collect();
        v.matrix().mul_vec(&eb)
    };
    let mut fiber_min: BTreeMap<Vec<BigInt>, BigInt> = BTreeMap::new();
    for e in exponents_up_to(m, 2 * bound) {
        let val = ord.value(&e);
        fiber_min
            .entry(key(&e))
            .and_modify(|cur| {
                if val < *cur {
                    *cur = val.clone();
                }
            })
            .or_insert(val);
    }
    let mut report = NonMinimaReport::default();
    let mut non_min: BTreeSet<Exponent> = BTreeSet::new();
    let points = exponents_up_to(m, bound);
    for e in &points {
        report.checked += 1;
        let nf = normal_form(e, gb);
        let is_min = &nf == e;
        if key(&nf) != key(e) {
            report.failures.push(format!(
                "normal form of {} leaves its fiber",
                monomial_string(e)
            ));
        }
        if initial.contains(e) == is_min {
            report.failures.push(format!(
                "{} membership disagrees with minimality",
                monomial_string(e)
            ));
        }
        let nf_val = ord.value(&nf);
        let brute = &fiber_min[&key(e)];
        if *brute < nf_val {
            report.failures.push(format!(
                "fiber of {} has an element below its normal form",
                monomial_string(e)
            ));
        }
        if !is_min && nf_val >= ord.value(e) {
            report.failures.push(format!(
                "normal form of {} does not decrease the weight",
                monomial_string(e)
            ));
        }
        if *brute < ord.value(e) && !initial.contains(e) {
            report.failures.push(format!(
                "{} is not a fiber minimum but lies outside the initial ideal",
                monomial_string(e)
            ));
        }
        if !is_min {
            non_min.insert(e.clone());
        }
    }
    report.non_minima = non_min.len();
    let minimal: Vec<&Exponent> = non_min
        .iter()
        .filter(|e| {
            (0..m).all(|j| {
                if e[j] == 0 {
                    return true;
                }
                let mut d = (*e).clone();
                d[j] -= 1;
                !non_min.contains(&d)
            })
        })
        .collect();
    report.minimal_non_minima = minimal.len();
    for e in &minimal {
        let nf = normal_form(e, gb);
        if e.iter().zip(&nf).any(|(a, b)| *a > 0 && *b > 0) {
            report.failures.push(format!(
                "{} shares support with its fiber minimum",
                monomial_string(e)
            ));
        }
    }
    let expected: BTreeSet<&Exponent> = initial
        .generators()
        .iter()
        .filter(|g| g.iter().sum::<i64>() <= bound as i64)
        .collect();
    if expected != minimal.iter().copied().collect() {
        report.failures.push(
            "minimal non-minima differ from the minimal generators of the initial ideal".into(),
        );
    }
    report
}

/// Runs Buchberger for a term order and checks the fiber minima up to `bound`.
pub fn min_nonminima_check(
    v: &FanMatrix,
    ideal: &BinomialIdeal,
    ord: &TermOrder,
    bound: usize,
) -> Result<bool> {
    let gb = buchberger(ideal, ord)?;
    if let Some(g) = weight_ties(&gb, ord) {
        return Err(Error::NonGenericWeight {
            binomial: g.to_string(),
        });
    }
    Ok(check_fiber_minima(v, &gb, ord, bound).passed())
}

/// Every reduced Gröbner basis of `I_V` contains some `x^u - 1`.
pub fn has_unit_binomial(gb: &[MarkedBinomial]) -> bool {
    gb.iter()
        .any(|g| g.trail.iter().all(|&x| x == 0) && g.lead.iter().all(|&x| x >= 0))
}

/// Integer vector `u` of a binomial as `BigInt`s, for dot products with weights.
pub fn direction_dot(w: &[BigInt], g: &MarkedBinomial) -> BigInt {
    dot(w, &g.direction())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan_search::validate_fan_matrix;

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

    fn marked(lead: &[(usize, i64)], trail: &[(usize, i64)], m: usize) -> MarkedBinomial {
        MarkedBinomial {
            lead: mono(lead, m),
            trail: mono(trail, m),
        }
    }

    #[test]
    fn projective_plane_ideal() {
        let i = toric_ideal(&p2());
        assert_eq!(i.generators(), &[Binomial::new(vec![1, 1, 1])]);
        assert_eq!(i.to_string(), "(x1*x2*x3 - 1)");
        let gb = buchberger(&i, &TermOrder::from_i64(&[3, 1, 2])).unwrap();
        assert_eq!(gb, vec![marked(&[(1, 1), (2, 1), (3, 1)], &[], 3)]);
        let init = initial_ideal(&i, &TermOrder::degree(3)).unwrap();
        assert_eq!(init.generators(), &[vec![1, 1, 1]]);
    }

    #[test]
    fn example71_ideal_matches_printed_generators() {
        let v = example71();
        let i = toric_ideal(&v);
        let printed = BinomialIdeal::from_vectors(
            7,
            &[
                vec![1, 1, -1, -1, 0, 0, 0],
                vec![0, 0, 0, 0, 1, 1, 1],
                vec![0, 0, 1, 1, 1, -1, -1],
                vec![0, 0, -1, -1, 0, 2, 2],
            ],
        );
        assert!(i.same_ideal(&printed));
        for g in i.generators() {
            assert!(in_kernel(&v, &g.u));
        }
    }

    #[test]
    fn bh_ideal_matches_printed_generators() {
        let printed = BinomialIdeal::from_vectors(
            6,
            &[
                vec![1, 0, -1, -1, 1, 0],
                vec![0, 1, 1, 0, -1, -1],
                vec![1, 1, 0, -1, 0, -1],
                vec![0, 0, 0, 1, 1, 1],
                vec![1, 0, -1, 0, 2, 1],
            ],
        );
        assert!(toric_ideal(&bh()).same_ideal(&printed));
        // dropping a generator gives a strictly smaller ideal
        let smaller = BinomialIdeal::new(6, printed.generators()[1..].iter().cloned());
        assert!(!toric_ideal(&bh()).same_ideal(&smaller));
    }

    #[test]
    fn negative_weight_is_rejected() {
        let i = toric_ideal(&p2());
        let err = buchberger(&i, &TermOrder::from_i64(&[1, -1, 1])).unwrap_err();
        assert!(matches!(err, Error::NotATermOrder { index: 1 }));
    }

    #[test]
    fn non_generic_weight_is_rejected() {
        let i = toric_ideal(&p2());
        // x1x2x3 and 1 tie under the zero weight
        let err = initial_ideal(&i, &TermOrder::lex(3)).unwrap_err();
        assert!(matches!(err, Error::NonGenericWeight { .. }));
    }

    #[test]
    fn normal_form_basics() {
        let gb = vec![marked(&[(1, 1), (2, 1), (3, 1)], &[], 3)];
        assert_eq!(normal_form(&[2, 0, 5], &gb), vec![2, 0, 5]);
        assert_eq!(normal_form(&[2, 3, 1], &gb), vec![1, 2, 0]);
    }

    #[test]
    fn saturation_recovers_the_toric_ideal() {
        let v = bh();
        let rows = integer_kernel_basis(v.matrix()).to_i64_rows().unwrap();
        let sat = BinomialIdeal::new(
            6,
            saturate(&lattice_basis_ideal(&rows), 6)
                .iter()
                .map(|(a, b)| Binomial::new(a.iter().zip(b).map(|(x, y)| x - y).collect())),
        );
        assert!(sat.same_ideal(&toric_ideal(&v)));
    }

    #[test]
    fn saturation_of_twisted_cubic_lattice_basis() {
        // (x1x3 - x2^2, x2x4 - x3^2) misses x1x4 - x2x3
        let rows = vec![vec![1, -2, 1, 0], vec![0, 1, -2, 1]];
        let basis_ideal = BinomialIdeal::from_vectors(4, &rows);
        let sat = BinomialIdeal::new(
            4,
            saturate(&lattice_basis_ideal(&rows), 4)
                .iter()
                .map(|(a, b)| Binomial::new(a.iter().zip(b).map(|(x, y)| x - y).collect())),
        );
        let cubic = BinomialIdeal::from_vectors(
            4,
            &[vec![1, -2, 1, 0], vec![0, 1, -2, 1], vec![1, -1, -1, 1]],
        );
        assert!(sat.same_ideal(&cubic));
        assert!(!basis_ideal.same_ideal(&cubic));
    }

    #[test]
    fn fiber_minima_for_projective_plane() {
        let v = p2();
        let i = toric_ideal(&v);
        assert!(min_nonminima_check(&v, &i, &TermOrder::from_i64(&[1, 2, 3]), 5).unwrap());
    }

    #[test]
    fn fiber_minima_for_example71_degree_order() {
        let v = example71();
        let i = toric_ideal(&v);
        let ord = TermOrder::from_i64(&[3, 5, 2, 7, 1, 4, 6]);
        let gb = buchberger(&i, &ord).unwrap();
        assert!(weight_ties(&gb, &ord).is_none());
        let rep = check_fiber_minima(&v, &gb, &ord, 6);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(has_unit_binomial(&gb));
    }

    #[test]
    fn groebner_region_for_projective_plane() {
        let v = p2();
        let q = IntMatrix::from_i64_rows(&[vec![1, 1, 1]]);
        let w = groebner_region(&v, &q);
        assert!(w.agree());
        assert!(w.contains_orthant());
        let half = Cone::from_inequalities(3, &[crate::linalg::to_big(&[1, 1, 1])], &[]);
        assert!(w.dual_of_u.same_as(&half));
    }
}
