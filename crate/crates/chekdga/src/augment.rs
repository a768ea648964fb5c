//! Augmentations of a Chekanov-Eliashberg algebra, linearized homology and
//! cohomology, normalized augmentation counts, A-infinity operation tables
//! and finite-dimensional representation checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dga::Dga;
use crate::ncalg::{NcElement, NcTarget, ScalarTarget};
use crate::poly::{HalfPow2, Laurent1};
use crate::ring::CoeffRing;

/// Errors from the augmentation-layer operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AugError {
    #[error("{0}")]
    BadField(String),
    #[error("invalid rho {rho}: {reason}")]
    BadRho { rho: i64, reason: String },
    #[error(
        "no graded (rho = 0) augmentations exist: |t| = 2*rot = {t_degree} is nonzero, \
         so no unit image of t has degree 0"
    )]
    GradingObstruction { t_degree: i64 },
    #[error("representation dimension mismatch: expected {expected} images, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("sigma(t) = {det} is not invertible over F_{q}")]
    SingularT { det: i64, q: u32 },
}

/// A rho-graded augmentation of a DGA to the field F_q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Augmentation {
    /// Field characteristic q.
    pub q: u32,
    /// Grading modulus (0 = integer-graded, 1 = ungraded).
    pub rho: i64,
    /// Image of t, a unit of F_q.
    pub t: i64,
    /// Image of each chord generator, indexed like `Dga::names`.
    pub values: Vec<i64>,
}

impl Augmentation {
    pub fn ring(&self) -> CoeffRing {
        CoeffRing::Fp(self.q)
    }

    /// Evaluate an algebra element under this augmentation.
    pub fn eval(&self, e: &NcElement) -> i64 {
        ScalarTarget::new(self.ring(), self.t, &self.values).eval(e)
    }

    /// Independent re-verification that this really is an augmentation.
    pub fn verify(&self, dga: &Dga) -> bool {
        let ring = self.ring();
        if ring.inv(self.t).is_none() {
            return false;
        }
        for (i, &v) in self.values.iter().enumerate() {
            if v != 0 && !degree_eligible(dga.degrees[i], self.rho) {
                return false;
            }
        }
        dga.diff.iter().all(|dx| self.eval(&dx.map_ring(ring)) == 0)
    }
}

fn degree_eligible(deg: i64, rho: i64) -> bool {
    if rho == 0 {
        deg == 0
    } else {
        deg.rem_euclid(rho) == 0
    }
}

fn validate_field_and_rho(dga: &Dga, q: u32, rho: i64) -> Result<(), AugError> {
    CoeffRing::Fp(q).validate().map_err(AugError::BadField)?;
    if rho < 0 {
        return Err(AugError::BadRho { rho, reason: "rho must be nonnegative".into() });
    }
    let t_deg = dga.t_degree();
    if rho == 0 && t_deg != 0 {
        return Err(AugError::GradingObstruction { t_degree: t_deg });
    }
    if rho > 0 && t_deg.rem_euclid(rho) != 0 {
        return Err(AugError::BadRho {
            rho,
            reason: format!("rho must divide |t| = 2*rot = {t_deg}"),
        });
    }
    Ok(())
}

/// Exhaustively enumerate the rho-graded augmentations of `dga` to F_q.
///
/// The search assigns field values to the chords of degree 0 (mod rho) and a
/// unit to t, pruning with each relation epsilon(da) = 0 as soon as all
/// chords in its support have been assigned. The result is sorted by
/// (t, values) and therefore deterministic.
pub fn enumerate_augmentations(dga: &Dga, q: u32, rho: i64) -> Result<Vec<Augmentation>, AugError> {
    validate_field_and_rho(dga, q, rho)?;
    let ring = CoeffRing::Fp(q);
    let n = dga.degrees.len();
    let eligible: Vec<usize> =
        (0..n).filter(|&i| degree_eligible(dga.degrees[i], rho)).collect();
    // Position of each chord in the assignment order (eligible only).
    let mut order = vec![usize::MAX; n];
    for (k, &i) in eligible.iter().enumerate() {
        order[i] = k;
    }
    let relations: Vec<NcElement> = dga.diff.iter().map(|d| d.map_ring(ring)).collect();
    // relations_ready[k] = relations whose support is fully assigned once the
    // first k eligible chords have values (ineligible chords are always 0).
    let mut relations_ready: Vec<Vec<usize>> = vec![Vec::new(); eligible.len() + 1];
    for (ri, rel) in relations.iter().enumerate() {
        let ready_at = rel
            .support()
            .into_iter()
            .filter(|&c| order[c] != usize::MAX)
            .map(|c| order[c] + 1)
            .max()
            .unwrap_or(0);
        relations_ready[ready_at].push(ri);
    }

    let units: Vec<i64> = ring.field_units().expect("finite field");
    let mut found = Vec::new();
    for &t in &units {
        let mut values = vec![0i64; n];
        search(
            ring,
            t,
            &relations,
            &relations_ready,
            &eligible,
            0,
            &mut values,
            &mut |values| {
                found.push(Augmentation { q, rho, t, values: values.to_vec() });
            },
        );
    }
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search(
    ring: CoeffRing,
    t: i64,
    relations: &[NcElement],
    relations_ready: &[Vec<usize>],
    eligible: &[usize],
    depth: usize,
    values: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64]),
) {
    {
        let target = ScalarTarget::new(ring, t, values);
        for &ri in &relations_ready[depth] {
            if target.eval(&relations[ri]) != 0 {
                return;
            }
        }
    }
    if depth == eligible.len() {
        emit(values);
        return;
    }
    let p = ring.characteristic() as i64;
    for v in 0..p {
        values[eligible[depth]] = v;
        search(ring, t, relations, relations_ready, eligible, depth + 1, values, emit);
    }
    values[eligible[depth]] = 0;
}

/// The normalized augmentation count: `(count, chi*_rho, count * 2^{-chi*/2})`.
///
/// Defined for F_2 counts only (that is where the normalization gives a
/// Legendrian invariant).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AugNumber {
    pub count: u64,
    pub chi_star: i64,
    pub value: HalfPow2,
}

impl std::fmt::Display for AugNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (count {}, chi* {})", self.value, self.count, self.chi_star)
    }
}

/// Compute the normalized F_2 augmentation number for `rho` = 0 or odd.
pub fn normalized_aug_number(dga: &Dga, rho: i64) -> Result<AugNumber, AugError> {
    if rho != 0 && rho % 2 == 0 {
        return Err(AugError::BadRho {
            rho,
            reason: "normalized counts are defined for rho = 0 or odd rho".into(),
        });
    }
    let count = match enumerate_augmentations(dga, 2, rho) {
        Ok(augs) => augs.len() as u64,
        Err(AugError::GradingObstruction { .. }) => 0,
        Err(e) => return Err(e),
    };
    let chi_star = dga.euler_characteristic(rho);
    let value =
        if count == 0 { HalfPow2::zero() } else { HalfPow2::new(count as i64, -chi_star) };
    Ok(AugNumber { count, chi_star, value })
}

/// The linearized complex of an augmentation: the chords as a graded basis
/// together with the matrix of the linear part of the conjugated differential.
#[derive(Clone, Debug)]
pub struct LinearizedComplex {
    pub ring: CoeffRing,
    pub rho: i64,
    /// Chord degrees (reduced mod rho when rho > 0).
    pub degrees: Vec<i64>,
    /// d1[i][j] = coefficient of chord j in the linearized differential of
    /// chord i (the differential lowers degree by 1).
    pub d1: Vec<Vec<i64>>,
}

impl LinearizedComplex {
    /// dim of the degree-d chain group.
    fn basis_of(&self, d: i64) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// Rank of d1 restricted to the degree-d chain group.
    fn rank_from(&self, d: i64) -> usize {
        let rows = self.basis_of(d);
        let next = if self.rho > 0 { (d - 1).rem_euclid(self.rho) } else { d - 1 };
        let cols = self.basis_of(next);
        let mat: Vec<Vec<i64>> =
            rows.iter().map(|&i| cols.iter().map(|&j| self.d1[i][j]).collect()).collect();
        rank_mod_p(mat, self.ring)
    }

    /// Homology dimension in degree d.
    pub fn homology_dim(&self, d: i64) -> usize {
        let d = if self.rho > 0 { d.rem_euclid(self.rho) } else { d };
        let dim = self.basis_of(d).len();
        let up = if self.rho > 0 { (d + 1).rem_euclid(self.rho) } else { d + 1 };
        dim - self.rank_from(d) - self.rank_from(up)
    }

    /// All degrees carrying chords.
    pub fn occupied_degrees(&self) -> Vec<i64> {
        let mut ds = self.degrees.clone();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Check that consecutive boundary maps compose to zero.
    pub fn d_squared_is_zero(&self) -> bool {
        let n = self.degrees.len();
        for i in 0..n {
            for k in 0..n {
                let mut acc = 0;
                for j in 0..n {
                    acc = self.ring.add(acc, self.ring.mul(self.d1[i][j], self.d1[j][k]));
                }
                if acc != 0 {
                    return false;
                }
            }
        }
        true
    }
}

/// Build the linearized complex of `dga` at the augmentation `eps`.
///
/// The differential is the linear part of phi∘d∘phi^{-1} with
/// phi(a) = a + eps(a), after sending t to eps(t).
pub fn linearize(dga: &Dga, eps: &Augmentation) -> LinearizedComplex {
    let ring = eps.ring();
    let n = dga.degrees.len();
    let degrees: Vec<i64> = dga
        .degrees
        .iter()
        .map(|&d| if eps.rho > 0 { d.rem_euclid(eps.rho) } else { d })
        .collect();
    let mut d1 = vec![vec![0i64; n]; n];
    let t_target = ScalarTarget::new(ring, eps.t, &eps.values);
    for i in 0..n {
        for (w, c) in dga.diff[i].map_ring(ring).terms() {
            // total power of t in the word, evaluated at eps(t)
            let mut t_total = w.lead;
            for &(_, e) in &w.tail {
                t_total += e;
            }
            let t_factor = t_target.t_pow(t_total);
            for (k, &(j, _)) in w.tail.iter().enumerate() {
                let mut coeff = ring.mul(c, t_factor);
                for (k2, &(j2, _)) in w.tail.iter().enumerate() {
                    if k2 != k {
                        coeff = ring.mul(coeff, eps.values[j2]);
                    }
                }
                d1[i][j] = ring.add(d1[i][j], coeff);
            }
        }
    }
    LinearizedComplex { ring, rho: eps.rho, degrees, d1 }
}

/// Poincare polynomial of linearized contact homology:
/// sum over i of dim LCH_i z^i.
pub fn linearized_poincare(dga: &Dga, eps: &Augmentation) -> Laurent1 {
    let cx = linearize(dga, eps);
    let mut p = Laurent1::zero();
    for d in cx.occupied_degrees() {
        p.add_coeff(d, cx.homology_dim(d) as i64);
    }
    p
}

/// Graded dimensions of linearized contact cohomology: the dual complex has
/// basis the duals with |a_dual| = |a| + 1, so over a field
/// dim LCH^i = dim LCH_{i-1}.
pub fn linearized_cohomology(dga: &Dga, eps: &Augmentation) -> BTreeMap<i64, usize> {
    let cx = linearize(dga, eps);
    let mut dims = BTreeMap::new();
    for d in cx.occupied_degrees() {
        let h = cx.homology_dim(d);
        if h > 0 {
            let up = if eps.rho > 0 { (d + 1).rem_euclid(eps.rho) } else { d + 1 };
            *dims.entry(up).or_insert(0) += h;
        }
    }
    dims
}

/// Sabloff duality: p(z) minus z must be symmetric under z <-> z^{-1}
/// (this encodes dim LCH_1 = dim LCH_{-1} + 1 together with the symmetry in
/// all other degrees).
pub fn sabloff_duality_check(p: &Laurent1) -> bool {
    let q = p - &Laurent1::monomial(1, 1);
    q == q.invert_var()
}

/// Row rank of a matrix over F_p by Gaussian elimination.
fn rank_mod_p(mut m: Vec<Vec<i64>>, ring: CoeffRing) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&r| ring.normalize(m[r][col]) != 0);
        let Some(pr) = pivot else { continue };
        m.swap(row, pr);
        let inv = ring.inv(m[row][col]).expect("field element");
        for c in col..cols {
            m[row][c] = ring.mul(m[row][c], inv);
        }
        for r in 0..rows {
            if r != row && ring.normalize(m[r][col]) != 0 {
                let factor = m[r][col];
                for c in col..cols {
                    m[r][c] = ring.add(m[r][c], ring.neg(ring.mul(factor, m[row][c])));
                }
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// The table of one A-infinity operation m_n on the dual generators.
///
/// Keys are input tuples of chord indices *in input order* (which is the
/// reverse of the order the chords appear in a differential monomial);
/// values are linear combinations of output duals, `(chord index, coeff)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfinityTable {
    pub n: usize,
    pub q: u32,
    pub entries: BTreeMap<Vec<usize>, BTreeMap<usize, i64>>,
}

impl AInfinityTable {
    /// Apply m_n to a tuple of dual basis elements (input order).
    pub fn apply(&self, inputs: &[usize]) -> BTreeMap<usize, i64> {
        self.entries.get(inputs).cloned().unwrap_or_default()
    }
}

/// Compute the operation m_n of the augmentation A-infinity structure for a
/// composable tuple of n+1 augmentations over the same field.
///
/// For each monomial of each differential da and each choice of n ordered
/// chord slots inside it, the complementary factors (including all powers of
/// t) are evaluated segment by segment: the segment before the first slot by
/// eps[0], the segment between slot i and slot i+1 by eps[i], and the segment
/// after the last slot by eps[n]. The resulting scalar times the monomial
/// coefficient contributes the dual of a to m_n applied to the reversed slot
/// tuple. Over fields of odd characteristic the dualization signs are taken
/// to be trivial; the tables are validated through the A-infinity relations
/// over F_2 where the convention is immaterial.
pub fn a_infinity(dga: &Dga, eps: &[&Augmentation], n: usize) -> Result<AInfinityTable, AugError> {
    if eps.len() != n + 1 {
        return Err(AugError::DimensionMismatch { expected: n + 1, got: eps.len() });
    }
    let q = eps[0].q;
    if eps.iter().any(|e| e.q != q) {
        return Err(AugError::BadField("all augmentations must share one field".into()));
    }
    let ring = CoeffRing::Fp(q);
    let mut entries: BTreeMap<Vec<usize>, BTreeMap<usize, i64>> = BTreeMap::new();
    for (a, da) in dga.diff.iter().enumerate() {
        for (w, c) in da.map_ring(ring).terms() {
            let letters = &w.tail;
            if letters.len() < n {
                continue;
            }
            for slots in choose(letters.len(), n) {
                // Evaluate the complementary segments. Segment s runs over
                // letter positions in (slots[s-1], slots[s]); t-powers at the
                // boundary belong to the segment that contains them: the
                // leading power and each letter's trailing power sit before
                // the next letter.
                let mut coeff = c;
                // leading t-power belongs to segment 0
                let mut seg = 0usize;
                coeff = ring.mul(coeff, t_pow_val(ring, eps[seg], w.lead));
                for (pos, &(letter, t_exp)) in letters.iter().enumerate() {
                    if seg < n && slots[seg] == pos {
                        // this letter is consumed by an input slot
                        seg += 1;
                    } else {
                        coeff = ring.mul(coeff, eps[seg].values[letter]);
                    }
                    coeff = ring.mul(coeff, t_pow_val(ring, eps[seg], t_exp));
                    if coeff == 0 {
                        break;
                    }
                }
                if coeff == 0 {
                    continue;
                }
                let mut key: Vec<usize> =
                    slots.iter().map(|&s| letters[s].0).collect();
                key.reverse();
                let out = entries.entry(key).or_default();
                let v = ring.add(*out.get(&a).unwrap_or(&0), coeff);
                if v == 0 {
                    out.remove(&a);
                } else {
                    out.insert(a, v);
                }
            }
        }
    }
    entries.retain(|_, v| !v.is_empty());
    Ok(AInfinityTable { n, q, entries })
}

fn t_pow_val(ring: CoeffRing, eps: &Augmentation, k: i32) -> i64 {
    let base = if k >= 0 { eps.t } else { ring.inv(eps.t).expect("unit") };
    let mut v = 1;
    for _ in 0..k.abs() {
        v = ring.mul(v, base);
    }
    v
}

/// All strictly increasing k-subsets of 0..n, in lexicographic order.
fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// A square-matrix evaluation target over F_q.
pub struct MatrixTarget<'a> {
    pub ring: CoeffRing,
    pub dim: usize,
    /// Image of t; must be invertible.
    pub t_mat: Vec<Vec<i64>>,
    /// Inverse of the image of t.
    pub t_inv: Vec<Vec<i64>>,
    /// One dim x dim matrix per chord.
    pub images: &'a [Vec<Vec<i64>>],
}

impl<'a> MatrixTarget<'a> {
    pub fn new(
        ring: CoeffRing,
        t_mat: Vec<Vec<i64>>,
        images: &'a [Vec<Vec<i64>>],
    ) -> Result<Self, AugError> {
        let dim = t_mat.len();
        let t_inv = invert_matrix(&t_mat, ring).ok_or(AugError::SingularT {
            det: 0,
            q: ring.characteristic(),
        })?;
        Ok(MatrixTarget { ring, dim, t_mat, t_inv, images })
    }
}

impl NcTarget for MatrixTarget<'_> {
    type El = Vec<Vec<i64>>;
    fn zero(&self) -> Self::El {
        vec![vec![0; self.dim]; self.dim]
    }
    fn one(&self) -> Self::El {
        let mut m = self.zero();
        for i in 0..self.dim {
            m[i][i] = 1;
        }
        m
    }
    fn t_pow(&self, k: i32) -> Self::El {
        let base = if k >= 0 { &self.t_mat } else { &self.t_inv };
        let mut m = self.one();
        for _ in 0..k.abs() {
            m = self.mul(&m, base);
        }
        m
    }
    fn gen(&self, c: usize) -> Self::El {
        self.images[c].clone()
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let mut m = self.zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[i][j] = self.ring.add(a[i][j], b[i][j]);
            }
        }
        m
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let mut m = self.zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = 0;
                for k in 0..self.dim {
                    acc = self.ring.add(acc, self.ring.mul(a[i][k], b[k][j]));
                }
                m[i][j] = acc;
            }
        }
        m
    }
    fn scale(&self, k: i64, a: &Self::El) -> Self::El {
        let mut m = self.zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[i][j] = self.ring.mul(k, a[i][j]);
            }
        }
        m
    }
}

/// Invert a square matrix over F_p (None when singular).
fn invert_matrix(m: &[Vec<i64>], ring: CoeffRing) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut inv: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| ring.normalize(a[r][col]) != 0)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let piv_inv = ring.inv(a[col][col])?;
        for c in 0..n {
            a[col][c] = ring.mul(a[col][c], piv_inv);
            inv[col][c] = ring.mul(inv[col][c], piv_inv);
        }
        for r in 0..n {
            if r != col && ring.normalize(a[r][col]) != 0 {
                let f = a[r][col];
                for c in 0..n {
                    a[r][c] = ring.add(a[r][c], ring.neg(ring.mul(f, a[col][c])));
                    inv[r][c] = ring.add(inv[r][c], ring.neg(ring.mul(f, inv[col][c])));
                }
            }
        }
    }
    Some(inv)
}

/// Verify that an assignment of n x n matrices over F_q defines a rho-graded
/// representation of the DGA: sigma(t) invertible, sigma vanishes on chords
/// of degree not 0 mod rho, and sigma(da) = 0 for every generator.
pub fn verify_representation(
    dga: &Dga,
    q: u32,
    t_mat: Vec<Vec<i64>>,
    images: &[Vec<Vec<i64>>],
    rho: i64,
) -> Result<bool, AugError> {
    CoeffRing::Fp(q).validate().map_err(AugError::BadField)?;
    let ring = CoeffRing::Fp(q);
    if images.len() != dga.degrees.len() {
        return Err(AugError::DimensionMismatch {
            expected: dga.degrees.len(),
            got: images.len(),
        });
    }
    let dim = t_mat.len();
    if t_mat.iter().any(|r| r.len() != dim)
        || images.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim))
    {
        return Err(AugError::DimensionMismatch { expected: dim, got: 0 });
    }
    let target = MatrixTarget::new(ring, t_mat, images)?;
    // graded vanishing
    for (i, img) in images.iter().enumerate() {
        if !degree_eligible(dga.degrees[i], rho)
            && img.iter().any(|row| row.iter().any(|&v| ring.normalize(v) != 0))
        {
            return Ok(false);
        }
    }
    let zero = target.zero();
    Ok(dga.diff.iter().all(|dx| {
        let m = target.eval(&dx.map_ring(ring));
        m.iter().zip(zero.iter()).all(|(r, z)| {
            r.iter().zip(z.iter()).all(|(&v, &zv)| ring.normalize(v) == zv)
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{build_dga, BuildOptions};
    use crate::front::FrontDiagram;
    use crate::ring::CoeffRing;

    fn dga_of(word: &str) -> Dga {
        let front = FrontDiagram::parse(word).unwrap();
        build_dga(&front, CoeffRing::Int, BuildOptions::default()).unwrap()
    }

    const TREFOIL: &str = "L1 L3 X2 X2 X2 R1 *1 R1";

    #[test]
    fn unknot_has_one_graded_augmentation() {
        let dga = dga_of("L1 *2 R1");
        let augs = enumerate_augmentations(&dga, 2, 0).unwrap();
        assert_eq!(augs.len(), 1);
        assert_eq!(augs[0].t, 1);
        assert!(augs[0].verify(&dga));
        // over F_3: 1 + t^{-1} = 0 forces t = -1 = 2
        let augs3 = enumerate_augmentations(&dga, 3, 0).unwrap();
        assert_eq!(augs3.len(), 1);
        assert_eq!(augs3[0].t, 2);
    }

    #[test]
    fn trefoil_has_five_graded_f2_augmentations() {
        let dga = dga_of(TREFOIL);
        let augs = enumerate_augmentations(&dga, 2, 0).unwrap();
        assert_eq!(augs.len(), 5);
        for a in &augs {
            assert!(a.verify(&dga));
        }
    }

    #[test]
    fn trefoil_linearized_homology_and_cohomology() {
        let dga = dga_of(TREFOIL);
        let augs = enumerate_augmentations(&dga, 2, 0).unwrap();
        for eps in &augs {
            let cx = linearize(&dga, eps);
            assert!(cx.d_squared_is_zero());
            let p = linearized_poincare(&dga, eps);
            // LCH_1 = 1, LCH_0 = 2 for every augmentation
            assert_eq!(p.to_string(), "2 + z");
            assert!(sabloff_duality_check(&p));
            let co = linearized_cohomology(&dga, eps);
            assert_eq!(co.get(&2), Some(&1), "LCH^2 = F_2");
            assert_eq!(co.get(&1), Some(&2), "LCH^1 = F_2^2");
        }
    }

    #[test]
    fn unknot_poincare_is_z() {
        let dga = dga_of("L1 *2 R1");
        let augs = enumerate_augmentations(&dga, 2, 0).unwrap();
        let p = linearized_poincare(&dga, &augs[0]);
        assert_eq!(p.to_string(), "z");
        assert!(sabloff_duality_check(&p));
        let co = linearized_cohomology(&dga, &augs[0]);
        assert_eq!(co.get(&2), Some(&1));
    }

    #[test]
    fn aug_numbers_are_exact_half_powers_of_two() {
        let unknot = dga_of("L1 *2 R1");
        let n = normalized_aug_number(&unknot, 0).unwrap();
        assert_eq!((n.count, n.chi_star), (1, -1));
        assert_eq!(n.value, HalfPow2::new(1, 1));
        assert_eq!(n.value.to_string(), "sqrt(2)");

        let trefoil = dga_of(TREFOIL);
        let n = normalized_aug_number(&trefoil, 0).unwrap();
        assert_eq!(n.count, 5);
        // chi*_0 = 3 even-degree chords - 2 odd = can be read off degrees
        assert_eq!(n.chi_star, 1);
        assert_eq!(n.value, HalfPow2::new(5, -1));
    }

    #[test]
    fn sabloff_rejects_asymmetric_polynomials() {
        assert!(!sabloff_duality_check(&Laurent1::monomial(1, 2)));
        let mut p = Laurent1::zero();
        p.add_coeff(-2, 1);
        p.add_coeff(1, 1);
        p.add_coeff(2, 1);
        assert!(sabloff_duality_check(&p));
    }

    #[test]
    fn m1_matches_linearized_cohomology_differential() {
        let dga = dga_of(TREFOIL);
        let augs = enumerate_augmentations(&dga, 2, 0).unwrap();
        for eps in &augs {
            let cx = linearize(&dga, eps);
            let table = a_infinity(&dga, &[eps, eps], 1).unwrap();
            // m_1(a_j dual) = sum_i d1[i][j] a_i dual
            for j in 0..dga.degrees.len() {
                let out = table.apply(&[j]);
                for i in 0..dga.degrees.len() {
                    assert_eq!(out.get(&i).copied().unwrap_or(0), cx.d1[i][j]);
                }
            }
        }
    }

    #[test]
    fn a_infinity_relations_hold_over_f2() {
        // sum over decompositions: m1(m2(x,y)) = m2(m1 x, y) + m2(x, m1 y)
        // and the pentagon-type relation at n=3, over F_2 on the trefoil.
        let dga = dga_of(TREFOIL);
        let augs = enumerate_augmentations(&dga, 2, 0).unwrap();
        let eps = &augs[0];
        let n_gens = dga.degrees.len();
        let m1 = a_infinity(&dga, &[eps, eps], 1).unwrap();
        let m2 = a_infinity(&dga, &[eps, eps, eps], 2).unwrap();
        let m3 = a_infinity(&dga, &[eps, eps, eps, eps], 3).unwrap();
        let ring = CoeffRing::Fp(2);

        let compose =
            |outer: &AInfinityTable, inner: &BTreeMap<usize, i64>, rest: &dyn Fn(usize) -> Vec<usize>| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for (&g, &c) in inner {
                    for (&out, &c2) in &outer.apply(&rest(g)) {
                        let v = ring.add(*acc.get(&out).unwrap_or(&0), ring.mul(c, c2));
                        if v == 0 {
                            acc.remove(&out);
                        } else {
                            acc.insert(out, v);
                        }
                    }
                }
                acc
            };

        // n = 2 relation (Leibniz for m1 against m2)
        for x in 0..n_gens {
            for y in 0..n_gens {
                let mut total: BTreeMap<usize, i64> = BTreeMap::new();
                let mut add_all = |m: BTreeMap<usize, i64>, total: &mut BTreeMap<usize, i64>| {
                    for (g, c) in m {
                        let v = ring.add(*total.get(&g).unwrap_or(&0), c);
                        if v == 0 {
                            total.remove(&g);
                        } else {
                            total.insert(g, v);
                        }
                    }
                };
                add_all(compose(&m1, &m2.apply(&[x, y]), &|g| vec![g]), &mut total);
                add_all(compose(&m2, &m1.apply(&[x]), &|g| vec![g, y]), &mut total);
                add_all(compose(&m2, &m1.apply(&[y]), &|g| vec![x, g]), &mut total);
                assert!(total.is_empty(), "m1/m2 relation fails at ({x},{y}): {total:?}");
            }
        }

        // n = 3 relation: m1 m3 + m3(m1 x 1 x 1) + ... + m2(m2 x 1) + m2(1 x m2) = 0
        for x in 0..n_gens {
            for y in 0..n_gens {
                for z in 0..n_gens {
                    let mut total: BTreeMap<usize, i64> = BTreeMap::new();
                    let mut add_all = |m: BTreeMap<usize, i64>, total: &mut BTreeMap<usize, i64>| {
                        for (g, c) in m {
                            let v = ring.add(*total.get(&g).unwrap_or(&0), c);
                            if v == 0 {
                                total.remove(&g);
                            } else {
                                total.insert(g, v);
                            }
                        }
                    };
                    add_all(compose(&m1, &m3.apply(&[x, y, z]), &|g| vec![g]), &mut total);
                    add_all(compose(&m3, &m1.apply(&[x]), &|g| vec![g, y, z]), &mut total);
                    add_all(compose(&m3, &m1.apply(&[y]), &|g| vec![x, g, z]), &mut total);
                    add_all(compose(&m3, &m1.apply(&[z]), &|g| vec![x, y, g]), &mut total);
                    add_all(compose(&m2, &m2.apply(&[x, y]), &|g| vec![g, z]), &mut total);
                    add_all(compose(&m2, &m2.apply(&[y, z]), &|g| vec![x, g]), &mut total);
                    assert!(total.is_empty(), "m1/m2/m3 relation fails at ({x},{y},{z})");
                }
            }
        }
    }

    #[test]
    fn representation_check_accepts_augmentations_and_rejects_mutations() {
        let dga = dga_of(TREFOIL);
        let augs = enumerate_augmentations(&dga, 2, 0).unwrap();
        for eps in &augs {
            let images: Vec<Vec<Vec<i64>>> =
                eps.values.iter().map(|&v| vec![vec![v]]).collect();
            assert_eq!(
                verify_representation(&dga, 2, vec![vec![eps.t]], &images, 0),
                Ok(true)
            );
        }
        // a non-augmentation assignment must fail
        let n = dga.degrees.len();
        let images: Vec<Vec<Vec<i64>>> = (0..n).map(|_| vec![vec![0]]).collect();
        assert_eq!(verify_representation(&dga, 2, vec![vec![1]], &images, 0), Ok(false));
    }

    #[test]
    fn graded_augmentations_require_zero_rotation() {
        // a stabilized unknot has rot = +-1, so |t| != 0
        let front = FrontDiagram::parse("L1 *2 R1").unwrap();
        let stab = front.stabilize(1, 1, true).unwrap();
        let dga = build_dga(&stab, CoeffRing::Int, BuildOptions::default()).unwrap();
        match enumerate_augmentations(&dga, 2, 0) {
            Err(AugError::GradingObstruction { t_degree }) => assert_ne!(t_degree, 0),
            other => panic!("expected grading obstruction, got {other:?}"),
        }
        // ungraded augmentations don't exist either: d a = 1 for the new chord
        let augs = enumerate_augmentations(&dga, 2, 1).unwrap();
        assert!(augs.is_empty());
    }
}
