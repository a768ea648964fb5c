//! Normal rulings of a front diagram.
//!
//! A ρ-graded ruling partitions the arcs of the front into pairs of paths,
//! each running from one left cusp to one right cusp, bounding disks that are
//! pairwise nested or disjoint near every switched crossing.  Rulings are a
//! combinatorial shadow of augmentations: a front has a ρ-graded ruling
//! exactly when its DGA has a ρ-graded augmentation over F₂, and the exact
//! count of augmentations is predicted by the θ statistics of the rulings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::front::{EventKind, FrontDiagram};
use crate::poly::{HalfPow2, Laurent1};

#[derive(Debug, Error)]
pub enum RulingError {
    #[error("rho = {rho} does not divide 2*rot = {t} (and is not 1 or 2)")]
    BadRho { rho: i64, t: i64 },
    #[error("theta values {0} and {1} have different parity; the ruling sum is not of the form m*2^(k/2)")]
    MixedParity(i64, i64),
}

/// One normal ruling: the set of switched crossings plus the pairing history.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ruling {
    /// Chord ids (crossing generators) at which the ruling switches.
    pub switches: Vec<usize>,
    /// θ(R) = k − s where k = (#cusps)/2 and s = #switches.
    pub theta: i64,
    /// Strand pairing after each event: `pairing[e][p]` is the 0-based
    /// position paired with position `p` in the gap following event `e`.
    pub pairing_history: Vec<Vec<usize>>,
}

fn rho_allows(rho: i64, degree: i64) -> bool {
    if rho == 0 {
        degree == 0
    } else {
        degree.rem_euclid(rho) == 0
    }
}

fn check_rho(d: &FrontDiagram, rho: i64) -> Result<(), RulingError> {
    let t = d.t_degree();
    let ok = match rho {
        1 | 2 => true,
        0 => t == 0,
        r if r > 0 => t.rem_euclid(r) == 0,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(RulingError::BadRho { rho, t })
    }
}

/// Normality at a switch between 0-based positions `a` and `a+1` with
/// partners `pa` and `pb`: the two disks, seen as vertical intervals just
/// left of the crossing, must be nested or disjoint.
fn switch_is_normal(a: usize, pa: usize, pb: usize) -> bool {
    let b = a + 1;
    if pa < a && pb < a {
        pb < pa // both partners above: nested iff the lower pair is inside
    } else if pa > b && pb > b {
        pb < pa // both partners below: nested the same way
    } else {
        // one above, one below: disjoint only when the upper strand's
        // partner is the one above
        pa < a && pb > b
    }
}

struct Dfs<'a> {
    d: &'a FrontDiagram,
    rho: i64,
    k: i64,
    out: Vec<Ruling>,
}

impl Dfs<'_> {
    fn run(&mut self, e: usize, sigma: &mut Vec<usize>, switches: &mut Vec<usize>, hist: &mut Vec<Vec<usize>>) {
        if e == self.d.events.len() {
            debug_assert!(sigma.is_empty());
            self.out.push(Ruling {
                switches: switches.clone(),
                theta: self.k - switches.len() as i64,
                pairing_history: hist.clone(),
            });
            return;
        }
        let ev = self.d.events[e];
        let a = ev.pos - 1; // 0-based upper strand of the event
        match ev.kind {
            EventKind::LeftCusp => {
                for s in sigma.iter_mut() {
                    if *s >= a {
                        *s += 2;
                    }
                }
                sigma.insert(a, a + 1);
                sigma.insert(a + 1, a); // second insert lands after the first
                sigma[a] = a + 1;
                sigma[a + 1] = a;
                hist.push(sigma.clone());
                self.run(e + 1, sigma, switches, hist);
                hist.pop();
                sigma.drain(a..=a + 1);
                for s in sigma.iter_mut() {
                    if *s > a {
                        *s -= 2;
                    }
                }
            }
            EventKind::RightCusp => {
                if sigma[a] != a + 1 {
                    return; // the dying strands must be partners
                }
                let saved = sigma.clone();
                sigma.drain(a..=a + 1);
                for s in sigma.iter_mut() {
                    if *s > a {
                        *s -= 2;
                    }
                }
                hist.push(sigma.clone());
                self.run(e + 1, sigma, switches, hist);
                hist.pop();
                *sigma = saved;
            }
            EventKind::Crossing => {
                let (pa, pb) = (sigma[a], sigma[a + 1]);
                if pa == a + 1 {
                    return; // partnered strands may not cross each other
                }
                // non-switch: partners follow the strands through
                sigma.swap(a, a + 1);
                sigma[pa] = a + 1;
                sigma[pb] = a;
                hist.push(sigma.clone());
                self.run(e + 1, sigma, switches, hist);
                hist.pop();
                sigma[pb] = a + 1;
                sigma[pa] = a;
                sigma.swap(a, a + 1);
                // switch: positions keep their partners, the disks bounce
                let chord = self.d.chord_at_event(e).expect("crossing event has a chord");
                if rho_allows(self.rho, chord.degree) && switch_is_normal(a, pa, pb) {
                    switches.push(chord.id);
                    hist.push(sigma.clone());
                    self.run(e + 1, sigma, switches, hist);
                    hist.pop();
                    switches.pop();
                }
            }
        }
    }
}

/// Enumerate all ρ-graded normal rulings of the front.
pub fn enumerate_rulings(d: &FrontDiagram, rho: i64) -> Result<Vec<Ruling>, RulingError> {
    check_rho(d, rho)?;
    let k = d.right_cusps() as i64;
    let mut dfs = Dfs { d, rho, k, out: Vec::new() };
    dfs.run(0, &mut Vec::new(), &mut Vec::new(), &mut Vec::new());
    let mut out = dfs.out;
    out.sort_by(|x, y| x.switches.cmp(&y.switches));
    Ok(out)
}

/// The complete ρ-graded ruling invariant Θ_ρ as a sorted multiset.
pub fn theta_multiset(d: &FrontDiagram, rho: i64) -> Result<Vec<i64>, RulingError> {
    let mut thetas: Vec<i64> = enumerate_rulings(d, rho)?.iter().map(|r| r.theta).collect();
    thetas.sort_unstable();
    Ok(thetas)
}

/// The ruling polynomial R(z) = Σ z^{−θ+1} over Θ₁ and its oriented
/// counterpart over Θ₂.
pub fn ruling_polynomial(d: &FrontDiagram) -> (Laurent1, Laurent1) {
    let ungraded = theta_multiset(d, 1).expect("rho = 1 is always admissible");
    let oriented = theta_multiset(d, 2).expect("rho = 2 is always admissible");
    let poly = |thetas: &[i64]| {
        let mut p = Laurent1::zero();
        for &t in thetas {
            p.add_coeff(-t + 1, 1);
        }
        p
    };
    (poly(&ungraded), poly(&oriented))
}

/// The ruling-side prediction Σ 2^{θ/2} of the normalized augmentation
/// number, for ρ = 0 or odd.
pub fn aug_prediction(d: &FrontDiagram, rho: i64) -> Result<HalfPow2, RulingError> {
    let thetas = theta_multiset(d, rho)?;
    let Some(&min) = thetas.iter().min() else {
        return Ok(HalfPow2::zero());
    };
    let mut mantissa = 0i64;
    for &t in &thetas {
        if (t - min).rem_euclid(2) != 0 {
            return Err(RulingError::MixedParity(min, t));
        }
        mantissa += 1 << ((t - min) / 2);
    }
    Ok(HalfPow2::new(mantissa, min))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn front(word: &str) -> FrontDiagram {
        FrontDiagram::parse(word).unwrap()
    }

    #[test]
    fn unknot_has_one_switchless_ruling() {
        let d = front("L1 R1 *o");
        for rho in [0, 1, 2, 3] {
            let rs = enumerate_rulings(&d, rho).unwrap();
            assert_eq!(rs.len(), 1);
            assert!(rs[0].switches.is_empty());
            assert_eq!(rs[0].theta, 1);
        }
        let (r, or) = ruling_polynomial(&d);
        assert_eq!(r.to_string(), "1");
        assert_eq!(or.to_string(), "1");
    }

    #[test]
    fn trefoil_rulings_match_the_classical_count() {
        let d = front("L1 L3 X2 X2 X2 R1 *1 R1");
        let rs = enumerate_rulings(&d, 0).unwrap();
        let mut counts: Vec<usize> = rs.iter().map(|r| r.switches.len()).collect();
        counts.sort_unstable();
        assert_eq!(counts, vec![1, 1, 3]);
        assert_eq!(theta_multiset(&d, 0).unwrap(), vec![-1, 1, 1]);
        let (r, _or) = ruling_polynomial(&d);
        assert_eq!(r.to_string(), "2 + z^2");
        // Aug_0 = 2^{1/2} + 2^{1/2} + 2^{-1/2} = 5/sqrt(2)
        assert_eq!(aug_prediction(&d, 0).unwrap(), HalfPow2::new(5, -1));
    }

    #[test]
    fn chekanov_pair_is_distinguished_by_theta() {
        let l1 = front("L1 L1 X2 X2 X1 L2 X1 X1 X3 R2 R2 R1");
        let l2 = front("L1 L1 X2 X2 X3 L2 X1 X1 X3 R2 R2 R1");
        let t1 = theta_multiset(&l1, 0).unwrap();
        let t2 = theta_multiset(&l2, 0).unwrap();
        assert_ne!(t1, t2);
        // Aug_0(Λ₁) = sqrt(2), Aug_0(Λ₂) = 3/sqrt(2)
        assert_eq!(aug_prediction(&l1, 0).unwrap(), HalfPow2::new(1, 1));
        assert_eq!(aug_prediction(&l2, 0).unwrap(), HalfPow2::new(3, -1));
    }

    #[test]
    fn finer_grading_admits_fewer_rulings() {
        for word in ["L1 L3 X2 X2 X2 R1 *1 R1", "L1 L1 X2 X2 X1 L2 X1 X1 X3 R2 R2 R1"] {
            let d = front(word);
            let t0 = theta_multiset(&d, 0).unwrap();
            let t1 = theta_multiset(&d, 1).unwrap();
            let t2 = theta_multiset(&d, 2).unwrap();
            // Θ₂ ⊆ Θ₁ and Θ₀ ⊆ Θ₂ as multisets
            for (finer, coarser) in [(&t2, &t1), (&t0, &t2)] {
                let mut pool = coarser.clone();
                for v in finer.iter() {
                    let i = pool.iter().position(|x| x == v).expect("multiset inclusion");
                    pool.remove(i);
                }
            }
        }
    }

    #[test]
    fn pairing_history_pairs_are_involutions() {
        let d = front("L1 L3 X2 X2 X2 R1 *1 R1");
        for r in enumerate_rulings(&d, 1).unwrap() {
            for slice in &r.pairing_history {
                for (p, &q) in slice.iter().enumerate() {
                    assert_ne!(p, q);
                    assert_eq!(slice[q], p);
                }
            }
        }
    }
}
