//! Scratch search tool: enumerate small closed fronts and filter by
//! classical invariants, chord degree multisets, augmentation counts and
//! linearized Poincare polynomials to locate fixture words.

use chekdga::augment::{enumerate_augmentations, linearized_poincare};
use chekdga::dga::{build_dga, BuildOptions};
use chekdga::front::FrontDiagram;
use chekdga::ring::CoeffRing;
use std::collections::BTreeSet;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let nl: usize = args[1].parse().unwrap();
    let nr: usize = args[2].parse().unwrap();
    let nx: usize = args[3].parse().unwrap();
    let max_strands: usize = args[4].parse().unwrap();

    let target1: Vec<i64> = vec![-2, 0, 0, 0, 1, 1, 1, 1, 2];
    let target2: Vec<i64> = vec![0, 0, 0, 0, 0, 1, 1, 1, 1];

    let mut word: Vec<String> = Vec::new();
    let mut hits1: Vec<String> = Vec::new();
    let mut hits2: Vec<String> = Vec::new();
    let mut n_checked = 0u64;
    gen(0, (nl, nr, nx), max_strands, &mut word, &mut |w| {
        n_checked += 1;
        let s = w.join(" ");
        let Ok(front) = FrontDiagram::parse(&s) else { return };
        let (tb, rot) = front.classical_invariants();
        if tb != 1 || rot != 0 {
            return;
        }
        let mut degs: Vec<i64> = front.chords.iter().map(|c| c.degree).collect();
        degs.sort_unstable();
        if degs == target1 {
            hits1.push(s);
        } else if degs == target2 {
            hits2.push(s);
        }
    });
    eprintln!("checked {n_checked} words");
    eprintln!("degree-multiset hits: {} / {}", hits1.len(), hits2.len());

    for (label, hits, want, want_naugs) in [
        ("type1", &hits1, "z^-2 + z + z^2", 1),
        ("type2", &hits2, "2 + z", 3),
    ] {
        let mut shown = 0;
        for s in hits {
            let front = FrontDiagram::parse(s).unwrap();
            let Ok(dga) = build_dga(&front, CoeffRing::Int, BuildOptions::default()) else {
                continue;
            };
            if !dga.d_squared_residuals().iter().all(|r| r.is_zero()) {
                println!("{label} D2FAIL {s}");
                continue;
            }
            let augs = enumerate_augmentations(&dga, 2, 0).unwrap();
            if augs.len() != want_naugs {
                continue;
            }
            let polys: BTreeSet<String> = augs
                .iter()
                .map(|e| linearized_poincare(&dga, e).to_string())
                .collect();
            let ok = polys.len() == 1 && polys.iter().next().map(|p| p.as_str()) == Some(want);
            if ok {
                shown += 1;
                println!("{label} MATCH {s}");
            }
        }
        println!("{label}: total matches {shown}");
    }
}

fn gen(
    strands: usize,
    left: (usize, usize, usize),
    max_strands: usize,
    word: &mut Vec<String>,
    emit: &mut dyn FnMut(&Vec<String>),
) {
    let (l, r, x) = left;
    if l == 0 && r == 0 && x == 0 {
        if strands == 0 {
            emit(word);
        }
        return;
    }
    if strands > 2 * r {
        return;
    }
    if l > 0 && strands + 2 <= max_strands {
        for p in 1..=strands + 1 {
            word.push(format!("L{p}"));
            gen(strands + 2, (l - 1, r, x), max_strands, word, emit);
            word.pop();
        }
    }
    if strands >= 2 {
        if x > 0 {
            for p in 1..strands {
                word.push(format!("X{p}"));
                gen(strands, (l, r, x - 1), max_strands, word, emit);
                word.pop();
            }
        }
        if r > 0 {
            for p in 1..strands {
                word.push(format!("R{p}"));
                gen(strands - 2, (l, r - 1, x), max_strands, word, emit);
                word.pop();
            }
        }
    }
}
