use num_rational::Ratio;

use sodual::branching::{branch_set, classify_pair, dynkin_index, trace_anomaly, EmbeddingData};
use sodual::{BranchPair, Source, Variant, YoungDiagram};

#[test]
fn dynkin_indices_are_the_other_dimension() {
    for r in 1..=5 {
        for s in 1..=5 {
            assert_eq!(dynkin_index(r, s), (2 * s as i64 + 1, 2 * r as i64 + 1));
            let e = EmbeddingData::new(r, s);
            assert_eq!(e.levels, (2 * s as u32 + 1, 2 * r as u32 + 1));
        }
    }
}

#[test]
fn classify_inverts_new() {
    for (r, s) in [(3, 3), (3, 4), (4, 3), (2, 5)] {
        for y in YoungDiagram::enumerate(r, s) {
            for v in Variant::ALL {
                let p = BranchPair::new(&y, v, r, s).unwrap();
                let back = classify_pair(&p.left, &p.right).unwrap();
                assert_eq!((back.left, back.right), (p.left.clone(), p.right.clone()));
            }
        }
    }
}

#[test]
fn anomaly_routes_the_source() {
    // vacuum components have integral L_0 modulo 1, vector ones 1/2
    for (r, s) in [(3, 3), (3, 4)] {
        for source in [Source::Vacuum, Source::Vector] {
            for p in branch_set(r, s, source, 12).unwrap() {
                let frac = p.anomaly().unwrap().fract();
                let want = if source == Source::Vacuum { Ratio::from_integer(0) } else { Ratio::new(1, 2) };
                assert_eq!(frac, want, "{:?}", p);
            }
        }
    }
}

#[test]
fn branch_sets_partition_the_pairs() {
    let (r, s) = (3, 3);
    let vac = branch_set(r, s, Source::Vacuum, 9).unwrap();
    let vec = branch_set(r, s, Source::Vector, 9).unwrap();
    // each diagram contributes four variants, some coinciding
    assert!(vac.len() + vec.len() <= 4 * YoungDiagram::enumerate(r, s).len());
    for p in &vac {
        assert!(!vec.iter().any(|q| q.left == p.left && q.right == p.right));
    }
}

#[test]
fn plain_anomaly_is_half_the_size() {
    for y in YoungDiagram::enumerate(4, 3) {
        let p = BranchPair::new(&y, Variant::Plain, 4, 3).unwrap();
        assert_eq!(p.anomaly().unwrap(), Ratio::new(y.size() as i64, 2));
        assert!(trace_anomaly(&p.left, 7).is_ok());
    }
}
