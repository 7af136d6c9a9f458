use super::*;
use crate::scheme::{eigenmatrix, verify_scheme, Constancy};

const PAIRING: [usize; 7] = [0, 2, 1, 4, 3, 5, 6];

fn blocks(b: &[&[usize]]) -> Vec<Vec<usize>> {
    b.iter().map(|x| x.to_vec()).collect()
}

#[test]
fn admissibility_examples() {
    let singletons: Vec<Vec<usize>> = (0..7).map(|i| vec![i]).collect();
    assert!(AdmissiblePartition::new(singletons, &PAIRING).is_some());
    // {1}′ = {2} is not a block
    assert!(
        AdmissiblePartition::new(blocks(&[&[0], &[1], &[3], &[5, 6], &[2, 4]]), &PAIRING).is_none()
    );
    let x7 =
        AdmissiblePartition::new(blocks(&[&[0], &[1, 3], &[2, 4], &[5, 6]]), &PAIRING).unwrap();
    assert!(!x7.is_symmetric(&PAIRING));
    assert!(AdmissiblePartition::new(blocks(&[&[0, 1], &[2, 3, 4, 5, 6]]), &PAIRING).is_none());
    assert!(AdmissiblePartition::new(blocks(&[&[0], &[1, 2, 3, 4, 5]]), &PAIRING).is_none());
}

#[test]
fn enumeration_is_canonical() {
    let all = enumerate_admissible(&PAIRING);
    assert_eq!(all.len(), 31);
    assert_eq!(all.first().unwrap().blocks().len(), 2);
    let ident = all.iter().filter(|p| p.is_identity()).count();
    assert_eq!(ident, 1);
    // Bell(6) candidates when every class is self-paired
    assert_eq!(enumerate_admissible(&[0, 1, 2, 3, 4, 5, 6]).len(), 203);
    let mut sorted = all.clone();
    sorted.dedup();
    assert_eq!(sorted.len(), all.len());
}

#[test]
fn identity_fusion_returns_p() {
    let p = Eigenmatrix::class6_formula(4);
    let id = AdmissiblePartition::new((0..7).map(|i| vec![i]).collect(), &PAIRING).unwrap();
    let f = bannai_muzychuk(&p, &id).unwrap();
    assert_eq!(f.fused, p);
    assert_eq!(f.delta, (0..7).map(|i| vec![i]).collect::<Vec<_>>());
}

#[test]
fn x5_and_x7_examples() {
    let p = Eigenmatrix::class6_formula(4);
    let x5 = bannai_muzychuk(&p, &KnownFusion::by_name("X5").unwrap().partition()).unwrap();
    assert!(x5.symmetric);
    assert_eq!(x5.class_count, 3);
    let x7 = bannai_muzychuk(&p, &KnownFusion::by_name("X7").unwrap().partition()).unwrap();
    assert_eq!(x7.fused, Eigenmatrix::class3_formula(4));
    let x8 = bannai_muzychuk(&p, &KnownFusion::by_name("X8").unwrap().partition()).unwrap();
    assert_eq!(x8.fused, Eigenmatrix::class3_formula(4));
    assert_eq!(x7.fused.get(0, 3), &GaussInt::from(7));
}

#[test]
fn non_fusion_rejected() {
    let p = Eigenmatrix::class6_formula(4);
    let l = AdmissiblePartition::new(blocks(&[&[0], &[1, 2], &[3, 4, 5], &[6]]), &PAIRING).unwrap();
    assert!(bannai_muzychuk(&p, &l).is_none());
}

#[test]
fn table_contains_every_known_row() {
    for b in [4, 16, 64] {
        let p = Eigenmatrix::class6_formula(b);
        let table = fusion_table(&p, 3);
        for k in &KNOWN_FUSIONS {
            assert!(
                table.iter().any(|f| k.matches(f)),
                "{} missing at b={b}",
                k.name
            );
        }
        // {1,2},{3,4,6} is a fusion that the known list omits
        let extra: Vec<_> = table.iter().filter(|f| f.known_name().is_none()).collect();
        assert_eq!(extra.len(), 1);
        assert_eq!(
            extra[0].partition.fused_relations(),
            blocks(&[&[1, 2], &[3, 4, 6]])
        );
        assert!(extra[0].symmetric);
    }
}

#[test]
fn small_class_fusions_are_separate() {
    let p = Eigenmatrix::class6_formula(4);
    let all = fusion_table(&p, 1);
    let small: Vec<_> = all.iter().filter(|f| f.class_count < 3).collect();
    assert_eq!(small.len(), 4);
    assert!(small.iter().any(|f| f.class_count == 1));
}

#[test]
fn double_fusion_is_consistent() {
    let p = Eigenmatrix::class6_formula(4);
    let x1 = bannai_muzychuk(&p, &KnownFusion::by_name("X1").unwrap().partition()).unwrap();
    // X1 classes: {0},{1,2},{3},{4},{5},{6} → fuse {3,4} and {5,6} inside it
    let pairing = x1.fused.column_pairing().unwrap();
    assert_eq!(pairing, vec![0, 1, 3, 2, 4, 5]);
    let inner =
        AdmissiblePartition::new(blocks(&[&[0], &[1], &[2, 3], &[4, 5]]), &pairing).unwrap();
    let twice = bannai_muzychuk(&x1.fused, &inner).unwrap();
    let x5 = bannai_muzychuk(&p, &KnownFusion::by_name("X5").unwrap().partition()).unwrap();
    assert_eq!(twice.fused, x5.fused);
}

#[test]
fn fusions_are_schemes_by_convolution() {
    let r = GaloisRing::new(3, None).unwrap();
    let part = DifferencePartition::class6(&r);
    let p = eigenmatrix(&r, &part, Constancy::Full).unwrap();
    for f in fusion_table(&p, 1) {
        let fp = f.fused_partition(&r, &part).unwrap();
        let s = verify_scheme(&r, &fp).unwrap();
        s.check_axioms().unwrap();
        // row a of the fused matrix is λ_α over the fused classes for any α in a class of Δ_a
        for (a, rows) in f.delta.iter().enumerate() {
            for &i in rows {
                let alpha = part.class(i).iter().next().unwrap();
                for (b, class) in fp.classes().iter().enumerate() {
                    assert_eq!(&r.lambda_sum(alpha, class), f.fused.get(a, b));
                }
            }
        }
        for (b, block) in f.partition.blocks().iter().enumerate() {
            let k: u64 = block
                .iter()
                .map(|&j| s.valencies[0] * part.sizes()[j] as u64)
                .sum();
            assert_eq!(f.fused.get(0, b), &GaussInt::from(k as i64));
        }
    }
}

#[test]
fn t_invariance_examples() {
    let r = GaloisRing::new(3, None).unwrap();
    let part = DifferencePartition::class6(&r);
    assert!(!t_invariance(&r, &part));
    let x7 = part
        .fuse(&r, KnownFusion::by_name("X7").unwrap().partition().blocks())
        .unwrap();
    let x8 = part
        .fuse(&r, KnownFusion::by_name("X8").unwrap().partition().blocks())
        .unwrap();
    assert!(t_invariance(&r, &x7));
    assert!(!t_invariance(&r, &x8));
}
