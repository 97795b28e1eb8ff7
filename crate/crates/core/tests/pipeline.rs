//! Cross-module flows: rows built from points, prepared, classified and compared.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use umrow_core::euler::{compare_rows, phi_class, phi_class_with, ClassOptions, Comparison, ComponentSeparator};
use umrow_core::ring::{GbCache, GbConfig, RingSpec};
use umrow_core::umrow::{apply_elementary, prep_regular, random_ops, row_from_point, Pole, Row};
use umrow_core::Rational;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[test]
fn pole_rows_realize_both_signs() {
    let ring = RingSpec::sphere(2);
    let sep = ComponentSeparator::for_ring(&ring);
    let north = row_from_point(&ring, Pole::North, &q(-3)).unwrap();
    let south = row_from_point(&ring, Pole::South, &q(-3)).unwrap();
    let positive = row_from_point(&ring, Pole::North, &q(5)).unwrap();
    assert_eq!(phi_class(&north, &sep).unwrap().class, vec![-1]);
    assert_eq!(phi_class(&south, &sep).unwrap().class, vec![1]);
    assert_eq!(phi_class(&positive, &sep).unwrap().class, vec![0]);
}

#[test]
fn prepared_ops_replay_exactly() {
    let ring = RingSpec::sphere(2);
    let row = Row::parse(&ring, "z,(z-2)*x,(z-2)*y").unwrap().certified().unwrap();
    for seed in 0..3 {
        let p = prep_regular(&row, seed).unwrap();
        let replay = apply_elementary(&row, &p.ops).unwrap();
        assert!(replay.equivalent_entries(&p.row).unwrap(), "seed {seed}");
    }
}

#[test]
fn moved_rows_compare_equivalent_on_s3() {
    let ring = RingSpec::sphere(3);
    let sep = ComponentSeparator::for_ring(&ring);
    let base = Row::parse(&ring, "x1,x2,x3,x4").unwrap().certified().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let moved = apply_elementary(&base, &random_ops(4, 4, 2, 1, &mut rng)).unwrap();
    let (kind, a, b) = compare_rows(&base, &moved, &sep).unwrap();
    assert_eq!((kind, a.class, b.class), (Comparison::Equivalent, vec![1], vec![1]));
}

#[test]
fn disk_cache_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let ring = RingSpec::sphere(2);
    let row = Row::parse(&ring, "z,x*(z+3),y").unwrap();
    let sep = ComponentSeparator::for_ring(&ring);
    let opts = ClassOptions { config: GbConfig { cache: Some(GbCache::new(dir.path())), ..GbConfig::default() }, ..ClassOptions::default() };
    let cold = phi_class_with(&row, &sep, &opts).unwrap();
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some(), "cache stays empty");
    let warm = phi_class_with(&row, &sep, &opts).unwrap();
    assert_eq!(cold.class, warm.class);
    assert_eq!(cold.signatures, warm.signatures);
}
