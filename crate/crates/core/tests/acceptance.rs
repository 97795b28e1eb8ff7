//! End-to-end acceptance checks. Each test prints one PASS/FAIL line.

mod support;

use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::criterion;
use support::witt_oracle;
use umrow_core::euler::{freeness_verdict, phi_additivity_check, phi_class, phi_class_with, ClassOptions, ComponentSeparator, VerdictKind};
use umrow_core::gersten::{boundary_at_origin, eq1_identity_check, eq1_perturbations, xi_cycle, TwistTag};
use umrow_core::linalg::signature;
use umrow_core::mwk::{Generator, GnValue, RelationInstance};
use umrow_core::qform::{witt_decompose, BaseField, DiagonalForm};
use umrow_core::ring::{groebner, parse_poly, quotient_basis, trace_form, MonomialOrder, RingSpec};
use umrow_core::umrow::{
    apply_elementary, cayley_dickson_completion, quaternion_completion, random_ops, verify_completion, wms_relation_instance, Row,
    WmsOutcome,
};
use umrow_core::Rational;

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn class_of(ring: &RingSpec, row: &str) -> Vec<i64> {
    phi_class(&Row::parse(ring, row).unwrap(), &ComponentSeparator::for_ring(ring)).unwrap().class
}

#[test]
fn tangent_row_on_two_sphere_generates() {
    criterion("tangent row on S2", secs(1), || {
        let c = class_of(&RingSpec::sphere(2), "z,x,y");
        assert_eq!(c, vec![1]);
        format!("class {c:?}")
    });
}

#[test]
fn tangent_row_on_four_sphere_generates() {
    criterion("tangent row on S4", secs(30), || {
        let ring = RingSpec::sphere(4);
        let row = Row::parse(&ring, "x1,x2,x3,x4,x5").unwrap();
        let c = phi_class_with(&row, &ComponentSeparator::for_ring(&ring), &ClassOptions::default()).unwrap();
        assert_eq!(c.class.class, vec![1]);
        assert_eq!(c.algebra_dim, 2);
        format!("class {:?}, quotient dimension {}", c.class.class, c.algebra_dim)
    });
}

#[test]
fn quaternion_and_octonion_completions() {
    criterion("S3 quaternion completion", secs(5), || {
        let ring = RingSpec::sphere(3);
        let row = Row::parse(&ring, "x1,x2,x3,x4").unwrap();
        let m = quaternion_completion(&row).unwrap();
        let r = verify_completion(&row, &m).unwrap();
        assert!(r.verified() && r.det.as_ref().unwrap().is_one());
        let v = freeness_verdict(&row, &ComponentSeparator::for_ring(&ring), Some(&m)).unwrap();
        assert_eq!(v.combined(), "free");
        "det = 1, combined verdict free".into()
    });
    criterion("S7 octonion completion", secs(120), || {
        let ring = RingSpec::sphere(7);
        let row = Row::parse(&ring, "x1,x2,x3,x4,x5,x6,x7,x8").unwrap();
        let m = cayley_dickson_completion(&row).unwrap();
        assert!(verify_completion(&row, &m).unwrap().verified());
        let v = freeness_verdict(&row, &ComponentSeparator::for_ring(&ring), Some(&m)).unwrap();
        assert_eq!(v.combined(), "free");
        "det = 1, combined verdict free".into()
    });
}

#[test]
fn elementary_fuzz_preserves_class() {
    criterion("elementary-operation fuzz on S2", secs(600), || {
        let ring = RingSpec::sphere(2);
        let sep = ComponentSeparator::for_ring(&ring);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut ops_total = 0;
        for (text, expected) in [("z,x,y", 1), ("-z,x,y", -1), ("1,x,y", 0)] {
            let base = Row::parse(&ring, text).unwrap().certified().unwrap();
            for trial in 0..100 {
                let count = rng.gen_range(1..=2);
                let ops = random_ops(3, 3, count, 2, &mut rng);
                ops_total += ops.len();
                let moved = apply_elementary(&base, &ops).unwrap();
                let c = phi_class(&moved, &sep).unwrap_or_else(|e| panic!("{text} trial {trial}: {e}"));
                assert_eq!(c.class, vec![expected], "{text} trial {trial}: {:?}", moved.show());
            }
        }
        format!("300 trials, {ops_total} ops, all classes unchanged")
    });
}

#[test]
fn wms_additivity() {
    criterion("WMS additivity on S2", secs(60), || {
        let ring = RingSpec::sphere(2);
        let sep = ComponentSeparator::for_ring(&ring);
        let v = ring.parse_list("x,y").unwrap();
        let xs = ["1/2*z+2", "-z-3", "3/2*z-5/2", "2", "1/2*z+3/4", "z+3"];
        for x in xs {
            let WmsOutcome::Instance(inst) = wms_relation_instance(&ring, &ring.parse(x).unwrap(), &v).unwrap() else {
                panic!("{x} rejected")
            };
            let r = phi_additivity_check(&inst, &sep).unwrap();
            assert!(r.holds, "{x}: {r:?}");
            assert_eq!(r.product, r.x.add(&r.one_minus_x));
        }
        format!("{} instances", xs.len())
    });
}

fn generators(base: &BaseField, p: Option<i64>, rng: &mut ChaCha8Rng) -> Vec<Option<Generator>> {
    let mut gens = vec![None, Some(Generator::Eta)];
    match (base, p) {
        (_, Some(p)) => gens.extend((1..p).map(|c| Some(Generator::Symbol(Rational::from_integer(c.into()))))),
        _ => gens.push(Some(Generator::Symbol(random_rational(rng)))),
    }
    gens
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(1..=50) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let d: i64 = rng.gen_range(1..=20);
    Rational::new(n.into(), d.into())
}

fn instances_over_fp(p: i64) -> Vec<(u8, Vec<Rational>)> {
    let r = |k: i64| Rational::from_integer(k.into());
    let mut out = vec![(3, vec![])];
    for a in 1..p {
        out.push((4, vec![r(a)]));
        if a != 1 {
            out.push((2, vec![r(a)]));
        }
        for b in 1..p {
            out.push((1, vec![r(a), r(b)]));
        }
    }
    out
}

/// Checks every relation inside every one-generator context; returns (instances, values checked for compatibility).
fn check_relations(base: &BaseField, assignments: &[(u8, Vec<Rational>)], contexts: &[Option<Generator>]) -> (usize, usize) {
    let (mut count, mut values) = (0, 0);
    for (id, args) in assignments {
        let inst = RelationInstance::new(*id, args).unwrap();
        for l in contexts {
            for r in contexts {
                let ctx = inst.in_context(l.as_slice(), r.as_slice());
                if ctx.degree.abs() > 3 {
                    continue;
                }
                let (lhs, rhs) = ctx.sides(base).unwrap();
                assert_eq!(lhs, rhs, "relation {id} {args:?} in context {l:?}, {r:?} over {}", base.name());
                for side in [&lhs, &rhs] {
                    assert!(side.check_compatibility().unwrap(), "incompatible value {}", side.to_json());
                    values += 1;
                }
                count += 1;
            }
        }
    }
    (count, values)
}

fn mwk_sweep() -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut n, mut v) = (0, 0);
    for p in [3, 5, 7] {
        let base = BaseField::prime(p as u64).unwrap();
        let gens = generators(&base, Some(p), &mut rng);
        let (a, b) = check_relations(&base, &instances_over_fp(p), &gens);
        n += a;
        v += b;
    }
    let reals = BaseField::Reals;
    for _ in 0..200 {
        let a = random_rational(&mut rng);
        let b = random_rational(&mut rng);
        let mut assignments = vec![(1, vec![a.clone(), b]), (3, vec![]), (4, vec![a.clone()])];
        if a != Rational::from_integer(1.into()) {
            assignments.push((2, vec![a]));
        }
        let gens = generators(&reals, None, &mut rng);
        let (x, y) = check_relations(&reals, &assignments, &gens);
        n += x;
        v += y;
    }
    (n, v)
}

#[test]
fn milnor_witt_relations_hold() {
    criterion("Milnor-Witt relations over F3, F5, F7 and R", secs(300), || {
        let (n, _) = mwk_sweep();
        format!("{n} relation instances")
    });
}

#[test]
fn milnor_witt_values_are_compatible() {
    criterion("fiber-product compatibility of relation values", secs(300), || {
        let (_, v) = mwk_sweep();
        let extra = GnValue::eta(&BaseField::Reals).unwrap();
        assert!(extra.check_compatibility().unwrap());
        format!("{v} values compatible")
    });
}

#[test]
fn sum_identity_and_perturbations() {
    criterion("sum identity in G1(Q(t))", secs(30), || {
        assert_eq!(eq1_identity_check().unwrap().verdict(), "equal");
        let perturbed = eq1_perturbations().unwrap();
        for (name, r) in &perturbed {
            assert_eq!(r.verdict(), "unequal", "{name}");
        }
        format!("identity equal, {} perturbations unequal", perturbed.len())
    });
}

#[test]
fn boundary_of_xi_is_a_generator() {
    criterion("boundary of xi", secs(5), || {
        for n in 1..=3 {
            let b = boundary_at_origin(&xi_cycle(n).unwrap()).unwrap();
            assert!(b.is_unit_generator(), "n = {n}");
            assert_eq!((b.milnor, b.witt.show()), (1, "<1>".to_string()));
            assert_eq!(b.twist, TwistTag::koszul(1..=n as usize + 1));
        }
        "(1, <1>) for n = 1, 2, 3".into()
    });
}

#[test]
fn witt_decomposition_matches_brute_force() {
    criterion("Witt decomposition vs isotropy search", secs(300), || {
        let mut forms = 0;
        for p in [3i64, 5, 7] {
            let base = BaseField::prime(p as u64).unwrap();
            for dim in 0..=4u32 {
                for k in 0..(p as u64 - 1).pow(dim) {
                    let mut k = k;
                    let entries: Vec<i64> = (0..dim)
                        .map(|_| {
                            let e = (k % (p as u64 - 1)) as i64 + 1;
                            k /= p as u64 - 1;
                            e
                        })
                        .collect();
                    let f = DiagonalForm::from_ints(base.clone(), &entries).unwrap();
                    let (class, h) = witt_decompose(&f).unwrap();
                    let (kernel, oracle_h) = witt_oracle::decompose(&witt_oracle::diag(&entries, p), p);
                    assert_eq!(h, oracle_h, "F{p} {entries:?}");
                    let rep: Vec<i64> = class
                        .representative()
                        .entries()
                        .iter()
                        .map(|e| base.show(e).parse().unwrap())
                        .collect();
                    assert!(witt_oracle::isometric(&kernel, &witt_oracle::diag(&rep, p), p), "F{p} {entries:?} vs {rep:?}");
                    forms += 1;
                }
            }
        }
        format!("{forms} forms")
    });
}

#[test]
fn trace_form_counts_real_points() {
    criterion("trace-form signature counts real points", secs(5), || {
        let vars = vec!["z".to_string()];
        let mut out = Vec::new();
        for (rel, expected) in [("z^2-1", 2), ("z^2+1", 0), ("z^3-z", 3)] {
            let gb = groebner(&[parse_poly(rel, &vars).unwrap()], MonomialOrder::DegRevLex, false).unwrap();
            let s = signature(&trace_form(&quotient_basis(&gb).unwrap()).unwrap()).unwrap();
            assert_eq!(s, expected, "{rel}");
            out.push(format!("{rel}: {s}"));
        }
        out.join(", ")
    });
}

#[test]
fn conjugate_pair_does_not_change_class() {
    criterion("complex-conjugate zeros are invisible", secs(10), || {
        let ring = RingSpec::sphere(2);
        let sep = ComponentSeparator::for_ring(&ring);
        let plain = phi_class_with(&Row::parse(&ring, "z,x,y").unwrap(), &sep, &ClassOptions::default()).unwrap();
        let padded = phi_class_with(&Row::parse(&ring, "z,x,y*(z+2)").unwrap(), &sep, &ClassOptions::default()).unwrap();
        assert_eq!(plain.algebra_dim + 2, padded.algebra_dim);
        assert_eq!(plain.class, padded.class);
        format!("class {:?} with dim {} and {}", padded.class.class, plain.algebra_dim, padded.algebra_dim)
    });
}

#[test]
fn verdict_table() {
    criterion("freeness verdicts", secs(10), || {
        let s2 = RingSpec::sphere(2);
        let sep2 = ComponentSeparator::for_ring(&s2);
        let v = |r: &str| freeness_verdict(&Row::parse(&s2, r).unwrap(), &sep2, None).unwrap();
        assert_eq!(v("1,x,y").kind.label(), "free");
        assert_eq!(v("z,x,y").kind.label(), "not free");
        let s3 = RingSpec::sphere(3);
        let row = Row::parse(&s3, "x1,x2,x3,x4").unwrap();
        let m = quaternion_completion(&row).unwrap();
        let v3 = freeness_verdict(&row, &ComponentSeparator::for_ring(&s3), Some(&m)).unwrap();
        assert_eq!(v3.kind, VerdictKind::Indeterminate);
        assert_eq!(v3.kind.label(), "indeterminate under SL-action");
        assert_eq!(v3.completion_verified, Some(true));
        "free / not free / indeterminate with completion".into()
    });
}
