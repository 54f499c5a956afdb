//! Invariants checked on random inputs.

use proptest::prelude::*;

use rootdatum::cli::{parse_point, CheckRow, Origin, Report};
use rootdatum::datum::{catalog, BaseRing, RootDatum};
use rootdatum::ext::{ExtElement, NormalizerExtension};
use rootdatum::linalg::{kernel_basis, rank, smith_normal_form, FinAbGroup, IntMatrix, Qz, RationalModZVector};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(-9i64..=9, r * c).prop_map(move |data| IntMatrix::from_vec(r, c, data)))
}

fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()).collect()
}

fn det(m: &[Vec<i128>]) -> i128 {
    let rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    IntMatrix::from_rows(&rows).det()
}

fn qz() -> impl Strategy<Value = Qz> {
    (-50i128..50, 1i128..13).prop_map(|(n, d)| Qz::new(n, d))
}

fn torus_point(n: usize) -> impl Strategy<Value = RationalModZVector> {
    prop::collection::vec(qz(), n).prop_map(RationalModZVector)
}

fn sample_data() -> Vec<RootDatum> {
    ["SU(3)", "Spin(5)", "SO(5)", "G2", "SU(2)xSO(3)"].iter().map(|n| catalog::by_name(n).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_diagonalizes_with_unimodular_transforms(m in matrix(4, 4)) {
        let s = smith_normal_form(&m).unwrap();
        let dense: Vec<Vec<i128>> = m.to_rows().iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let d = mat_mul(&mat_mul(&s.u, &dense), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = if i == j && i < s.diag.len() { s.diag[i] } else { 0 };
                prop_assert_eq!(x, want);
            }
        }
        prop_assert_eq!(det(&s.u).abs(), 1);
        prop_assert_eq!(det(&s.v).abs(), 1);
        let nonzero: Vec<i128> = s.diag.iter().copied().filter(|&x| x != 0).collect();
        for pair in nonzero.windows(2) {
            prop_assert!(pair[0] > 0 && pair[1] % pair[0] == 0);
        }
    }

    #[test]
    fn kernel_basis_spans_a_kernel_of_the_right_rank(m in matrix(3, 5)) {
        let k = kernel_basis(&m).unwrap();
        let r = rank(&m).unwrap();
        prop_assert_eq!(k.cols(), m.cols() - r);
        if k.cols() > 0 {
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(rank(&k).unwrap(), k.cols());
        }
    }

    #[test]
    fn finite_abelian_groups_normalize(orders in prop::collection::vec(1i64..30, 0..5)) {
        let g = FinAbGroup::from_orders(&orders);
        let expected: i128 = orders.iter().map(|&o| o as i128).product();
        prop_assert_eq!(g.order(), expected);
        for pair in g.invariant_factors().windows(2) {
            prop_assert_eq!(pair[1] % pair[0], 0);
        }
        prop_assert!(g.invariant_factors().iter().all(|&f| f > 1));
    }

    #[test]
    fn circle_arithmetic(a in qz(), b in qz(), c in qz(), k in -20i128..20) {
        prop_assert_eq!(a.add(b), b.add(a));
        prop_assert_eq!(a.add(b).add(c), a.add(b.add(c)));
        prop_assert!(a.add(a.neg()).is_zero());
        prop_assert!(a.mul_int(a.order() as i128).is_zero());
        prop_assert_eq!(a.add(b).mul_int(k), a.mul_int(k).add(b.mul_int(k)));
    }

    #[test]
    fn torus_points_round_trip_through_the_command_line(v in torus_point(3)) {
        let text: Vec<String> = v.0.iter().map(|q| q.to_string()).collect();
        prop_assert_eq!(parse_point(&text.join(",")).unwrap(), v);
    }

    #[test]
    fn weyl_group_multiplication_is_associative(which in 0usize..5, a in 0usize..1000, b in 0usize..1000, c in 0usize..1000) {
        let d = &sample_data()[which];
        let w = d.weyl();
        let (a, b, c) = (a % w.order(), b % w.order(), c % w.order());
        prop_assert_eq!(w.mul(w.mul(a, b), c), w.mul(a, w.mul(b, c)));
        prop_assert_eq!(w.mul(a, w.inv(a)), w.identity());
        prop_assert_eq!(w.matrix(w.mul(a, b)), &w.matrix(a).mul(w.matrix(b)));
    }

    #[test]
    fn normalizer_extension_is_a_group(
        which in 0usize..5,
        ws in prop::array::uniform3(0usize..1000),
        ts in prop::array::uniform3(torus_point(3)),
    ) {
        let d = &sample_data()[which];
        let n = NormalizerExtension::new(d).unwrap();
        let order = d.weyl().order();
        prop_assert!(n.cocycle_violation([(ws[0] % order, ws[1] % order, ws[2] % order)]).is_none());
        let el: Vec<ExtElement> = (0..3)
            .map(|i| ExtElement { t: RationalModZVector(ts[i].0[..d.rank()].to_vec()), w: ws[i] % order })
            .collect();
        let (x, y, z) = (&el[0], &el[1], &el[2]);
        prop_assert_eq!(n.mul(&n.mul(x, y), z), n.mul(x, &n.mul(y, z)));
        prop_assert_eq!(n.mul(x, &n.inv(x)), n.identity());
    }

    #[test]
    fn markings_are_two_torsion(which in 0usize..5, r in 0usize..100) {
        let d = &sample_data()[which];
        let r = r % d.reflections().len();
        prop_assert!(d.marking(r).scale(2).is_zero());
        let at3 = d.base_change(BaseRing::Padic(3)).unwrap();
        prop_assert!(at3.marking(r).is_zero());
    }

    #[test]
    fn reports_are_deterministic(inputs in prop::collection::vec("[a-z0-9 ]{0,12}", 0..4), flag in any::<bool>()) {
        let build = || {
            let mut r = Report::new("verify test", &inputs);
            r.check(CheckRow::flag("D", "a check", flag, Origin::Computed));
            r
        };
        let (a, b) = (build(), build());
        prop_assert_eq!(a.to_json(), b.to_json());
        prop_assert_eq!(a.passed, flag);
        let mut other = inputs.clone();
        other.push("extra".into());
        prop_assert_ne!(Report::new("verify test", &other).inputs_digest, a.inputs_digest);
    }
}
