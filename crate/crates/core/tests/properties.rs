use proptest::prelude::*;

use mnl_core::algebra::{bracket, catalog_algebra, is_lie, is_maltsev, jacobiator, TangentVector};
use mnl_core::etc::FieldSet;
use mnl_core::fock::{build_fock, LatticeOp};
use mnl_core::linalg::{rank, Matrix};
use mnl_core::loops::groups::small_groups;
use mnl_core::loops::{chein_double, is_moufang};
use mnl_core::octonion::Octonion;
use mnl_core::rational::int;

fn vector(dim: usize) -> impl Strategy<Value = TangentVector> {
    prop::collection::vec(-4i128..=4, dim).prop_map(|xs| TangentVector::from_ints(&xs))
}

fn octonion() -> impl Strategy<Value = Octonion> {
    (-2.0f64..2.0, prop::array::uniform7(-2.0f64..2.0)).prop_map(|(re, im)| Octonion::new(re, im))
}

fn int_matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i128..=3, n * n)
        .prop_map(move |xs| Matrix::from_fn(n, n, |i, j| int(xs[i * n + j])))
}

fn close(a: &Octonion, b: &Octonion) -> bool {
    let d = *a - *b;
    d.norm_sqr() < 1e-18 * (1.0 + a.norm_sqr())
}

proptest! {
    #[test]
    fn bracket_is_antisymmetric(x in vector(7), y in vector(7)) {
        let m7 = catalog_algebra("m7").unwrap();
        let xy = bracket(&m7, &x, &y).unwrap();
        let yx = bracket(&m7, &y, &x).unwrap();
        prop_assert_eq!(xy, -&yx);
    }

    #[test]
    fn maltsev_identity_on_random_vectors(x in vector(7), y in vector(7), z in vector(7)) {
        // J(x, y, [x, z]) = [J(x, y, z), x]
        let m7 = catalog_algebra("m7").unwrap();
        let xz = bracket(&m7, &x, &z).unwrap();
        let lhs = jacobiator(&m7, &x, &y, &xz).unwrap();
        let rhs = bracket(&m7, &jacobiator(&m7, &x, &y, &z).unwrap(), &x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobiator_vanishes_for_lie_algebras(x in vector(3), y in vector(3), z in vector(3)) {
        for name in ["su2", "sl2"] {
            let c = catalog_algebra(name).unwrap();
            prop_assert!(jacobiator(&c, &x, &y, &z).unwrap().is_zero());
        }
    }

    #[test]
    fn jacobiator_is_alternating(x in vector(7), y in vector(7), z in vector(7)) {
        let m7 = catalog_algebra("m7").unwrap();
        let j = jacobiator(&m7, &x, &y, &z).unwrap();
        prop_assert_eq!(jacobiator(&m7, &y, &x, &z).unwrap(), -&j);
        prop_assert_eq!(jacobiator(&m7, &y, &z, &x).unwrap(), j);
    }

    #[test]
    fn scaling_preserves_the_identities(k in 1i128..6) {
        let m7 = catalog_algebra("m7").unwrap().scale(int(k));
        prop_assert!(is_maltsev(&m7).passed);
        prop_assert!(!is_lie(&m7).passed);
    }

    #[test]
    fn octonions_are_alternative_and_moufang(x in octonion(), y in octonion(), z in octonion()) {
        prop_assert!(close(&((x * x) * y), &(x * (x * y))));
        prop_assert!(close(&((y * x) * x), &(y * (x * x))));
        prop_assert!(close(&((x * y) * (z * x)), &(x * ((y * z) * x))));
        let n = (x * y).norm_sqr() - x.norm_sqr() * y.norm_sqr();
        prop_assert!(n.abs() < 1e-9 * (1.0 + x.norm_sqr() * y.norm_sqr()));
    }

    #[test]
    fn commutator_rank_bounded(a in int_matrix(4), b in int_matrix(4)) {
        let c = a.commutator(&b);
        prop_assert_eq!(c.commutator(&c).is_zero(), true);
        let rows: Vec<Vec<_>> = (0..4).map(|i| c.row(i).to_vec()).collect();
        prop_assert!(rank(&rows) <= 4);
        prop_assert_eq!(&c + &b.commutator(&a), Matrix::zeros(4, 4));
    }

    #[test]
    fn bilinears_form_a_lie_homomorphism(m in int_matrix(3), n in int_matrix(3)) {
        let f = FieldSet::canonical(&build_fock(3, 1).unwrap());
        let qm = f.bilinear(&m, 0);
        let qn = f.bilinear(&n, 0);
        prop_assert!(LatticeOp::commutators_equal(&[(1, &qm, &qn)], &f.bilinear(&m.commutator(&n), 0)));
    }
}

#[test]
fn chein_doubles_of_small_groups_are_moufang() {
    for (name, g) in small_groups().into_iter().filter(|(_, g)| g.order() <= 6) {
        let m = chein_double(&g).unwrap();
        assert_eq!(m.order(), 2 * g.order());
        assert!(is_moufang(&m).unwrap().passed, "M({name}, 2)");
    }
}
