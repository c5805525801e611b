//! The octonionic lattice on two sites (2^16 states).

use mnl_core::algebra::catalog_algebra;
use mnl_core::birep::octonion_lr_generators;
use mnl_core::etc::{charge_algebra_check, charge_densities, charges, locality_check, FieldSet};
use mnl_core::fock::{build_fock, check_car};
use mnl_core::rational::imag_unit;

#[test]
fn octonion_lattice_on_two_sites() {
    let ops = build_fock(8, 2).unwrap();
    assert_eq!(ops.dim(), 65536);
    assert!(check_car(&ops).passed);

    let m7 = catalog_algebra("m7").unwrap();
    let f = FieldSet::canonical(&ops);
    let d = charge_densities(&f, &octonion_lr_generators(), &m7).unwrap();
    assert!(locality_check(&d).passed);

    let q = charges(&d);
    for j in 0..7 {
        let single = d.s(j, 0).nnz();
        assert!(q.sigma(j).nnz() <= 2 * single);
        assert_eq!(*q.sigma(j), d.s(j, 0).add(d.s(j, 1)).scale(-imag_unit()));
    }
    assert!(charge_algebra_check(&q, &m7).passed);
}
