use fpfgroups_core::fixtures::{self, product_fixture, Fixture, DEFAULT_SET};
use fpfgroups_core::group::DEFAULT_ORDER_CAP;
use fpfgroups_core::report::{Measure, Status};
use fpfgroups_core::suite::{exponent_row, verify_fixture, SuiteOptions};

fn failures(f: &Fixture) -> Vec<String> {
    let r = verify_fixture(f, &SuiteOptions::default());
    r.checks
        .iter()
        .filter(|c| matches!(c.status, Status::Fail | Status::Finding))
        .map(|c| format!("{}: {} ({})", c.name, c.details, c.status))
        .collect()
}

#[test]
fn default_set_passes() {
    for &(family, p) in DEFAULT_SET {
        let f = fixtures::by_family(family, p).unwrap();
        assert_eq!(failures(&f), Vec::<String>::new(), "{}", f.name);
    }
}

#[test]
fn products_pass_and_combine_exponents() {
    let h = fixtures::heisenberg_d8(3).unwrap();
    let hh = product_fixture(&h, &h, DEFAULT_ORDER_CAP).unwrap();
    assert_eq!((hh.group.order(), hh.group.exponent()), (729, 3));
    assert_eq!(failures(&hh), Vec::<String>::new());

    let c = fixtures::by_family("products", 5).unwrap();
    assert_eq!((c.group.order(), c.group.exponent()), (27 * 125, 15));
    assert_eq!(exponent_row(&c).e, 15);

    let t = product_fixture(&h, &Fixture::trivial(h.action.acting_type), DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(t.group.order(), h.group.order());
    assert!(fixtures::by_family("products", 7).is_err());
}

#[test]
fn parameter_guards() {
    assert!(fixtures::heisenberg_d8(2).is_err());
    assert!(fixtures::affine_v(7).is_err());
    assert!(fixtures::cube_s4(9).is_err());
}

#[test]
fn heisenberg_report_values() {
    let f = fixtures::heisenberg_d8(5).unwrap();
    let r = verify_fixture(&f, &SuiteOptions::default());
    assert_eq!(r.get("v.component_orders"), Some(&Measure::Ints(vec![5, 5, 5])));
    assert_eq!(r.get("jennings.layer_dims"), Some(&Measure::Ints(vec![2, 1])));
    assert_eq!(r.get("exp_Gderived_equals_e"), Some(&Measure::Bool(true)));
}
