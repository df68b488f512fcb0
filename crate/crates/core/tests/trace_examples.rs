use charvar::ring::{cheb_omega, Polynomial, Var};
use charvar::trace_engine::trace_triple_cf;

fn t() -> Polynomial {
    Polynomial::var(Var::T)
}

fn r() -> Polynomial {
    Polynomial::var(Var::R)
}

fn c(n: i64) -> Polynomial {
    Polynomial::constant(n)
}

#[test]
fn odd_twist_closed_forms() {
    let t2 = &t() * &t();
    let a = &t2 - &r();
    for h in 0..=6i64 {
        let tt = trace_triple_cf(&[2 * h + 1]).unwrap();
        assert_eq!(tt.zdot, &a - &c(2));
        let w = cheb_omega(h, &a);
        assert_eq!(tt.zgrave, &(&(&r() - &c(2)) * &(&(&r() + &c(2)) - &t2)) * &(&w * &w), "h={h}");
        let d = cheb_omega(h + 1, &a) - w;
        assert_eq!(tt.z, &(&r() - &c(2)) * &(&d * &d), "h={h}");
    }
}

#[test]
fn double_twist_two_two() {
    let t2 = &t() * &t();
    let tt = trace_triple_cf(&[2, 2]).unwrap();
    let rm1 = &r() - &c(1);
    assert_eq!(tt.zgrave, &(&(&t2 - &r()) - &c(2)) * &(&rm1 * &rm1));
    let f = &(&r() * &r()) + &(&rm1 * &(&c(1) - &t2));
    assert_eq!(tt.z, &(&r() - &c(2)) * &(&f * &f));
}

#[test]
fn double_twist_three_two() {
    let t2 = &t() * &t();
    let r2 = &r() * &r();
    let tt = trace_triple_cf(&[3, 2]).unwrap();
    let e1 = &(&r().scale(&3.into()) - &(&r2 * &r())) + &(&t2 * &(&(&r() - &c(1)) * &(&r() - &c(1))));
    assert_eq!(tt.zdot, &e1 - &c(2));
    assert_eq!(tt.zgrave, &(&r2 * &(&r() - &c(2))) * &(&(&r() + &c(2)) - &t2));
    let f = &(&(&r2 * &r()) + &(&(&c(1) - &t2) * &r2)) + &(&(&(&t2 - &c(2)) * &r()) - &c(1));
    assert_eq!(tt.z, &(&r() - &c(2)) * &(&f * &f));
}
