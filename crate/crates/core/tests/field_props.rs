//! Vector-calculus identities and structure-check cross-implications.

use proptest::prelude::*;

use darboux_core::field::{cross, curl, gradient, VectorField};
use darboux_core::monomial::{Monomial, Var};
use darboux_core::poly::Polynomial;
use darboux_core::ratio::Ratio;
use darboux_core::rational::{rat, rat_i, Rational};
use darboux_core::structure::{check_hamiltonian, check_metriplectic, check_nambu};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_spatial_monomial() -> impl Strategy<Value = Monomial> {
    (0u32..=2, 0u32..=2, 0u32..=2).prop_map(|(ex, ey, ez)| Monomial { ex, ey, ez, es: 0 })
}

fn arb_spatial_poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((arb_spatial_monomial(), arb_rational()), 0..6)
        .prop_map(Polynomial::from_terms)
}

fn arb_field() -> impl Strategy<Value = VectorField> {
    (arb_spatial_poly(), arb_spatial_poly(), arb_spatial_poly())
        .prop_filter_map("degenerate field", |(p, q, r)| {
            VectorField::new("random", [p, q, r]).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivation_is_a_derivation(f in arb_field(), g in arb_spatial_poly(), h in arb_spatial_poly()) {
        let lhs = f.derive(&(&g * &h));
        let rhs = &(&g * &f.derive(&h)) + &(&h * &f.derive(&g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivation_is_linear(f in arb_field(), g in arb_spatial_poly(), h in arb_spatial_poly(), c in arb_rational()) {
        let lhs = f.derive(&(&g.scale(&c) + &h));
        let rhs = &f.derive(&g).scale(&c) + &f.derive(&h);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn curl_of_gradient_vanishes(h in arb_spatial_poly()) {
        prop_assert!(curl(&gradient(&h)).is_zero());
    }

    #[test]
    fn divergence_of_gradient_cross_vanishes(a in arb_spatial_poly(), b in arb_spatial_poly()) {
        // div(grad a x grad b) = 0: the symbolic heart of the
        // last-multiplier criterion for bi-Hamiltonian structure
        let c = cross(&gradient(&a), &gradient(&b));
        let div = &(&c.0[0].diff(Var::X) + &c.0[1].diff(Var::Y)) + &c.0[2].diff(Var::Z);
        prop_assert!(div.is_zero());
    }

    #[test]
    fn cross_antisymmetry(a in arb_spatial_poly(), b in arb_spatial_poly()) {
        let ga = gradient(&a);
        let gb = gradient(&b);
        prop_assert_eq!(cross(&ga, &gb), cross(&gb, &ga).neg());
    }
}

/// The corpus bi-Hamiltonian splits: a passing Nambu check implies both
/// Hamiltonian forms `X = J1 x grad H2` with `J1 = (1/M) grad H1` and
/// `X = J2 x grad H1` with `J2 = -(1/M) grad H2`.
#[test]
fn nambu_implies_both_hamiltonian_splits() {
    let x = Polynomial::var(Var::X);
    let y = Polynomial::var(Var::Y);
    let z = Polynomial::var(Var::Z);
    // (w - 2v^2, 2uv, -2uw) with H1 = vw, H2 = u^2 + v^2 + w, M = 1
    let field = VectorField::new(
        "case5",
        [
            &z - &(&y * &y).scale(&rat_i(2)),
            (&x * &y).scale(&rat_i(2)),
            (&x * &z).scale(&rat_i(-2)),
        ],
    )
    .unwrap();
    let h1 = &y * &z;
    let h2 = &(&(&x * &x) + &(&y * &y)) + &z;
    let nambu = check_nambu(&field, &Ratio::one(), &h1, &h2).unwrap();
    assert!(nambu.pass());

    let rep = check_hamiltonian(&field, &gradient(&h1), &h2);
    assert!(rep.pass(), "J1 = grad H1 split");
    let rep = check_hamiltonian(&field, &gradient(&h2).neg(), &h1);
    assert!(rep.pass(), "J2 = -grad H2 split");

    // divergence-free Rabinovich: (vw, -uw, uv), H1 = (u^2+v^2)/2, H2 = (v^2+w^2)/2
    let field = VectorField::new("divfree", [&y * &z, -&(&x * &z), &x * &y]).unwrap();
    let h1 = (&(&x * &x) + &(&y * &y)).scale(&rat(1, 2));
    let h2 = (&(&y * &y) + &(&z * &z)).scale(&rat(1, 2));
    assert!(check_nambu(&field, &Ratio::one(), &h1, &h2).unwrap().pass());
    assert!(check_hamiltonian(&field, &gradient(&h1), &h2).pass());
    assert!(check_hamiltonian(&field, &gradient(&h2).neg(), &h1).pass());
}

/// A second-kind metriplectic claim with vanishing metric degenerates to the
/// Nambu check on the same data.
#[test]
fn metriplectic_with_zero_metric_is_nambu() {
    use darboux_core::structure::{ClaimKind, Generator, StructureSpec};
    let x = Polynomial::var(Var::X);
    let y = Polynomial::var(Var::Y);
    let z = Polynomial::var(Var::Z);
    let field = VectorField::new(
        "case5",
        [
            &z - &(&y * &y).scale(&rat_i(2)),
            (&x * &y).scale(&rat_i(2)),
            (&x * &z).scale(&rat_i(-2)),
        ],
    )
    .unwrap();
    let h1 = &y * &z;
    let h2 = &(&(&x * &x) + &(&y * &y)) + &z;
    let mut spec = StructureSpec::new(ClaimKind::Metriplectic2);
    spec.h1 = Some(h1.clone());
    spec.h2 = Some(h2.clone());
    spec.s_is = Some(Generator::H1);
    spec.m = Some(Ratio::one());
    spec.g = Some(std::array::from_fn(|_| {
        std::array::from_fn(|_| Ratio::zero())
    }));
    let rep = check_metriplectic(&field, &spec).unwrap();
    assert!(rep.pass());
    assert!(check_nambu(&field, &Ratio::one(), &h1, &h2).unwrap().pass());
}

/// Conformal family: J = f grad(H) solves the Jacobi identity for monomial
/// ratios f, on randomized instances.
#[test]
fn conformal_family_solves_jacobi() {
    use darboux_core::ratio::RatioVector;
    use darboux_core::structure::jacobi_residual_ratio;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let vars = [Var::X, Var::Y, Var::Z];
    for _ in 0..50 {
        // random polynomial H with a handful of terms
        let mut h = Polynomial::zero();
        for _ in 0..rng.gen_range(1..5) {
            let m = Monomial {
                ex: rng.gen_range(0..3),
                ey: rng.gen_range(0..3),
                ez: rng.gen_range(0..3),
                es: 0,
            };
            let c = rat(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=3));
            h = &h + &Polynomial::term(m, c);
        }
        if h.is_zero() {
            continue;
        }
        // monomial ratio f = c * m1 / m2
        let mono = |rng: &mut rand_chacha::ChaCha8Rng| {
            let v = vars[rng.gen_range(0..3)];
            Polynomial::term(Monomial::var(v).pow(rng.gen_range(1..3)), rat_i(1))
        };
        let f = Ratio::new(mono(&mut rng), mono(&mut rng)).unwrap();
        let j = RatioVector::from_polys(gradient(&h).0.clone()).scale(&f);
        let (residual, _) = jacobi_residual_ratio(&j);
        assert!(
            residual.is_zero(),
            "J = f grad H must solve Jacobi; H = {}, f = {}",
            h.render_canonical(),
            f.render(&darboux_core::poly::canonical_names()),
        );
    }
}
