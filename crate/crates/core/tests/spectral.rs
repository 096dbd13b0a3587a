use fpdim_core::field::Field;
use fpdim_core::formulas::{
    cycle_matrix, level_one_root, long_cycle_radius, poly_brick_check, poly_ext1, poly_hom_dim, two_cycle_radius,
    FactoredPoly, ROOT_WIDTH,
};
use fpdim_core::spectral::{
    characteristic_polynomial, largest_real_root, spectral_radius, spectral_radius_with, Method, NonnegIntMatrix,
};
use fpdim_core::{Rational, F5};
use proptest::prelude::*;

fn square(max_n: usize, max_entry: i64) -> impl Strategy<Value = NonnegIntMatrix> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0..=max_entry, n * n).prop_map(move |e| {
            let rows: Vec<Vec<i64>> = e.chunks(n).map(|r| r.to_vec()).collect();
            NonnegIntMatrix::from_rows(&rows).unwrap()
        })
    })
}

/// Valid `(root, multiplicity)` lists with integer roots below 7.
fn factored() -> impl Strategy<Value = FactoredPoly<f64>> {
    (1u32..7, prop::collection::vec(any::<bool>(), 7), prop::collection::vec(1u32..4, 8)).prop_map(
        |(top, keep, mult)| {
            let mut factors: Vec<(f64, u32)> = (0..top)
                .filter(|&n| keep[n as usize])
                .map(|n| (n as f64, mult[n as usize]))
                .collect();
            factors.push((top as f64, mult[7]));
            FactoredPoly::new(factors).unwrap()
        },
    )
}

fn eval_exact(f: &FactoredPoly<f64>, x: &Rational) -> Rational {
    f.factors().iter().fold(Rational::from_integer(1.into()), |acc, &(n, r)| {
        let d = x - Rational::from_integer((n as i64).into());
        (0..r).fold(acc, |a, _| a * &d)
    })
}

/// Exact check that the root of `(x - m) f(x) = 1` lies below the root of
/// `f(x) = 1`: bisect for a rational `a` above the top root of `f` with
/// `f(a) < 1 < (a - m) f(a)`. Both sides increase there.
fn shifted_root_is_smaller(f: &FactoredPoly<f64>, m: u32) -> bool {
    let one = Rational::from_integer(1.into());
    let m = Rational::from_integer(i64::from(m).into());
    let mut lo = Rational::from_integer((f.largest_root() as i64).into());
    let mut hi = &lo + &one;
    for _ in 0..400 {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        let v = eval_exact(f, &mid);
        if v < one {
            if (&mid - &m) * &v > one {
                return true;
            }
            lo = mid;
        } else {
            hi = mid;
        }
    }
    false
}

proptest! {
    #[test]
    fn radius_is_bracketed(c in square(6, 5)) {
        let r = spectral_radius(&c, 1e-9).unwrap().value;
        let sums = c.row_sums();
        let lo = *sums.iter().min().unwrap() as f64;
        let hi = *sums.iter().max().unwrap() as f64;
        prop_assert!(lo - 1e-8 <= r && r <= hi + 1e-8);
        prop_assert!(r >= c.max_diagonal() as f64 - 1e-8);
    }

    #[test]
    fn iteration_agrees_with_characteristic_polynomial(c in square(8, 5)) {
        let tol = 1e-9;
        let it = spectral_radius_with(&c, tol, false).unwrap().value;
        let exact = largest_real_root(&characteristic_polynomial(&c), 1e-12);
        prop_assert!((it - exact).abs() <= 2.0 * tol, "{} vs {}", it, exact);
    }

    #[test]
    fn adding_a_smaller_root_lowers_the_radius(f in factored(), m in 0u32..7) {
        let top = f.largest_root() as u32;
        prop_assume!(m < top);
        let g = f.times_linear(m as f64).unwrap();
        prop_assert!(level_one_root(&g) <= level_one_root(&f) + ROOT_WIDTH);
        prop_assert!(shifted_root_is_smaller(&f, m));
    }

    #[test]
    fn repeating_the_largest_root(f in factored()) {
        let g = f.times_linear(f.largest_root()).unwrap();
        let (a, b) = (level_one_root(&f), level_one_root(&g));
        if f.factors().len() > 1 {
            prop_assert!(b > a);
        } else {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn root_is_the_radius_of_the_cycle_matrix(f in factored()) {
        let diagonal: Vec<u64> = f
            .factors()
            .iter()
            .flat_map(|&(n, r)| std::iter::repeat(n as u64).take(r as usize))
            .collect();
        let rho = spectral_radius(&cycle_matrix(&diagonal), 1e-11).unwrap().value;
        prop_assert!((rho - level_one_root(&f)).abs() < 1e-9);
    }

    #[test]
    fn poly_ext_symmetry_and_shift(l in prop::collection::vec(0u32..5, 1..4), m in prop::collection::vec(0u32..5, 3), t in prop::collection::vec(0u32..5, 3)) {
        let r = l.len();
        let lam: Vec<F5> = l.iter().map(|&v| F5::new(v)).collect();
        let mu: Vec<F5> = m[..r].iter().map(|&v| F5::new(v)).collect();
        let shift = |v: &[F5]| -> Vec<F5> { v.iter().zip(&t).map(|(a, &b)| *a + F5::new(b)).collect() };
        let e = poly_ext1(&lam, &mu).unwrap();
        prop_assert_eq!(e, poly_ext1(&mu, &lam).unwrap());
        prop_assert_eq!(e, poly_ext1(&shift(&lam), &shift(&mu)).unwrap());
        prop_assert_eq!(e, if lam == mu { r } else { 0 });
        prop_assert_eq!(poly_hom_dim(&lam, &mu).unwrap(), usize::from(lam == mu));
    }

    #[test]
    fn poly_ext_over_the_rationals(l in prop::collection::vec(-3i64..4, 1..4), m in prop::collection::vec(-3i64..4, 3)) {
        let r = l.len();
        let lam: Vec<Rational> = l.iter().map(|&v| Rational::from_i64(v)).collect();
        let mu: Vec<Rational> = m[..r].iter().map(|&v| Rational::from_i64(v)).collect();
        prop_assert_eq!(poly_ext1(&lam, &mu).unwrap(), if lam == mu { r } else { 0 });
        prop_assert_eq!(poly_ext1(&lam, &lam).unwrap(), r);
    }
}

#[test]
fn cyclic_permutations_have_radius_one() {
    for n in 2..=12usize {
        // relabel the cycle 0 -> 1 -> ... by multiplication with a unit mod n
        let k = (2..n).find(|k| (1..=*k).all(|d| k % d != 0 || n % d != 0 || d == 1)).unwrap_or(1);
        let mut c = NonnegIntMatrix::zeros(n);
        for i in 0..n {
            c.set((i * k) % n, ((i + 1) * k) % n, 1);
        }
        let r = spectral_radius::<f64>(&c, 1e-12).unwrap();
        assert_eq!(r.method, Method::Iterative);
        assert!((r.value - 1.0).abs() < 1e-12, "n = {n}: {}", r.value);
    }
}

#[test]
fn known_radii() {
    let m = |rows: &[Vec<i64>]| NonnegIntMatrix::from_rows(rows).unwrap();
    let silver = spectral_radius(&m(&[vec![2, 1], vec![1, 0]]), 1e-9).unwrap().value;
    assert!((silver - (1.0 + 2f64.sqrt())).abs() < 1e-9);
    let tri = spectral_radius(&m(&[vec![3, 1, 1], vec![0, 1, 1], vec![0, 0, 0]]), 1e-9).unwrap();
    assert_eq!((tri.value, tri.method), (3.0, Method::Exact));
}

fn rho(factors: &[(f64, u32)]) -> f64 {
    level_one_root(&FactoredPoly::new(factors.to_vec()).unwrap())
}

#[test]
fn ordering_examples() {
    assert!((rho(&[(0.0, 1), (2.0, 1)]) - (1.0 + 2f64.sqrt())).abs() < 1e-10);
    let f1 = rho(&[(0.0, 1), (1.0, 1), (2.0, 1)]);
    let f = rho(&[(0.0, 1), (2.0, 1)]);
    let f2 = rho(&[(0.0, 1), (2.0, 2)]);
    assert!(f1 < f && f < f2);
    assert!(rho(&[(0.0, 1), (1.0, 1), (2.0, 2)]) > rho(&[(0.0, 1), (2.0, 1)]));
    assert!(rho(&[(0.0, 1), (1.0, 2), (3.0, 2)]) < rho(&[(0.0, 1), (3.0, 1)]));
    let third = rho(&[(0.0, 1), (1.0, 1), (2.0, 1)]);
    assert!(third > 2.0 && third <= 3.0);
}

#[test]
fn shifted_root_below_float_resolution() {
    let f = FactoredPoly::new(vec![(0.0, 1), (1.0, 2), (2.0, 3), (3.0, 3), (4.0, 3), (6.0, 1)]).unwrap();
    assert!(shifted_root_is_smaller(&f, 5));
    let g = f.times_linear(5.0).unwrap();
    assert!(level_one_root(&g) <= level_one_root(&f) + ROOT_WIDTH);
}

#[test]
fn closed_forms() {
    for n in 1..=6u32 {
        let c2: f64 = two_cycle_radius(n).unwrap();
        let nf = n as f64;
        assert!(nf <= c2 && c2 < nf + 1.0);
        let mut last = 0.0;
        for s in 1..=4 {
            let c3: f64 = long_cycle_radius(n, s).unwrap();
            assert!(nf <= c3 && c3 < nf + 1.0);
            assert!(c3 > last);
            last = c3;
        }
        assert!((long_cycle_radius::<f64>(n, 1).unwrap() - c2).abs() < 1e-10);
    }
    assert!(long_cycle_radius::<f64>(2, 2).unwrap() > two_cycle_radius::<f64>(2).unwrap());
    assert!(two_cycle_radius::<f64>(0).is_err());
    let single: f32 = two_cycle_radius(2).unwrap();
    assert!((single - (1.0 + 2f32.sqrt())).abs() < 1e-5);
}

#[test]
fn commuting_pairs_of_small_matrices() {
    use fpdim_core::matrix::all_matrices;
    use fpdim_core::F2;
    let mats = all_matrices::<F2>(2, 2).unwrap();
    let mut bricks = 0;
    for a in &mats {
        for b in &mats {
            if a.mul(b) != b.mul(a) {
                assert!(poly_brick_check(&[a.clone(), b.clone()]).is_err());
                continue;
            }
            if poly_brick_check(&[a.clone(), b.clone()]).unwrap().is_brick {
                bricks += 1;
            }
        }
    }
    assert_eq!(bricks, 0);
    let one = |v| fpdim_core::Matrix::from_rows(&[vec![F2::new(v)]]).unwrap();
    assert!(poly_brick_check(&[one(0), one(1)]).unwrap().is_brick);
}
