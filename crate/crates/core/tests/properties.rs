//! Randomized properties over the unit square.

use fieq_core::algebra::nabla;
use fieq_core::connectives::{Negation, TConorm, TNorm};
use fieq_core::constructors::{r_implication_numeric, sn_implication};
use fieq_core::implications::{named, registry, NAMED_IDS};
use proptest::prelude::*;

fn unit() -> impl Strategy<Value = f64> {
    prop_oneof![
        3 => 0.0f64..=1.0,
        1 => Just(0.0f64),
        1 => Just(1.0f64),
        1 => Just(0.5f64),
    ]
}

proptest! {
    // Every registry implication stays inside the unit interval and respects
    // the forced corner values.
    #[test]
    fn registry_maps_into_unit_interval(idx in 0usize..NAMED_IDS.len(), x in unit(), y in unit()) {
        let i = named::<f64>(NAMED_IDS[idx]).unwrap();
        let v = i.eval(x, y);
        prop_assert!((0.0..=1.0).contains(&v), "{} at ({x},{y}) gave {v}", i.name());
        prop_assert_eq!(i.eval(1.0, 0.0), 0.0);
        prop_assert_eq!(i.eval(0.0, 0.0), 1.0);
    }

    // The bisection residuum of the product t-norm agrees with Goguen at
    // arbitrary points, not just on grids.
    #[test]
    fn numeric_residuum_matches_goguen_at_random_points(x in unit(), y in unit()) {
        let t = TNorm::<f64>::builtin("product").unwrap();
        let numeric = r_implication_numeric(&t, 1e-10).unwrap();
        let goguen = named::<f64>("GG").unwrap();
        let diff = (numeric.eval(x, y) - goguen.eval(x, y)).abs();
        prop_assert!(diff <= 1e-10, "({x},{y}): {diff}");
    }

    // De Morgan duality for the registered dual pairs under 1-x.
    #[test]
    fn duality_at_random_points(x in unit(), y in unit()) {
        for (tn, sn) in [("min", "max"), ("product", "prob_sum"), ("lukasiewicz", "lukasiewicz"), ("drastic", "drastic")] {
            let t = TNorm::<f64>::builtin(tn).unwrap();
            let s = TConorm::<f64>::builtin(sn).unwrap();
            let dual = 1.0 - t.eval(1.0 - x, 1.0 - y);
            prop_assert!((s.eval(x, y) - dual).abs() <= 1e-15, "{tn}/{sn} at ({x},{y})");
        }
    }

    // ▽ composition of registry members evaluates inside [0,1] and hits the
    // implication corners.
    #[test]
    fn nabla_stays_in_unit_interval(a in 0usize..NAMED_IDS.len(), b in 0usize..NAMED_IDS.len(), x in unit(), y in unit()) {
        let i = named::<f64>(NAMED_IDS[a]).unwrap();
        let j = named::<f64>(NAMED_IDS[b]).unwrap();
        let c = nabla(&i, &j).unwrap();
        let v = c.eval(x, y);
        prop_assert!((0.0..=1.0).contains(&v));
        prop_assert_eq!(c.eval(1.0, 0.0), 0.0);
        prop_assert_eq!(c.eval(0.0, 0.0), 1.0);
        prop_assert_eq!(c.eval(1.0, 1.0), 1.0);
    }

    // Monotonicity of the (S,N) construction in its second argument at
    // random sample pairs.
    #[test]
    fn sn_isotone_in_consequent(x in unit(), y1 in unit(), y2 in unit()) {
        let s = TConorm::<f64>::builtin("prob_sum").unwrap();
        let n = Negation::<f64>::builtin("standard").unwrap();
        let i = sn_implication(&s, &n).unwrap();
        let (lo, hi) = if y1 <= y2 { (y1, y2) } else { (y2, y1) };
        prop_assert!(i.eval(x, lo) <= i.eval(x, hi) + 1e-15);
    }

    // The equation's two sides agree for every registry member known to
    // satisfy it, at arbitrary points.
    #[test]
    fn ie_solutions_hold_pointwise(x in unit(), y in unit()) {
        for id in ["LK", "GD", "GG", "RS", "WB", "FD", "DP"] {
            let i = named::<f64>(id).unwrap();
            let rhs = i.eval(x, y);
            let lhs = i.eval(i.eval(y, x), rhs);
            prop_assert!((lhs - rhs).abs() <= 1e-12, "{id} at ({x},{y})");
        }
    }
}

#[test]
fn registry_has_ten_members() {
    assert_eq!(registry::<f64>().len(), 10);
}
