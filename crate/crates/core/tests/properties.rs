use proptest::prelude::*;

use tdo_core::circuit::Gate;
use tdo_core::{emit, parse, Circuit, GateKind, RingScalar};

fn scalar() -> impl Strategy<Value = RingScalar> {
    (prop::array::uniform4(-20i64..=20), 0u32..6).prop_map(|(c, k)| RingScalar::from_ints(c, k))
}

fn gate(width: usize) -> impl Strategy<Value = Gate> {
    let kinds: Vec<GateKind> = GateKind::ALL
        .into_iter()
        .filter(|k| k.arity() <= width)
        .collect();
    (prop::sample::select(kinds), Just(width))
        .prop_flat_map(|(k, w)| {
            (
                Just(k),
                prop::sample::subsequence((0..w).collect::<Vec<_>>(), k.arity()),
            )
        })
        .prop_flat_map(|(k, qs)| (Just(k), Just(qs.clone()).prop_shuffle()))
        .prop_map(|(k, qs)| Gate::new(k, &qs).unwrap())
}

fn any_circuit() -> impl Strategy<Value = Circuit> {
    (1usize..=4, 0usize..=2).prop_flat_map(|(n, a)| {
        prop::collection::vec(gate(n + a), 0..25)
            .prop_map(move |gs| Circuit::with_gates(n, a, gs).unwrap())
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RingScalar::zero());
        prop_assert_eq!(&a * &RingScalar::one(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn canonical_form_is_unique(c in prop::array::uniform4(-20i64..=20), k in 0u32..6, extra in 0u32..4) {
        // Scaling numerator and denominator by √2^extra must not change the value.
        let a = RingScalar::from_ints(c, k);
        let mut scaled = a.clone();
        for _ in 0..extra {
            scaled = &scaled * &RingScalar::sqrt2();
        }
        let b = &scaled * &RingScalar::inv_sqrt2_pow(extra);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(RingScalar::new(a.coeffs().clone(), a.sqrt2_exponent()), a.clone());
    }

    #[test]
    fn norm_is_nonnegative(a in scalar()) {
        let n = a.norm_sqr();
        prop_assert!(n.signum() >= 0);
        prop_assert_eq!(n.is_zero(), a.is_zero());
        prop_assert_eq!((&a * &a.conj()).to_real().unwrap(), n);
    }

    #[test]
    fn metric_invariants(c in any_circuit()) {
        let m = c.metrics();
        prop_assert!(m.t_depth_scheduled <= m.t_depth_as_written);
        prop_assert!(m.t_depth_as_written <= m.t_count);
        prop_assert!(m.depth <= m.gate_count);
        let d = c.dagger();
        prop_assert_eq!(d.t_count(), m.t_count);
        prop_assert_eq!(d.t_depth_scheduled(), m.t_depth_scheduled);
        prop_assert_eq!(d.depth(), m.depth);
        prop_assert_eq!(d.dagger(), c);
    }

    #[test]
    fn concatenation_depth_is_subadditive(a in any_circuit(), b in any_circuit()) {
        let b = Circuit::with_gates(a.n_main(), a.n_anc(), b.gates().iter().filter(|g| g.qubits().iter().all(|&q| q < a.width())).cloned()).unwrap();
        let mut ab = a.clone();
        ab.append(&b).unwrap();
        prop_assert!(ab.depth() <= a.depth() + b.depth());
        prop_assert!(ab.t_depth_scheduled() <= a.t_depth_scheduled() + b.t_depth_scheduled());
    }

    #[test]
    fn swapping_disjoint_neighbours_keeps_metrics(c in any_circuit(), i in any::<prop::sample::Index>()) {
        prop_assume!(c.gate_count() >= 2);
        let i = i.index(c.gate_count() - 1);
        let (g, h) = (&c.gates()[i], &c.gates()[i + 1]);
        prop_assume!(g.qubits().iter().all(|q| !h.qubits().contains(q)));
        let mut gates = c.gates().to_vec();
        gates.swap(i, i + 1);
        let s = Circuit::with_gates(c.n_main(), c.n_anc(), gates).unwrap();
        prop_assert_eq!(s.depth(), c.depth());
        prop_assert_eq!(s.t_depth_scheduled(), c.t_depth_scheduled());
    }

    #[test]
    fn text_round_trip(c in any_circuit()) {
        prop_assert_eq!(parse(&emit(&c)).unwrap(), c);
    }
}
