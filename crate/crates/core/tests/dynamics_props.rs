use glens::dynamics::{
    lens_to_machine, machine_to_lens, run_via_lenses, tensor_machines, wire, MooreMachine,
};
use glens::finset::product;
use glens::instances::{ClassicLensMor, ClassicLensOb};
use proptest::prelude::*;

#[test]
fn machines_and_machine_lenses_are_in_bijection() {
    for s in 0..=2usize {
        for a in 0..=2usize {
            for b in 0..=2usize {
                let lenses = ClassicLensMor::all_between(ClassicLensOb::new(s, s), ClassicLensOb::new(b, a));
                let expected = b.pow(s as u32) * s.pow((s * a) as u32);
                assert_eq!(lenses.len(), expected, "S={s} A={a} B={b}");
                let mut machines: Vec<MooreMachine> =
                    lenses.iter().map(|l| lens_to_machine(l).unwrap()).collect();
                for (l, m) in lenses.iter().zip(&machines) {
                    assert_eq!(machine_to_lens(m), *l);
                }
                machines.sort_by_key(|m| (m.readout().table().to_vec(), m.update().table().to_vec()));
                machines.dedup();
                assert_eq!(machines.len(), expected);
            }
        }
    }
}

#[test]
fn wiring_by_identity_changes_nothing() {
    for lens in ClassicLensMor::all_between(ClassicLensOb::new(2, 2), ClassicLensOb::new(2, 2)) {
        let m = lens_to_machine(&lens).unwrap();
        assert_eq!(wire(&m, &ClassicLensMor::identity(m.interface())).unwrap(), m);
    }
}

fn machine(max: usize) -> impl Strategy<Value = MooreMachine> {
    (1..=max, 1..=max, 1..=max).prop_flat_map(|(s, a, b)| {
        (
            proptest::collection::vec(0..b, s),
            proptest::collection::vec(0..s, a * s),
        )
            .prop_map(move |(r, u)| {
                MooreMachine::from_fns(s, a, b, |i| r[i], |x, y| u[x * s + y]).unwrap()
            })
    })
}

fn machine_and_word(max: usize) -> impl Strategy<Value = (MooreMachine, usize, Vec<usize>)> {
    machine(max).prop_flat_map(|m| {
        let (s, a) = (m.states(), m.inputs());
        (Just(m), 0..s, proptest::collection::vec(0..a, 0..8))
    })
}

proptest! {
    #[test]
    fn simulator_agrees_with_lens_composition((m, s0, word) in machine_and_word(3)) {
        let direct = m.run(s0, &word).unwrap();
        prop_assert_eq!(direct.outputs.len(), word.len() + 1);
        prop_assert_eq!(run_via_lenses(&m, s0, &word).unwrap(), direct);
    }

    #[test]
    fn tensor_trace_projects_to_factor_traces(
        (m1, s1, w1) in machine_and_word(3),
        (m2, s2, w2) in machine_and_word(3),
    ) {
        let n = w1.len().min(w2.len());
        let (w1, w2) = (&w1[..n], &w2[..n]);
        let t = tensor_machines(&m1, &m2);
        prop_assert_eq!(machine_to_lens(&t), machine_to_lens(&m1).tensor(&machine_to_lens(&m2)));
        let inputs = product(m1.inputs(), m2.inputs());
        let states = product(m1.states(), m2.states());
        let outputs = product(m1.outputs(), m2.outputs());
        let word: Vec<usize> = w1.iter().zip(w2).map(|(&a, &b)| inputs.pair(a, b)).collect();
        let joint = t.run(states.pair(s1, s2), &word).unwrap();
        let (left, right) = (m1.run(s1, w1).unwrap(), m2.run(s2, w2).unwrap());
        let projected: Vec<(usize, usize)> = joint.outputs.iter().map(|&o| outputs.unpair(o)).collect();
        let zipped: Vec<(usize, usize)> = left.outputs.iter().copied().zip(right.outputs.iter().copied()).collect();
        prop_assert_eq!(projected, zipped);
        prop_assert_eq!(states.unpair(joint.final_state), (left.final_state, right.final_state));
    }

    #[test]
    fn machine_json_round_trips(m in machine(3)) {
        let json = serde_json::to_string(&m).unwrap();
        prop_assert_eq!(serde_json::from_str::<MooreMachine>(&json).unwrap(), m);
    }
}
