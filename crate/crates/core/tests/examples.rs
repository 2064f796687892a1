//! Worked examples for each module, checked against the dense oracle.

use mlco::cost::CostModel;
use mlco::ir::io::{read_circuit, write_circuit};
use mlco::ir::{commutes, CensusKey, Circuit, Gate, GateCensus, GateKind, GateSetLevel};
use mlco::oracle::{
    apply, basis_state, commutator, distance_up_to_phase, equivalent_up_to_phase, expm_hermitian,
    hamiltonian, identity, unitary_of, unitary_of_gate, EquivOptions, Mat,
};
use mlco::passes::rules::{cx_chain_merge, toffoli_pair_x_control};
use mlco::passes::{
    apply_rules, cancel_adjacent, decompose_deto, lower_to_logs, lower_vchain, optimize_logs,
    pipeline_mlco, replace_ccx_with_rccx, simplify_higs, vchain_decomposition, PassConfig,
    COMPOSED, REPLACED,
};
use mlco::pde::{
    build_block, build_one_step, build_source, build_wing, compose_steps, H2Order, PdeParams,
    StepOrder, WingStyle,
};
use mlco::report::{deto_predicted, reduction_ratio};
use num_complex::Complex64;

const TOL: f64 = 1e-10;

fn circ(n: usize, gates: Vec<Gate>) -> Circuit {
    let mut c = Circuit::new(n);
    c.extend(gates);
    c
}

fn max_abs(a: &Mat) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn same(a: &Circuit, b: &Circuit) -> bool {
    distance_up_to_phase(&unitary_of(a).unwrap(), &unitary_of(b).unwrap()) < TOL
}

fn census(pairs: &[(CensusKey, usize)]) -> GateCensus {
    GateCensus::from_counts(pairs.iter().copied())
}

fn source_row() -> GateCensus {
    use CensusKey::*;
    census(&[
        (Mcrz(5), 1),
        (Mcrz(4), 1),
        (Mcrz(3), 1),
        (Ccrz, 1),
        (Crz, 1),
        (Cx, 30),
    ])
}

fn p6() -> PdeParams {
    PdeParams::case_study(6).unwrap()
}

#[test]
fn gate_matrices() {
    let cx = unitary_of_gate(&Gate::cx(0, 1)).unwrap();
    let one = Complex64::new(1.0, 0.0);
    for (r, c) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        assert_eq!(cx[(r, c)], one);
    }
    assert!((cx.iter().map(|z| z.norm()).sum::<f64>() - 4.0).abs() < 1e-15);

    let rz0 = unitary_of_gate(&Gate::rz(0, 0.0)).unwrap();
    assert!(max_abs(&(rz0 - identity(2))) < 1e-15);

    let theta = 0.83;
    let ccrz = unitary_of_gate(&Gate::ccrz(0, 1, 2, theta)).unwrap();
    let mut want = identity(8);
    want[(6, 6)] = Complex64::from_polar(1.0, -theta / 2.0);
    want[(7, 7)] = Complex64::from_polar(1.0, theta / 2.0);
    assert!(max_abs(&(ccrz - want)) < 1e-15);
}

#[test]
fn commutation_examples_agree_with_matrices() {
    let cases = [
        (Gate::cx(0, 1), Gate::cx(0, 2)),
        (Gate::cx(0, 1), Gate::cx(1, 2)),
        (Gate::ccrz(0, 1, 5, 0.3), Gate::cx(2, 0)),
    ];
    for (a, b) in cases {
        let ua = unitary_of(&circ(6, vec![a.clone()])).unwrap();
        let ub = unitary_of(&circ(6, vec![b.clone()])).unwrap();
        let matrix_says = max_abs(&commutator(&ua, &ub)) < 1e-12;
        assert_eq!(commutes(&a, &b), matrix_says, "{a} / {b}");
    }
    assert!(commutes(&Gate::cx(0, 1), &Gate::cx(0, 2)));
    assert!(!commutes(&Gate::cx(0, 1), &Gate::cx(1, 2)));
    assert!(!commutes(&Gate::ccrz(0, 1, 5, 0.3), &Gate::cx(2, 0)));
}

#[test]
fn inverse_examples() {
    let h = circ(1, vec![Gate::h(0)]);
    assert_eq!(h.inverse(), h);
    let c = circ(2, vec![Gate::cx(0, 1), Gate::rz(1, 0.4)]);
    assert_eq!(c.inverse().gates(), &[Gate::rz(1, -0.4), Gate::cx(0, 1)]);
    let wing = build_wing(4, WingStyle::Spray, 6).unwrap();
    let mut both = wing.clone();
    both.append(&wing.inverse()).unwrap();
    assert!(max_abs(&(unitary_of(&both).unwrap() - identity(64))) < 1e-12);
}

#[test]
fn census_examples() {
    assert!(Circuit::new(4).census().is_empty());
    let src = build_one_step(&p6(), WingStyle::Stair, H2Order::Increasing).unwrap();
    assert_eq!(src.census(), source_row());
}

#[test]
fn conformance_examples() {
    let ccx = circ(3, vec![Gate::ccx(0, 1, 2)]);
    assert!(!ccx.conforms(&GateSetLevel::logs()));
    assert!(ccx.conforms(&GateSetLevel::migs()));
    let src = build_one_step(&p6(), WingStyle::Stair, H2Order::Increasing).unwrap();
    let mid = lower_vchain(&simplify_higs(&src, &PassConfig::default()).unwrap()).unwrap();
    assert!(mid.conforms(&GateSetLevel::migs()));
    assert!(!src.conforms(&GateSetLevel::migs()));
}

#[test]
fn file_examples() {
    let src = build_source(&p6(), 2, WingStyle::Stair, StepOrder::Alternate).unwrap();
    assert_eq!(read_circuit(&write_circuit(&src)).unwrap(), src);
    let oob = br#"{"num_qubits": 2, "num_ancillas": 0,
        "gates": [{"kind": "cx", "controls": [0], "target": 2}]}"#;
    assert!(read_circuit(oob).is_err());
    let no_angle = br#"{"num_qubits": 1, "num_ancillas": 0,
        "gates": [{"kind": "rz", "controls": [], "target": 0}]}"#;
    assert!(read_circuit(no_angle).is_err());
}

#[test]
fn wing_shapes() {
    let spray = build_wing(4, WingStyle::Spray, 6).unwrap();
    let top = 5;
    assert_eq!(spray.gates()[0], Gate::h(top));
    assert_eq!(spray.gates()[1], Gate::x(3));
    let cxs: Vec<&Gate> = spray
        .gates()
        .iter()
        .filter(|g| g.kind() == GateKind::Cx)
        .collect();
    assert_eq!(cxs.len(), 4);
    assert!(cxs.iter().all(|g| g.controls() == [top]));

    let stair = build_wing(4, WingStyle::Stair, 6).unwrap();
    let cxs: Vec<&Gate> = stair
        .gates()
        .iter()
        .filter(|g| g.kind() == GateKind::Cx)
        .collect();
    assert_eq!(cxs.len(), 4);
    assert_eq!(cxs[0], &Gate::cx(top, 3));
    for w in cxs[1..].windows(2) {
        assert_eq!(w[0].target(), w[1].controls()[0]);
    }
    for style in [WingStyle::Spray, WingStyle::Stair] {
        assert_eq!(build_wing(1, style, 6).unwrap().cx_count(), 1);
    }
}

#[test]
fn block_examples() {
    let p = p6();
    let h = hamiltonian(&p);
    let b1 = build_block(1, WingStyle::Stair, &p).unwrap();
    let want = expm_hermitian(&h.terms[1], p.tau * p.c / p.l).unwrap();
    assert!(distance_up_to_phase(&unitary_of(&b1).unwrap(), &want) < TOL);

    let b5 = build_block(5, WingStyle::Stair, &p).unwrap();
    assert_eq!(b5.census().get(CensusKey::Mcrz(5)), 1);

    let b = build_block(3, WingStyle::Spray, &p).unwrap();
    let zeroed: Vec<Gate> = b
        .gates()
        .iter()
        .map(|g| {
            if g.kind().is_rotation() {
                g.with_angle(0.0)
            } else {
                g.clone()
            }
        })
        .collect();
    let b = b.with_gates(zeroed);
    assert!(distance_up_to_phase(&unitary_of(&b).unwrap(), &identity(64)) < TOL);
}

#[test]
fn one_step_examples() {
    for n in 3..=8 {
        let p = PdeParams::case_study(n).unwrap();
        for style in [WingStyle::Spray, WingStyle::Stair] {
            let s = build_one_step(&p, style, H2Order::Increasing).unwrap();
            assert_eq!(s.cx_count(), n * (n - 1), "n={n} {style}");
        }
    }
    let p = PdeParams::case_study(5).unwrap();
    let inc = build_one_step(&p, WingStyle::Stair, H2Order::Increasing).unwrap();
    let dec = build_one_step(&p, WingStyle::Stair, H2Order::Decreasing).unwrap();
    assert!(same(&inc, &dec));
}

#[test]
fn compose_examples() {
    let p = p6();
    let run = pipeline_mlco(&p, 2, WingStyle::Stair, &PassConfig::default()).unwrap();
    use CensusKey::*;
    assert_eq!(
        run.stage(COMPOSED).unwrap().circuit.census(),
        census(&[(Ccrz, 8), (Ccx, 12), (Crz, 2), (Cx, 32)])
    );
    let one = build_one_step(&p, WingStyle::Stair, H2Order::Increasing).unwrap();
    assert_eq!(compose_steps(std::slice::from_ref(&one)).unwrap(), one);

    let p5 = PdeParams::case_study(5).unwrap();
    let alt = build_source(&p5, 2, WingStyle::Stair, StepOrder::Alternate).unwrap();
    let inc = build_source(
        &p5,
        2,
        WingStyle::Stair,
        StepOrder::Fixed(H2Order::Increasing),
    )
    .unwrap();
    assert!(same(&alt, &inc));
}

#[test]
fn cancellation_examples() {
    let cfg = PassConfig::default();
    let pair = circ(2, vec![Gate::cx(0, 1), Gate::cx(0, 1)]);
    assert!(cancel_adjacent(&pair, &cfg).is_empty());
    let through = circ(2, vec![Gate::cx(0, 1), Gate::rz(0, 0.7), Gate::cx(0, 1)]);
    let out = cancel_adjacent(&through, &cfg);
    assert_eq!(out.gates(), &[Gate::rz(0, 0.7)]);
    assert!(same(&out, &through));

    let src = build_one_step(&p6(), WingStyle::Stair, H2Order::Increasing).unwrap();
    let mut want = source_row();
    want = GateCensus::from_counts(
        want.iter()
            .map(|(k, v)| (k, if k == CensusKey::Cx { 14 } else { v })),
    );
    assert_eq!(simplify_higs(&src, &cfg).unwrap().census(), want);
}

#[test]
fn rule_examples() {
    let chain = cx_chain_merge().unwrap();
    assert_eq!(
        chain.pattern().gates(),
        &[Gate::cx(0, 1), Gate::cx(1, 2), Gate::cx(0, 1)]
    );
    assert_eq!(
        chain.replacement().gates(),
        &[Gate::cx(1, 2), Gate::cx(0, 2)]
    );
    assert!(same(chain.pattern(), chain.replacement()));

    let pair = toffoli_pair_x_control().unwrap();
    assert_eq!(pair.pattern().count_kind(GateKind::Ccx), 2);
    assert_eq!(pair.replacement().cx_count(), 1);
    assert!(same(pair.pattern(), pair.replacement()));

    let nothing = circ(3, vec![Gate::h(0), Gate::cx(1, 2)]);
    assert_eq!(
        apply_rules(&nothing, &[chain], &PassConfig::default()),
        nothing
    );
}

#[test]
fn vchain_examples() {
    let controls = [0, 1, 2, 3, 4];
    let g = Gate::controlled_rz(&controls, 5, 0.4);
    let gates = vchain_decomposition(&g, &[6, 7, 8]);
    let c = circ(9, gates.clone());
    assert_eq!(c.count_kind(GateKind::Ccx), 6);
    assert_eq!(c.count_kind(GateKind::Ccrz), 1);
    let mut src = Circuit::new(6);
    src.push(g);
    let lowered = Circuit::from_gates(9, 3, gates).unwrap();
    assert!(
        equivalent_up_to_phase(&src, &lowered, &EquivOptions::default())
            .unwrap()
            .equivalent
    );

    let g3 = Gate::controlled_rz(&[0, 1, 2], 3, -0.9);
    let gates = vchain_decomposition(&g3, &[4]);
    let c = circ(5, gates.clone());
    assert_eq!(
        (c.count_kind(GateKind::Ccx), c.count_kind(GateKind::Ccrz)),
        (2, 1)
    );
    let mut src = Circuit::new(4);
    src.push(g3);
    let lowered = Circuit::from_gates(5, 1, gates).unwrap();
    assert!(
        equivalent_up_to_phase(&src, &lowered, &EquivOptions::default())
            .unwrap()
            .equivalent
    );

    let src = build_one_step(&p6(), WingStyle::Stair, H2Order::Increasing).unwrap();
    let mid = lower_vchain(&simplify_higs(&src, &PassConfig::default()).unwrap()).unwrap();
    use CensusKey::*;
    assert_eq!(
        mid.census(),
        census(&[(Ccrz, 4), (Ccx, 12), (Crz, 1), (Cx, 14)])
    );
    assert_eq!(mid.num_qubits(), 9);
}

#[test]
fn rccx_examples() {
    let cfg = PassConfig::default();
    let run = pipeline_mlco(&p6(), 2, WingStyle::Stair, &cfg).unwrap();
    use CensusKey::*;
    assert_eq!(
        run.stage(REPLACED).unwrap().circuit.census(),
        census(&[(Ccrz, 8), (Rccx, 6), (Crz, 2), (Cx, 24)])
    );
    let lone = circ(3, vec![Gate::ccx(0, 1, 2), Gate::h(2)]);
    assert_eq!(replace_ccx_with_rccx(&lone, &cfg).unwrap(), lone);
}

#[test]
fn lowering_examples() {
    let cfg = PassConfig::default();
    let run = pipeline_mlco(&p6(), 2, WingStyle::Stair, &cfg).unwrap();
    let low = lower_to_logs(&run.stage(REPLACED).unwrap().circuit).unwrap();
    assert_eq!(low.cx_count(), 8 * 4 + 6 * 3 + 2 * 2 + 24);

    let ccx = circ(3, vec![Gate::ccx(0, 1, 2)]);
    let l = lower_to_logs(&ccx).unwrap();
    assert_eq!(l.cx_count(), 6);
    assert!(same(&ccx, &l));

    let zero = circ(3, vec![Gate::ccrz(0, 1, 2, 0.0)]);
    assert!(optimize_logs(&lower_to_logs(&zero).unwrap(), &cfg)
        .unwrap()
        .is_empty());

    let hh = circ(1, vec![Gate::h(0), Gate::h(0)]);
    assert!(optimize_logs(&hh, &cfg).unwrap().is_empty());
    assert!(optimize_logs(&low, &cfg).unwrap().cx_count() <= 78);
}

#[test]
fn pipeline_examples() {
    let cfg = PassConfig::default();
    let stair = pipeline_mlco(&p6(), 2, WingStyle::Stair, &cfg).unwrap();
    let spray = pipeline_mlco(&p6(), 2, WingStyle::Spray, &cfg).unwrap();
    assert!(stair.final_circuit().cx_count() <= 78);
    assert!(spray.final_circuit().cx_count() > stair.final_circuit().cx_count());
    let one = pipeline_mlco(&p6(), 1, WingStyle::Stair, &cfg).unwrap();
    use CensusKey::*;
    let simplified = one
        .stages
        .iter()
        .find(|s| s.name.ends_with("MiGS simplified"))
        .unwrap();
    assert_eq!(
        simplified.circuit.census(),
        census(&[(Ccrz, 4), (Ccx, 6), (Crz, 1), (Cx, 16)])
    );
}

#[test]
fn baseline_examples() {
    assert_eq!(CostModel.deto_step(6), 114);
    assert_eq!(CostModel.deto_step(8), 276);
    assert_eq!(deto_predicted(8, 1), Some(9 * 64 - 33 * 8 - 36));
    let p = PdeParams::case_study(5).unwrap();
    let src = build_one_step(&p, WingStyle::Stair, H2Order::Increasing).unwrap();
    let low = decompose_deto(&src).unwrap();
    assert!(low.conforms(&GateSetLevel::logs()));
    assert!(same(&src, &low));
}

#[test]
fn simulator_examples() {
    assert!(max_abs(&(unitary_of(&Circuit::new(3)).unwrap() - identity(8))) < 1e-15);
    let out = apply(&circ(1, vec![Gate::h(0)]), &basis_state(1, 0)).unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert!((out[0].re - r).abs() < 1e-15 && (out[1].re - r).abs() < 1e-15);

    let p = p6();
    let h = hamiltonian(&p);
    let step = build_one_step(&p, WingStyle::Stair, H2Order::Increasing).unwrap();
    let want = expm_hermitian(&h.h2, p.tau).unwrap() * expm_hermitian(&h.h1, p.tau).unwrap();
    assert!(distance_up_to_phase(&unitary_of(&step).unwrap(), &want) < TOL);

    let rx = circ(6, vec![Gate::rx(5, -2.0 * p.c * p.tau / p.l)]);
    let e1 = expm_hermitian(&h.h1, p.tau).unwrap();
    assert!(distance_up_to_phase(&unitary_of(&rx).unwrap(), &e1) < TOL);
    let back = &e1 * expm_hermitian(&h.h1, -p.tau).unwrap();
    assert!(max_abs(&(back - identity(64))) < 1e-12);
}

#[test]
fn equivalence_examples() {
    let c = build_one_step(
        &PdeParams::case_study(4).unwrap(),
        WingStyle::Stair,
        H2Order::Increasing,
    )
    .unwrap();
    let r = equivalent_up_to_phase(&c, &c, &EquivOptions::default()).unwrap();
    assert!(r.equivalent && r.max_deviation < 1e-14);
    let mut bad = c.clone();
    bad.push(Gate::x(0));
    assert!(
        !equivalent_up_to_phase(&c, &bad, &EquivOptions::default())
            .unwrap()
            .equivalent
    );

    let src = build_one_step(&p6(), WingStyle::Stair, H2Order::Increasing).unwrap();
    let hi = simplify_higs(&src, &PassConfig::default()).unwrap();
    let mid = lower_vchain(&hi).unwrap();
    assert!(
        equivalent_up_to_phase(&hi, &mid, &EquivOptions::default())
            .unwrap()
            .equivalent
    );
}

#[test]
fn reduction_examples() {
    assert!((reduction_ratio(37.5) - 0.632).abs() < 1e-3);
    assert_eq!(reduction_ratio(102.0), 0.0);
    assert!(reduction_ratio(39.0) >= 0.617);
}
