//! Property tests for the geometric core: invariants that must hold for
//! arbitrary pulse sequences and error values, not just the published
//! operating points.

use compulse::analysis::{sweep, ErrorAxis};
use compulse::families::{arcsinc, build_corpse, corpse_angles, offset_phases, CorpseIndices};
use compulse::pulse::{
    sequence_matrix, sequence_quaternion, ErrorModel, Family, Pulse, PulseSequence,
};
use compulse::rotor::Quaternion;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn pulses() -> impl Strategy<Value = Pulse> {
    (0.0..TAU, 0.0..TAU).prop_map(|(theta, phi)| Pulse::new(theta, phi).unwrap())
}

fn sequences() -> impl Strategy<Value = PulseSequence> {
    proptest::collection::vec(pulses(), 1..8).prop_map(|pulses| {
        let target = pulses[0];
        PulseSequence::new(pulses, target, Family::Plain).unwrap()
    })
}

/// Pulse lists that read the same forwards and backwards. Time-reversal
/// symmetry is one of the two structural reasons a sequence responds evenly
/// to off-resonance error; generic sequences do not.
fn palindromic_sequences() -> impl Strategy<Value = PulseSequence> {
    (
        proptest::collection::vec(pulses(), 1..5),
        any::<bool>(),
        pulses(),
    )
        .prop_map(|(half, odd_length, target)| {
            let mut all = half.clone();
            let skip = usize::from(odd_length);
            all.extend(half.iter().rev().skip(skip).cloned());
            PulseSequence::new(all, target, Family::Plain).unwrap()
        })
}

/// Pulse lists whose phases all sit on the {0, pi} lattice, the other
/// structural source of an even off-resonance response.
fn lattice_sequences() -> impl Strategy<Value = PulseSequence> {
    proptest::collection::vec((0.0..TAU, any::<bool>()), 1..8).prop_map(|specs| {
        let pulses: Vec<Pulse> = specs
            .iter()
            .map(|&(theta, flip)| Pulse::new(theta, if flip { PI } else { 0.0 }).unwrap())
            .collect();
        let target = pulses[0];
        PulseSequence::new(pulses, target, Family::Plain).unwrap()
    })
}

fn errors() -> impl Strategy<Value = ErrorModel> {
    (-0.8..0.8, -0.9..1.0).prop_map(|(f, g)| ErrorModel::new(f, g).unwrap())
}

proptest! {
    #[test]
    fn products_stay_normalized(seq in sequences(), e in errors()) {
        let q = sequence_quaternion(&seq, e);
        prop_assert!((q.norm_squared() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn matrix_and_quaternion_paths_agree(seq in sequences(), e in errors()) {
        let q = sequence_quaternion(&seq, e);
        let m = sequence_matrix(&seq, e);
        prop_assert!(q.fidelity(m.to_quaternion()) >= 1.0 - 1e-12);
        prop_assert!(m.orthogonality_defect() <= 1e-12);
        prop_assert!((m.determinant() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn matrix_round_trip_preserves_the_rotor(seq in sequences(), e in errors()) {
        let q = sequence_quaternion(&seq, e);
        prop_assert!(q.to_matrix().to_quaternion().fidelity(q) >= 1.0 - 1e-12);
    }

    #[test]
    fn negated_rotor_is_the_same_rotation(seq in sequences(), e in errors()) {
        let q = sequence_quaternion(&seq, e);
        let negated = Quaternion { s: -q.s, v: [-q.v[0], -q.v[1], -q.v[2]] };
        prop_assert!(q.fidelity(negated) >= 1.0 - 1e-12);
    }

    #[test]
    fn palindromes_respond_evenly_to_off_resonance(
        seq in palindromic_sequences(),
        f in -0.9..0.9f64,
        g in -0.9..1.0f64,
    ) {
        let plus = seq.fidelity_at(ErrorModel::new(f, g).unwrap());
        let minus = seq.fidelity_at(ErrorModel::new(-f, g).unwrap());
        prop_assert!((plus - minus).abs() <= 1e-12, "{plus} vs {minus}");
    }

    #[test]
    fn half_turn_phase_lattices_respond_evenly_to_off_resonance(
        seq in lattice_sequences(),
        f in -0.9..0.9f64,
        g in -0.9..1.0f64,
    ) {
        let plus = seq.fidelity_at(ErrorModel::new(f, g).unwrap());
        let minus = seq.fidelity_at(ErrorModel::new(-f, g).unwrap());
        prop_assert!((plus - minus).abs() <= 1e-12, "{plus} vs {minus}");
    }

    #[test]
    fn phase_offsets_preserve_fidelity(
        seq in sequences(),
        delta in 0.0..TAU,
        e in errors(),
    ) {
        let shifted = offset_phases(&seq, delta);
        prop_assert!((shifted.fidelity_at(e) - seq.fidelity_at(e)).abs() <= 1e-12);
    }

    #[test]
    fn arcsinc_inverts_sinc(y in 0.0..0.999f64) {
        let x = arcsinc(y).unwrap();
        prop_assert!(x > 0.0 && x <= std::f64::consts::PI + 1e-12);
        prop_assert!((x.sin() / x - y).abs() <= 1e-10);
    }

    #[test]
    fn corpse_triples_compose_to_the_target(
        theta in 0.0..TAU,
        n1 in 0..3i32,
        n2 in 1..3i32,
        n3 in 0..3i32,
    ) {
        let idx = CorpseIndices::new(n1, n2, n3);
        let a = corpse_angles(theta, idx).unwrap();
        // signed sum matches the target angle modulo full turns
        let residue = (a[0] - a[1] + a[2] - theta).rem_euclid(TAU);
        prop_assert!(residue.min(TAU - residue) <= 1e-9);
        // the builder asserts unit fidelity at zero error internally
        build_corpse(theta, idx).unwrap();
    }

    #[test]
    fn sweeps_cover_the_requested_range(
        seq in sequences(),
        bounds in (-1.0..1.0f64, -1.0..1.0f64),
        count in 2..40usize,
    ) {
        let (a, b) = bounds;
        prop_assume!((a - b).abs() > 1e-6);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let result = sweep(&seq, ErrorAxis::F, lo, hi, count).unwrap();
        prop_assert_eq!(result.samples.len(), count);
        prop_assert_eq!(result.samples[0].0, lo);
        prop_assert!((result.samples[count - 1].0 - hi).abs() <= 1e-12);
        for pair in result.samples.windows(2) {
            prop_assert!(pair[1].0 > pair[0].0);
        }
        for &(_, fidelity) in &result.samples {
            prop_assert!((0.0..=1.0).contains(&fidelity));
        }
    }
}
