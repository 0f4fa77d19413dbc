#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use jmap::ingest::ntu::{write_ntu_skeleton, NTU_JOINTS};
use jmap::ingest::{
    parse_csv, parse_json, parse_ntu_skeleton, synthesize, write_csv, write_json, Segment, SyntheticSpec, Waveform,
};
use jmap::Error;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

type Pose = [[f64; 3]; NTU_JOINTS];

fn random_track(r: &mut rand_chacha::ChaCha8Rng, frames: usize, step: f64) -> Vec<Pose> {
    let mut pose = [[0.0; 3]; NTU_JOINTS];
    for joint in pose.iter_mut() {
        for x in joint.iter_mut() {
            *x = r.random_range(-1.0..1.0);
        }
    }
    (0..frames)
        .map(|_| {
            for joint in pose.iter_mut() {
                for x in joint.iter_mut() {
                    *x += r.random_range(-step..step);
                }
            }
            pose
        })
        .collect()
}

/// Direct summation over frames, joints and axes.
fn track_energy(track: &[Pose]) -> f64 {
    let mut e = 0.0;
    for t in 1..track.len() {
        for v in 0..NTU_JOINTS {
            let mut s = 0.0;
            for c in 0..3 {
                let d = track[t][v][c] - track[t - 1][v][c];
                s += d * d;
            }
            e += s / 3.0;
        }
    }
    e
}

fn assert_track(seq: &jmap::SkeletonSequence, track: &[Pose]) {
    assert_eq!(
        (seq.channels(), seq.frames(), seq.joints()),
        (3, track.len(), NTU_JOINTS)
    );
    for (t, pose) in track.iter().enumerate() {
        for (v, xyz) in pose.iter().enumerate() {
            for (c, &x) in xyz.iter().enumerate() {
                assert_eq!(seq.data()[[c, t, v]], x);
            }
        }
    }
}

#[test]
fn ntu_keeps_the_most_energetic_body() {
    let mut r = rng(21);
    for step in [0.01, 0.2] {
        let a = random_track(&mut r, 12, step);
        let b = random_track(&mut r, 12, 0.05);
        let winner = if track_energy(&a) > track_energy(&b) { &a } else { &b };
        for order in [false, true] {
            let frames: Vec<Vec<(&str, Pose)>> = (0..12)
                .map(|t| {
                    let mut bodies = vec![("72057594037931101", a[t]), ("72057594037931102", b[t])];
                    if order {
                        bodies.reverse();
                    }
                    bodies
                })
                .collect();
            let seq = parse_ntu_skeleton(&write_ntu_skeleton(&frames)).unwrap();
            assert_track(&seq, winner);
        }
    }
}

#[test]
fn ntu_drops_frames_without_the_body() {
    let mut r = rng(4);
    let a = random_track(&mut r, 6, 0.1);
    let mut frames: Vec<Vec<(&str, Pose)>> = a.iter().map(|p| vec![("7", *p)]).collect();
    frames.insert(2, vec![]);
    frames.push(vec![]);
    let seq = parse_ntu_skeleton(&write_ntu_skeleton(&frames)).unwrap();
    assert_track(&seq, &a);
}

#[test]
fn ntu_errors() {
    let mut r = rng(5);
    let a = random_track(&mut r, 3, 0.1);
    let text = write_ntu_skeleton(&a.iter().map(|p| vec![("7", *p)]).collect::<Vec<_>>());

    assert!(matches!(
        parse_ntu_skeleton("x\n"),
        Err(Error::MalformedHeader { line: 1, .. })
    ));
    let lines: Vec<&str> = text.lines().collect();
    let cut = lines[..lines.len() - 3].join("\n");
    assert_eq!(parse_ntu_skeleton(&cut), Err(Error::TruncatedFrame(3)));
    let wrong = text.replacen("\n25\n", "\n24\n", 1);
    assert!(matches!(
        parse_ntu_skeleton(&wrong),
        Err(Error::JointCountMismatch {
            line: 4,
            expected: 25,
            got: 24
        })
    ));
    assert_eq!(parse_ntu_skeleton("2\n0\n0\n"), Err(Error::NoValidFrames));
    assert!(matches!(
        parse_ntu_skeleton(&format!("{text}1\n")),
        Err(Error::MalformedLine { .. })
    ));
}

#[test]
fn csv_round_trip_is_exact() {
    let mut r = rng(6);
    let seq = from_grid(&random_grid(&mut r, 3, 5, 4));
    let back = parse_csv(&write_csv(&seq)).unwrap();
    assert_eq!(back.data(), seq.data());
}

#[test]
fn csv_row_order_does_not_matter() {
    let mut r = rng(7);
    let seq = from_grid(&random_grid(&mut r, 2, 9, 5));
    let text = write_csv(&seq);
    let mut lines: Vec<&str> = text.lines().collect();
    lines[1..].shuffle(&mut r);
    let back = parse_csv(&lines.join("\n")).unwrap();
    assert_eq!(back.data(), seq.data());
}

#[test]
fn csv_grid_errors() {
    let good = "frame,joint,c1\n1,1,0.5\n1,2,0.5\n2,1,0.0\n2,2,1.0\n";
    assert!(parse_csv(good).is_ok());
    assert_eq!(
        parse_csv(&good.replace("2,2,1.0", "2,1,1.0")),
        Err(Error::DuplicateCell(2, 1))
    );
    assert!(matches!(
        parse_csv(&good.replace("2,2,1.0\n", "")),
        Err(Error::MissingCell(..))
    ));
    assert!(matches!(
        parse_csv(&good.replace("2,2,1.0", "2,2,1.0,3.0")),
        Err(Error::RaggedChannelCount { .. })
    ));
    assert!(matches!(
        parse_csv("a,b,c\n1,1,1\n"),
        Err(Error::MalformedHeader { .. })
    ));
    assert!(matches!(
        parse_csv(&good.replace("0.5", "nan")),
        Err(Error::NonFiniteValue(..))
    ));
}

#[test]
fn json_round_trip_and_csv_agree() {
    let mut r = rng(8);
    for _ in 0..10 {
        let (c, t, v) = random_dims(&mut r);
        let seq = from_grid(&random_grid(&mut r, c, t, v));
        let j = parse_json(&write_json(&seq)).unwrap();
        let k = parse_csv(&write_csv(&seq)).unwrap();
        assert_eq!(j.data(), seq.data());
        assert_eq!(j.data(), k.data());
    }
}

#[test]
fn json_schema_errors() {
    let ok = r#"{"channels":1,"frames":2,"joints":1,"data":[[[0.0],[1.0]]]}"#;
    assert!(parse_json(ok).is_ok());
    assert!(matches!(
        parse_json(&ok.replace("\"joints\":1", "\"joints\":1,\"extra\":0")),
        Err(Error::SchemaViolation(_))
    ));
    assert!(matches!(
        parse_json(&ok.replace("\"frames\":2", "\"frames\":3")),
        Err(Error::DimensionMismatch(_))
    ));
    assert!(matches!(parse_json("{"), Err(Error::MalformedLine { .. })));
}

#[test]
fn synthesis_is_deterministic_per_seed() {
    let spec = SyntheticSpec::new(40, 6, 3)
        .with_noise(0.01)
        .with_seed(42)
        .with_segment(Segment {
            start_frame: 5,
            end_frame: 25,
            joint_set: vec![2, 5],
            amplitude: 0.4,
            waveform: Waveform::Step,
        });
    let a = synthesize(&spec).unwrap();
    let b = synthesize(&spec).unwrap();
    assert_eq!(a.data(), b.data());
    assert_eq!(a.source(), b.source());
    let c = synthesize(&spec.clone().with_seed(43)).unwrap();
    assert_ne!(a.data(), c.data());
    assert_ne!(spec.digest(), spec.clone().with_seed(43).digest());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn text_formats_round_trip(seed in any::<u64>(), scale in prop_oneof![Just(1e-9), Just(1.0), Just(1e9)]) {
        let mut r = rng(seed);
        let (c, t, v) = random_dims(&mut r);
        let grid: Grid = random_grid(&mut r, c, t, v)
            .into_iter()
            .map(|p| p.into_iter().map(|row| row.into_iter().map(|x| x * scale).collect()).collect())
            .collect();
        let seq = from_grid(&grid);
        let back_csv = parse_csv(&write_csv(&seq)).unwrap();
        let back_json = parse_json(&write_json(&seq)).unwrap();
        prop_assert!(max_abs_diff(back_csv.data().iter().copied(), seq.data().iter().copied()) <= 1e-12 * scale);
        prop_assert_eq!(back_json.data(), seq.data());
    }
}
