//! Writes a clip as CSV and JSON, an NTU file with two bodies, and reads them back.

use jmap::ingest::ntu::{write_ntu_skeleton, NTU_JOINTS};
use jmap::ingest::{parse, synthesize, write_csv, write_json, Format, SyntheticSpec};

type Bodies = Vec<(&'static str, [[f64; 3]; NTU_JOINTS])>;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("jmap-formats-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let seq = synthesize(&SyntheticSpec::moving_span(12, 4, 3, 3, 9).with_noise(0.01))?;

    let csv = dir.join("clip.csv");
    let json = dir.join("clip.json");
    std::fs::write(&csv, write_csv(&seq))?;
    std::fs::write(&json, write_json(&seq))?;

    // Body 2 moves, body 1 stands still: the parser keeps body 2.
    let frames: Vec<Bodies> = (0..5)
        .map(|t| {
            vec![
                ("1", [[0.0, 1.0, 3.0]; NTU_JOINTS]),
                ("2", [[0.1 * t as f64, 1.0, 3.0]; NTU_JOINTS]),
            ]
        })
        .collect();
    let ntu = dir.join("clip.skeleton");
    std::fs::write(&ntu, write_ntu_skeleton(&frames))?;

    for path in [&csv, &json, &ntu] {
        let format = Format::from_path(path).expect("known extension");
        let back = parse(&std::fs::read_to_string(path)?, format, &path.display().to_string())?;
        let same = format != Format::Ntu && back.data() == seq.data();
        println!(
            "{format:>4}: {} x {} x {}{}",
            back.channels(),
            back.frames(),
            back.joints(),
            if same { ", identical to the original" } else { "" }
        );
        if format == Format::Ntu {
            println!(
                "      x of joint 1 over time: {:?}",
                back.joint_track(0).row(0).to_vec()
            );
        }
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
