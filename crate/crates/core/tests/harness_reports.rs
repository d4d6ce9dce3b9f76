use teich_core::harness::{
    arc_records, read_csv, run_compare, run_phi, run_verify, sample_point, to_csv, to_json, ArcRecord, ArcVerification,
    CompareRecord, ExperimentConfig, PhiRow, PhiTable, RayKind, RaySpec,
};

fn cfg() -> ExperimentConfig {
    ExperimentConfig {
        samples: 12,
        seed: 42,
        depth: 2,
        ..ExperimentConfig::new(1, 2, vec![0.8, 1.6])
    }
}

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

#[test]
fn compare_csv_roundtrips_bit_exactly() {
    let rows = run_compare(&cfg()).unwrap();
    let text = to_csv(&rows).unwrap();
    assert_eq!(text.lines().count(), rows.len() + 1);
    assert_eq!(
        text.lines().next().unwrap(),
        "pair,d_th,d_a,difference,gap,teich_lo,teich_hi,th_witness,a_witness,teich_witness,ordered"
    );
    let back: Vec<CompareRecord> = read_csv(&text).unwrap();
    assert_eq!(back, rows);
    for (a, b) in rows.iter().zip(&back) {
        assert_eq!(
            bits(&[a.row.d_th, a.row.d_a, a.row.teich_lo, a.row.teich_hi]),
            bits(&[b.row.d_th, b.row.d_a, b.row.teich_lo, b.row.teich_hi])
        );
    }
}

#[test]
fn json_reports_roundtrip() {
    let c = cfg();
    let rows = run_compare(&c).unwrap();
    let back: Vec<CompareRecord> = serde_json::from_str(&to_json(&rows).unwrap()).unwrap();
    assert_eq!(back, rows);
    let runs = run_verify(&c).unwrap();
    let back: Vec<ArcVerification> = serde_json::from_str(&to_json(&runs).unwrap()).unwrap();
    assert_eq!(back, runs);
    let phi = run_phi(&c).unwrap();
    let back: PhiTable = serde_json::from_str(&to_json(&phi).unwrap()).unwrap();
    assert_eq!(back, phi);
}

#[test]
fn arc_and_phi_csv_roundtrip() {
    let c = ExperimentConfig {
        ray: Some(RaySpec {
            curve: 1,
            step: 0.1,
            count: 7,
            kind: RayKind::Length,
        }),
        ..cfg()
    };
    let recs = arc_records(&run_verify(&c).unwrap());
    assert_eq!(read_csv::<ArcRecord>(&to_csv(&recs).unwrap()).unwrap(), recs);
    let phi = run_phi(&c).unwrap();
    assert_eq!(phi.rows.len(), 7);
    assert_eq!(read_csv::<PhiRow>(&to_csv(&phi.rows).unwrap()).unwrap(), phi.rows);
}

#[test]
fn length_ray_scales_one_curve() {
    let c = ExperimentConfig {
        ray: Some(RaySpec {
            curve: 1,
            step: 0.2,
            count: 4,
            kind: RayKind::Length,
        }),
        ..cfg()
    };
    let phi = run_phi(&c).unwrap();
    let x = sample_point(&c, 0).unwrap();
    assert_eq!(phi.x, x);
    assert!((phi.rows[3].parameter - 0.6).abs() < 1e-15);
    // stretching one curve by e^{0.6} gives a Thurston stretch of at least 0.6
    assert!(phi.rows[3].d_th >= 0.6 - 1e-12);
}

#[test]
fn config_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    let c = cfg();
    std::fs::write(&path, serde_json::to_string_pretty(&c).unwrap()).unwrap();
    assert_eq!(ExperimentConfig::load(&path).unwrap(), c);
    assert!(ExperimentConfig::load(&dir.path().join("missing.json")).is_err());
}

#[test]
fn reports_depend_only_on_config() {
    let a = to_csv(&run_compare(&cfg()).unwrap()).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| to_csv(&run_compare(&cfg()).unwrap()).unwrap());
    assert_eq!(a, b);
    let other = ExperimentConfig { seed: 43, ..cfg() };
    assert_ne!(a, to_csv(&run_compare(&other).unwrap()).unwrap());
}
