use selfsim_cli::config::{BoundaryConfig, InitialConfig, RunConfig, SCHEMA_VERSION};
use selfsim_cli::presets::{preset, Overrides, PRESETS};
use selfsim_cli::problem::Built;
use selfsim_heat::analysis::compatibility_c_star;
use selfsim_heat::exact::ExactSolution;
use selfsim_heat::signal::BoundaryKind;

#[test]
fn every_preset_builds_and_round_trips() {
    for name in PRESETS {
        let cfg = preset(name, None).unwrap();
        cfg.validate().unwrap();
        Built::new(&cfg).unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(RunConfig::from_json(&text).unwrap(), cfg, "{name}");
        assert_eq!(cfg.schema_version, SCHEMA_VERSION);
    }
}

#[test]
fn hermite_presets_use_the_hermite_traces() {
    for (name, d, probe) in [("case4", 1.0, 1.0), ("case4-large", 200.0, -1.0)] {
        let cfg = preset(name, None).unwrap();
        assert_eq!(cfg.problem.d, d);
        assert_eq!(cfg.problem.initial, InitialConfig::Hermite1);
        assert_eq!(
            cfg.problem.boundary,
            BoundaryConfig::Consonant {
                kind: BoundaryKind::Dirichlet,
                solution: ExactSolution::Hermite1
            }
        );
        assert_eq!(cfg.probes, vec![probe]);
        // u(±D, t) = ±D (2t+1)^{-3/2} e^{-D²/(2(2t+1))}
        let built = Built::new(&cfg).unwrap();
        let (g, h) = built.dirichlet_data().unwrap();
        let t = 3.0f64;
        let s = 2.0 * t + 1.0;
        let trace = d * s.powf(-1.5) * (-d * d / (2.0 * s)).exp();
        assert!((h.eval(t).unwrap() - trace).abs() <= 1e-15 * trace.max(1e-300));
        assert!((g.eval(t).unwrap() + trace).abs() <= 1e-15 * trace.max(1e-300));
    }
}

#[test]
fn gaussian_presets_pair_with_the_compatible_kummer_solution() {
    for d in [1.0, 2.5] {
        let c = compatibility_c_star(d).unwrap();
        let fig22 = preset("fig22", Some(d)).unwrap();
        assert_eq!(fig22.problem.initial, InitialConfig::Gaussian);
        assert_eq!(
            fig22.problem.boundary.consonant_solution(),
            Some(&ExactSolution::KummerCompat { c_star: c })
        );
        assert_eq!(fig22.series_terms, 10);
        let fig2 = preset("fig2", Some(d)).unwrap();
        assert_eq!(fig2.problem.boundary, BoundaryConfig::Homogeneous);
        let built = Built::new(&fig2).unwrap();
        // the homogeneous part vanishes at both ends
        for x in [-d, d] {
            assert!(built.initial.eval(x).abs() < 1e-15);
        }
        let mid = 1.0
            - ExactSolution::KummerCompat { c_star: c }
                .value(0.0, 0.0)
                .unwrap();
        assert!((built.initial.eval(0.0) - mid).abs() < 1e-15);
    }
}

#[test]
fn overrides_apply_after_the_preset() {
    let mut cfg = preset("fig22", None).unwrap();
    Overrides {
        n: Some(51),
        t_end: Some(1.0),
        probes: vec![0.5],
        ..Overrides::default()
    }
    .apply(&mut cfg);
    assert_eq!(cfg.problem.n, 51);
    assert_eq!(cfg.output.times, Some(vec![0.0, 0.5, 1.0]));
    assert_eq!(cfg.probes, vec![0.5]);
    cfg.validate().unwrap();
}

#[test]
fn unknown_presets_and_fields_are_config_errors() {
    assert!(preset("fig99", None).is_err());
    let mut v = serde_json::to_value(preset("case4", None).unwrap()).unwrap();
    v["extra"] = 1.into();
    assert!(RunConfig::from_json(&v.to_string()).is_err());
}
