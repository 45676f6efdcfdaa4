//! The parsers are fuzz entry points; these properties run the same calls on
//! stable with structured and unstructured input.

use std::path::Path;

use proptest::prelude::*;
use ss_cli::io::{fmt_f64, parse_profile, parse_reflection};
use ss_cli::RunConfig;

fn number() -> impl Strategy<Value = String> {
    prop_oneof![
        any::<f64>().prop_map(|v| format!("{v}")),
        (-1e3f64..1e3).prop_map(fmt_f64),
        Just("1e308".to_string()),
        Just("-1e308".to_string()),
        Just("nan".to_string()),
        Just("".to_string()),
        "[0-9eE+.-]{1,8}",
    ]
}

proptest! {
    #[test]
    fn profile_parser_never_panics(bytes in proptest::collection::vec(any::<u8>(), 0..512)) {
        let _ = parse_profile(bytes.as_slice(), Path::new("p.csv"), 1e-12);
    }

    #[test]
    fn profile_parser_on_numeric_rows(rows in proptest::collection::vec((number(), number(), number()), 0..40)) {
        let mut text = String::from("x,re_u0,im_u0\n");
        for (a, b, c) in rows {
            text += &format!("{a},{b},{c}\n");
        }
        let _ = parse_profile(text.as_bytes(), Path::new("p.csv"), 1e-12);
    }

    #[test]
    fn extreme_uniform_grids(lo in -1e308f64..1e308, span in prop_oneof![Just(1e-300), Just(1.0), Just(1e308)], n in 16usize..40) {
        let mut text = String::from("x,re_u0,im_u0\n");
        for j in 0..n {
            text += &format!("{},0,0\n", fmt_f64(lo + span * j as f64 / (n - 1) as f64));
        }
        let _ = parse_profile(text.as_bytes(), Path::new("p.csv"), 1e-12);
    }

    #[test]
    fn reflection_parser_never_panics(bytes in proptest::collection::vec(any::<u8>(), 0..512)) {
        let _ = parse_reflection(bytes.as_slice(), Path::new("r.csv"));
    }

    #[test]
    fn reflection_parser_on_numeric_rows(rows in proptest::collection::vec(proptest::collection::vec(number(), 6), 0..20)) {
        let mut text = String::from("k,re_rho1,im_rho1,re_rho2,im_rho2,rho_norm_sq\n");
        for r in rows {
            text += &r.join(",");
            text.push('\n');
        }
        let _ = parse_reflection(text.as_bytes(), Path::new("r.csv"));
    }

    #[test]
    fn config_parser_never_panics(text in "[ -~\n]{0,300}") {
        if let Ok(cfg) = RunConfig::parse(&text, Path::new("/x")) {
            let _ = cfg.sim_config();
        }
    }

    #[test]
    fn config_parser_on_key_values(
        pairs in proptest::collection::vec((
            prop_oneof![Just("zeta"), Just("t_list"), Just("k_window"), Just("k_count"), Just("sim.n_modes"),
                        Just("sim.dt"), Just("sim.half_width"), Just("sim.sponge_width"), Just("tol.ode"), Just("m_max")],
            proptest::collection::vec(number(), 1..4),
        ), 0..6)
    ) {
        let text: String = pairs.iter().map(|(k, v)| format!("{k} = {}\n", v.join(", "))).collect();
        if let Ok(cfg) = RunConfig::parse(&text, Path::new("/x")) {
            let _ = cfg.sim_config();
        }
    }
}
