use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;
use toric_seidel::manifolds;
use toric_seidel::polytope::Polytope;
use toric_seidel::rational::{int, parse_rational, ratio, Rational};
use toric_seidel_cli::kernel::KernelFile;
use toric_seidel_cli::manifest::{Coord, FacetDecl, ManifoldFile, ParamKind, ParameterDecl};
use toric_seidel_cli::ring::load_manifold;
use toric_seidel_cli::{run, Params};

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn corpus(name: &str) -> String {
    format!("{}/tests/corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("toric-seidel").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_files(dir: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

#[test]
fn documented_examples() {
    let (code, out, _) = cli(&[
        "reproduce",
        "blowup",
        "--param",
        "mu=1",
        "--param",
        "c1=1/2",
        "--param",
        "c2=1/2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS blowup.kernel"));
    assert!(out.contains("verdict: in_kernel"));

    let (code, out, _) = cli(&[
        "polytope",
        &data("odd_hirzebruch.json"),
        "--param",
        "mu=1",
        "--centroid",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("centroid: (7/9, -2/9)"), "{out}");

    let (code, out, _) = cli(&[
        "ring",
        "--preset",
        "even_hirzebruch",
        "--param",
        "mu=2",
        "--rank",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "4");
}

#[test]
fn golden_exit_codes() {
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["polytope".into(), corpus("square.json")], 0),
        (
            vec!["polytope".into(), corpus("square.json"), "--delzant".into()],
            0,
        ),
        (
            vec![
                "polytope".into(),
                corpus("non_delzant.json"),
                "--delzant".into(),
            ],
            1,
        ),
        (vec!["polytope".into(), corpus("malformed.json")], 2),
        (vec!["polytope".into(), corpus("unknown_field.json")], 2),
        (vec!["polytope".into(), corpus("bad_offset.json")], 2),
        (vec!["polytope".into(), corpus("unbound_name.json")], 2),
        (
            vec!["polytope".into(), corpus("non_integer_normal.json")],
            2,
        ),
        (vec!["polytope".into(), corpus("unbounded.json")], 2),
        (vec!["polytope".into(), corpus("does_not_exist.json")], 2),
        (
            vec![
                "polytope".into(),
                data("even_hirzebruch.json"),
                "--param".into(),
                "k=1/2".into(),
            ],
            2,
        ),
        (
            vec![
                "polytope".into(),
                data("even_hirzebruch.json"),
                "--param".into(),
                "k=2".into(),
            ],
            2,
        ),
        (
            vec![
                "polytope".into(),
                data("even_hirzebruch.json"),
                "--param".into(),
                "nu=2".into(),
            ],
            2,
        ),
        (
            vec![
                "polytope".into(),
                data("odd_hirzebruch.json"),
                "--param".into(),
                "mu=x".into(),
            ],
            2,
        ),
        (
            vec![
                "polytope".into(),
                data("odd_hirzebruch.json"),
                "--param".into(),
                "mu=1".into(),
                "--param".into(),
                "mu=2".into(),
            ],
            2,
        ),
        (
            vec![
                "polytope".into(),
                data("blowup_hexagon.json"),
                "--fano".into(),
                "--centroid".into(),
            ],
            2,
        ),
        (
            vec![
                "polytope".into(),
                data("blowup_hexagon.json"),
                "--param".into(),
                "c2=3/4".into(),
            ],
            2,
        ),
        (
            vec![
                "ring".into(),
                data("even_hirzebruch.json"),
                "--param".into(),
                "k=1".into(),
            ],
            2,
        ),
        (
            vec![
                "ring".into(),
                data("even_hirzebruch.json"),
                "--param".into(),
                "k=1".into(),
                "--override".into(),
                "nef:cited".into(),
            ],
            0,
        ),
        (
            vec![
                "ring".into(),
                data("even_hirzebruch.json"),
                "--param".into(),
                "k=1".into(),
                "--override".into(),
                "cited".into(),
            ],
            2,
        ),
        (
            vec![
                "ring".into(),
                "--preset".into(),
                "nope".into(),
                "--param".into(),
                "mu=1".into(),
            ],
            2,
        ),
        (
            vec!["ring".into(), "--preset".into(), "odd_hirzebruch".into()],
            2,
        ),
        (
            vec![
                "ring".into(),
                "--preset".into(),
                "odd_hirzebruch".into(),
                "--param".into(),
                "mu=1".into(),
                "--normal-form".into(),
                "u^4 +".into(),
            ],
            2,
        ),
        (
            vec![
                "ring".into(),
                "--preset".into(),
                "even_hirzebruch".into(),
                "--param".into(),
                "mu=1".into(),
                "--normal-form".into(),
                "(u+v)^-1".into(),
            ],
            2,
        ),
        (vec!["ring".into()], 2),
        (
            vec![
                "seidel".into(),
                data("odd_hirzebruch.json"),
                "--facet".into(),
                "2".into(),
            ],
            0,
        ),
        (
            vec![
                "seidel".into(),
                data("odd_hirzebruch.json"),
                "--facet".into(),
                "0".into(),
            ],
            2,
        ),
        (
            vec![
                "seidel".into(),
                data("odd_hirzebruch.json"),
                "--facet".into(),
                "5".into(),
            ],
            2,
        ),
        (
            vec!["kernel".into(), data("kernel/even_hirzebruch.json")],
            0,
        ),
        (vec!["kernel".into(), corpus("failing_kernel.json")], 1),
        (vec!["kernel".into(), corpus("wrong_order.json")], 2),
        (vec!["kernel".into(), corpus("not_a_unit.json")], 2),
        (
            vec![
                "reproduce".into(),
                "odd".into(),
                "--param".into(),
                "mu=1".into(),
                "--bound".into(),
                "5".into(),
            ],
            0,
        ),
        (vec!["reproduce".into(), "nope".into()], 2),
        (vec!["reproduce".into(), "even".into()], 2),
        (
            vec![
                "reproduce".into(),
                "even".into(),
                "--param".into(),
                "mu=1/2".into(),
            ],
            2,
        ),
        (vec!["bogus".into()], 2),
        (vec!["--help".into()], 0),
    ];
    for (args, expected) in cases {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, err) = cli(&argv);
        assert_eq!(code, expected, "{argv:?}\nstdout: {out}\nstderr: {err}");
        if expected == 2 {
            assert!(!err.is_empty(), "{argv:?} printed no diagnostic");
        }
    }
}

/// No floating-point numbers anywhere, and every string that looks numeric
/// is an exact rational.
fn assert_exact(v: &Value, path: &str) {
    match v {
        Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "float at {path}: {n}"),
        Value::String(s) => {
            if s.chars()
                .next()
                .is_some_and(|c| c.is_ascii_digit() || c == '-')
                && !s.contains(' ')
            {
                assert!(
                    parse_rational(s).is_some() || s.chars().any(|c| c.is_alphabetic()),
                    "inexact numeric string at {path}: {s}"
                );
            }
        }
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| assert_exact(x, &format!("{path}[{i}]"))),
        Value::Object(o) => o
            .iter()
            .for_each(|(k, x)| assert_exact(x, &format!("{path}.{k}"))),
        _ => {}
    }
}

#[test]
fn json_output_is_valid_and_exact() {
    let hex = data("blowup_hexagon.json");
    let even = data("even_hirzebruch.json");
    let odd = data("odd_hirzebruch.json");
    let t1 = data("blowup_t1.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["polytope", &hex],
        vec!["polytope", &hex, "--delzant"],
        vec!["polytope", &hex, "--fano"],
        vec![
            "polytope",
            &hex,
            "--centroid",
            "--param",
            "mu=2",
            "--param",
            "c2=1/4",
        ],
        vec!["polytope", &t1, "--primitive-pairs"],
        vec!["ring", &odd, "--param", "mu=3/2"],
        vec!["ring", &odd, "--groebner"],
        vec!["ring", &hex, "--basis"],
        vec![
            "ring",
            "--preset",
            "blowup_ep",
            "--param",
            "mu=1",
            "--param",
            "c1=1/2",
            "--param",
            "c2=1/4",
            "--rank",
        ],
        vec![
            "ring",
            "--preset",
            "even_hirzebruch",
            "--param",
            "mu=2",
            "--normal-form",
            "(u+v)^-1",
            "--precision",
            "5/2",
        ],
        vec![
            "seidel",
            &even,
            "--param",
            "k=1",
            "--facet",
            "1",
            "--override",
            "nef:cited",
        ],
        vec!["reproduce", "even", "--param", "mu=3/2", "--bound", "3"],
        vec!["reproduce", "odd", "--param", "mu=2", "--bound", "5"],
    ];
    for args in commands {
        let mut argv = args.clone();
        argv.push("--json");
        let (code, out, err) = cli(&argv);
        assert_eq!(code, 0, "{argv:?}: {err}");
        let v: Value =
            serde_json::from_str(&out).unwrap_or_else(|e| panic!("{argv:?}: {e}\n{out}"));
        assert_exact(&v, "$");
    }
    let (_, out, _) = cli(&[
        "polytope",
        &hex,
        "--centroid",
        "--param",
        "mu=2",
        "--param",
        "c2=1/4",
        "--json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["centroid"][0], "-365/708");
    assert_eq!(v["area"], "59/32");
}

#[test]
fn text_output_is_deterministic() {
    let args = [
        "reproduce",
        "blowup",
        "--param",
        "mu=1",
        "--param",
        "c1=1/2",
        "--param",
        "c2=1/3",
    ];
    let (c1, a, _) = cli(&args);
    let (c2, b, _) = cli(&args);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    let (c3, c, _) = cli(&seq);
    assert_eq!((c1, c2, c3), (0, 0, 0));
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert!(a.contains("verdict: not_in_kernel"));
}

#[test]
fn bundled_files_are_canonical() {
    for path in json_files(&data("")) {
        let src = std::fs::read_to_string(&path).unwrap();
        let m = ManifoldFile::parse(&src).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(m.to_canonical_string(), src, "{}", path.display());
        assert!(!m.comment.is_empty());
    }
    for path in json_files(&data("kernel")) {
        let src = std::fs::read_to_string(&path).unwrap();
        let k: KernelFile = serde_json::from_str(&src).unwrap();
        let mut again = serde_json::to_string_pretty(&k).unwrap();
        again.push('\n');
        assert_eq!(again, src, "{}", path.display());
        let (code, out, err) = cli(&["kernel", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{}: {out}{err}", path.display());
    }
}

fn params(pairs: &[(&str, Rational)]) -> Params {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn same_polytope(a: &Polytope, b: &Polytope) {
    assert_eq!(a.facets(), b.facets());
    assert_eq!(a.vertices(), b.vertices());
    assert_eq!(a.class_basis(), b.class_basis());
}

#[test]
fn bundled_files_match_builders() {
    for (k, mu) in [(0, int(1)), (0, ratio(5, 2)), (1, int(2)), (2, ratio(7, 2))] {
        let m = load_manifold(
            data("even_hirzebruch.json").as_ref(),
            &params(&[("k", int(k)), ("mu", mu.clone())]),
        )
        .unwrap();
        same_polytope(&m.polytope, &manifolds::even_hirzebruch(k, &mu).unwrap());
    }
    for mu in [ratio(1, 2), int(1), ratio(3, 2)] {
        let m = load_manifold(
            data("odd_hirzebruch.json").as_ref(),
            &params(&[("mu", mu.clone())]),
        )
        .unwrap();
        same_polytope(&m.polytope, &manifolds::odd_hirzebruch(&mu).unwrap());
    }
    let grid = [
        (int(1), ratio(1, 2), ratio(1, 2)),
        (int(1), ratio(1, 2), ratio(1, 4)),
        (int(2), ratio(1, 2), ratio(1, 4)),
        (ratio(3, 2), ratio(2, 5), ratio(1, 3)),
    ];
    for (mu, c1, c2) in &grid {
        let p = params(&[("mu", mu.clone()), ("c1", c1.clone()), ("c2", c2.clone())]);
        let m = load_manifold(data("blowup_hexagon.json").as_ref(), &p).unwrap();
        same_polytope(&m.polytope, &manifolds::blowup_hexagon(mu, c1, c2).unwrap());
        if c1 != c2 {
            let m = load_manifold(data("blowup_t1.json").as_ref(), &p).unwrap();
            same_polytope(&m.polytope, &manifolds::blowup_t1(mu, c1, c2).unwrap());
            let m = load_manifold(data("blowup_t2.json").as_ref(), &p).unwrap();
            same_polytope(&m.polytope, &manifolds::blowup_t2(mu, c1, c2).unwrap());
        }
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_toric-seidel");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = status(&[
        "ring",
        "--preset",
        "even_hirzebruch",
        "--param",
        "mu=2",
        "--rank",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "4");
    assert_eq!(
        status(&["kernel", &corpus("failing_kernel.json")])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        status(&["polytope", &corpus("malformed.json")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(status(&["--frobnicate"]).status.code(), Some(2));
}

fn coord() -> impl Strategy<Value = Coord> {
    prop_oneof![
        (-5i64..5).prop_map(Coord::Int),
        "[a-z]{1,3}( [+-] [0-9])?".prop_map(Coord::Expr),
    ]
}

fn manifold_file() -> impl Strategy<Value = ManifoldFile> {
    let facet = (
        coord(),
        coord(),
        "[a-z0-9 +/-]{1,8}",
        proptest::option::of(proptest::collection::vec(coord(), 0..4)),
    )
        .prop_map(|(a, b, offset, label)| FacetDecl {
            normal: [a, b],
            offset,
            label,
        });
    let param = (
        "[a-z]{1,4}",
        any::<bool>(),
        proptest::option::of("-?[0-9]{1,3}(/[1-9])?"),
    )
        .prop_map(|(name, integer, default)| ParameterDecl {
            name,
            kind: if integer {
                ParamKind::Integer
            } else {
                ParamKind::Rational
            },
            default,
        });
    (
        "[a-z_]{1,10}",
        "[ -~]{0,20}",
        proptest::collection::vec("[A-Z][0-9]?", 0..4),
        proptest::collection::vec(param, 0..3),
        proptest::collection::vec("[a-z0-9 <=]{1,12}", 0..3),
        proptest::collection::vec(facet, 0..6),
    )
        .prop_map(
            |(name, comment, basis, parameters, constraints, facets)| ManifoldFile {
                name,
                comment,
                basis,
                parameters,
                constraints,
                facets,
            },
        )
}

proptest! {
    #[test]
    fn manifest_round_trip(m in manifold_file()) {
        let s = m.to_canonical_string();
        let back = ManifoldFile::parse(&s).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(back.to_canonical_string(), s);
    }
}
