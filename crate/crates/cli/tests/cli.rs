use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use wellbalanced::format::{parse_graph, parse_orientation, parse_star, parse_symbolic};
use wellbalanced::rayless::instantiate_oriented;
use wellbalanced::{orient_rayless1, verify_well_balanced};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn wbo<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_wbo"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn lambda_certificate_is_a_cut_of_that_size() {
    let o = wbo([
        "lambda".as_ref(),
        data("triangle.graph").as_os_str(),
        "a".as_ref(),
        "c".as_ref(),
        "--certificate".as_ref(),
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let cut_lines = text.lines().filter(|l| l.starts_with("cut ")).count();
    assert_eq!(cut_lines, 2);
    assert!(text
        .lines()
        .any(|l| l.starts_with("side ") && l.contains('a') && !l.contains('c')));
}

fn wbo_lambda(file: &Path, x: &str, y: &str) -> Output {
    wbo(["lambda".as_ref(), file.as_os_str(), x.as_ref(), y.as_ref()])
}

#[test]
fn lambda_errors() {
    let o = wbo_lambda(&data("bad.graph"), "a", "b");
    assert_eq!(code(&o), 2);
    let o = wbo_lambda(&data("triangle.graph"), "a", "z");
    assert_eq!(code(&o), 3);
    let o = wbo_lambda(&data("no-such-file.graph"), "a", "b");
    assert_eq!(code(&o), 2);
}

#[test]
fn lambda_subcommand_values() {
    assert_eq!(
        stdout(&wbo_lambda(&data("triangle.graph"), "a", "b")),
        "2\n"
    );
    assert_eq!(
        stdout(&wbo_lambda(&data("two-parts.graph"), "a", "c")),
        "0\n"
    );
    assert_eq!(
        stdout(&wbo_lambda(&data("omega-pair.graph"), "a", "b")),
        "omega\n"
    );
}

#[test]
fn orient_triangle_is_a_directed_cycle() {
    let o = wbo(["orient".as_ref(), data("triangle.graph").as_os_str()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("arc ")).count(), 3);
    let g = parse_graph(&fs::read_to_string(data("triangle.graph")).unwrap()).unwrap();
    let d = parse_orientation(&text, &g).unwrap();
    assert!(verify_well_balanced(&g, &d).unwrap().is_well_balanced());
}

#[test]
fn orient_omega_pair_splits_both_ways() {
    let o = wbo(["orient".as_ref(), data("omega-pair.graph").as_os_str()]);
    assert_eq!(stdout(&o), "arc a b omega\narc b a omega\n");
}

#[test]
fn orient_empty_graph() {
    let o = wbo(["orient".as_ref(), data("empty.graph").as_os_str()]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, ""));
}

#[test]
fn orient_output_verifies_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bowtie.orientation");
    let args = |seed: &str| {
        vec![
            "orient".into(),
            data("bowtie.graph").into_os_string(),
            "--seed".into(),
            seed.into(),
            "--out".into(),
            out.clone().into_os_string(),
        ]
    };
    assert_eq!(code(&wbo(args("7"))), 0);
    let first = fs::read(&out).unwrap();
    assert_eq!(code(&wbo(args("7"))), 0);
    assert_eq!(fs::read(&out).unwrap(), first);
    let o = wbo([
        "verify".as_ref(),
        data("bowtie.graph").as_os_str(),
        out.as_os_str(),
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_exit_codes() {
    let v = |orientation: &str| {
        wbo([
            "verify".as_ref(),
            data("triangle.graph").as_os_str(),
            data(orientation).as_os_str(),
        ])
    };
    assert_eq!(code(&v("cyclic.orientation")), 0);

    let o = v("acyclic.orientation");
    assert_eq!(code(&o), 1);
    // Every pair has λ = 2 and one direction without a path.
    let text = stdout(&o);
    for pair in ["a b", "a c", "b c"] {
        let line = text
            .lines()
            .find(|l| l.starts_with(&format!("violation {pair} ")))
            .unwrap();
        assert!(line.contains("lambda 2"));
        assert!(line.contains("backward 0"));
    }

    assert_eq!(code(&v("short.orientation")), 4);
}

#[test]
fn contract_merges_classes() {
    let o = wbo([
        "contract",
        data("two-parts.graph").to_str().unwrap(),
        "--class",
        "a,c",
        "--class",
        "b,d",
    ]);
    assert_eq!(code(&o), 0);
    let q = parse_graph(&stdout(&o)).unwrap();
    assert_eq!(q.vertex_count(), 2);
    assert_eq!(q.edge_count(), 1);
    assert_eq!(q.mult("a", "b"), wellbalanced::Fin(2));

    // a and b are adjacent, so they cannot share a class.
    let o = wbo([
        "contract",
        data("two-parts.graph").to_str().unwrap(),
        "--class",
        "a,b",
    ]);
    assert_eq!(code(&o), 6);
}

#[test]
fn blocks_of_a_bowtie() {
    let o = wbo(["blocks", data("bowtie.graph").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("part ")).count(), 2);
    assert_eq!(text.lines().filter(|l| l.starts_with("tree ")).count(), 1);

    let o = wbo([
        "blocks",
        data("bowtie.graph").to_str().unwrap(),
        "--fragments",
    ]);
    assert_eq!(
        stdout(&o)
            .lines()
            .filter(|l| l.starts_with("fragment "))
            .count(),
        2
    );
}

#[test]
fn rayless_orient_finite_instance_matches_plain_orienter() {
    let o = wbo([
        "rayless-orient",
        data("finite.star").to_str().unwrap(),
        "--cap",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("# checked 6 pairs, 0 violations"));

    // The symbolic output, read back and expanded, is a well-balanced
    // orientation of the same graph `orient` would be given.
    let s = parse_star(&fs::read_to_string(data("finite.star")).unwrap()).unwrap();
    let sym = parse_symbolic(&text, &s).unwrap();
    let d = instantiate_oriented(&s, &sym, 1).unwrap();
    assert!(verify_well_balanced(d.base(), &d)
        .unwrap()
        .is_well_balanced());
    assert_eq!(sym, orient_rayless1(&s, 0).unwrap().orientation);
}

#[test]
fn rayless_orient_single_omega_template() {
    let o = wbo(["rayless-orient", data("omega-pair.star").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o)
        .lines()
        .any(|l| l == "# ok u v lambda omega forward omega backward omega required omega"));
}

#[test]
fn rayless_orient_chained_templates_connect_transitively() {
    let o = wbo(["rayless-orient", data("omega-chain.star").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o)
        .lines()
        .any(|l| l == "# ok u w lambda omega forward omega backward omega required omega"));
}

#[test]
fn rayless_orient_writes_file_and_rejects_disconnected() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("chain.sym");
    let o = wbo([
        "rayless-orient",
        data("omega-chain.star").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let s = parse_star(&fs::read_to_string(data("omega-chain.star")).unwrap()).unwrap();
    parse_symbolic(&fs::read_to_string(&out).unwrap(), &s).unwrap();

    let o = wbo([
        "rayless-orient",
        data("disconnected.star").to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 5);
}

#[test]
fn efficient_path_rewrites_weaving_path() {
    let o = wbo([
        "efficient-path",
        data("weave.graph").to_str().unwrap(),
        "--decomposition",
        data("weave.decomposition").to_str().unwrap(),
        data("weave.path").to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("path p q r\n"));
    assert!(text.contains("# rounds 1\n"));
}

#[test]
fn bond_check_reports_split_cycle() {
    let o = wbo([
        "bond-check",
        data("cycle4.graph").to_str().unwrap(),
        data("cycle4.decomposition").to_str().unwrap(),
        "--bmax",
        "1",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).lines().count(), 4);

    let o = wbo(["bond-check", data("bowtie.graph").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
}

#[test]
fn fuzz_zero_trials() {
    let dir = tempfile::tempdir().unwrap();
    let o = wbo([
        "fuzz",
        "--trials",
        "0",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, ""));
}

#[test]
fn fuzz_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        stdout(&wbo([
            "fuzz",
            "--seed",
            "11",
            "--trials",
            "20",
            "--out",
            dir.path().to_str().unwrap(),
        ]))
    };
    let first = run();
    assert!(first.starts_with("trials 20\n"));
    assert_eq!(run(), first);
}

#[test]
fn fuzz_injected_fault_writes_replay_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = wbo([
        "fuzz",
        "--seed",
        "3",
        "--trials",
        "5",
        "--inject-fault",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_ne!(code(&o), 0);
    let files: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert!(!files.is_empty());
    let replay = fs::read_to_string(&files[0]).unwrap();
    assert!(replay.contains("\n# replay: wbo fuzz --seed 3 --size 6 --first-trial "));
    // The replay file is itself a graph file.
    parse_graph(&replay).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&wbo(["lambda"])), 2);
    assert_eq!(code(&wbo(["bond-check", "x", "--bmax", "0"])), 2);
}
