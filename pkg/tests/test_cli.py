import json

from troprank.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_det_tie(tmp_path, capsys):
    f = write(tmp_path, "m.tropmat", "tropmat 2 2\n0 0\n0 0\n")
    code, out, _ = run(["det", f], capsys)
    assert code == 0
    assert "value 0" in out and "unique false" in out


def test_det_identity(tmp_path, capsys):
    f = write(tmp_path, "m.tropmat", "tropmat 2 2\n0 inf\ninf 0\n")
    code, out, _ = run(["det", f], capsys)
    assert code == 0 and "unique true" in out


def test_det_parse_error(tmp_path, capsys):
    f = write(tmp_path, "m.tropmat", "tropmat 2 3\n0 1 2\n3 4 5\n")
    code, _, err = run(["det", f], capsys)
    assert code == 1


def test_rank_tropical_fano(tmp_path, capsys):
    code, out, _ = run(
        ["gen-plane", "--order", "2", "--weights", "unit", "--seed", "1",
         "--out", str(tmp_path / "fano")],
        capsys,
    )
    assert code == 0
    code, out, _ = run(
        ["rank", str(tmp_path / "fano.tropmat"), "--kind", "tropical", "--seed", "1",
         "--out", str(tmp_path / "r")],
        capsys,
    )
    assert code == 0 and "tropical rank 3" in out
    assert (tmp_path / "r.witness.txt").exists()
    assert (tmp_path / "r.manifest.json").exists()


def test_rank_bounds_all_zeros(tmp_path, capsys):
    f = write(tmp_path, "z.tropmat", "tropmat 4 4\n" + "0 0 0 0\n" * 4)
    code, out, _ = run(["rank", f, "--kind", "bounds", "--seed", "1"], capsys)
    assert code == 0
    assert "lower 1 upper 1 tight" in out


def test_rank_budget_partial_exit_3(tmp_path, capsys):
    code, _, _ = run(
        ["gen-plane", "--order", "3", "--seed", "1", "--out", str(tmp_path / "p3")],
        capsys,
    )
    assert code == 0
    code, out, _ = run(
        ["rank", str(tmp_path / "p3.tropmat"), "--kind", "tropical",
         "--budget", "50", "--seed", "1"],
        capsys,
    )
    assert code == 3


def test_gen_plane_deterministic(tmp_path, capsys):
    a = str(tmp_path / "a")
    b = str(tmp_path / "b")
    for out_prefix in (a, b):
        code, _, _ = run(
            ["gen-plane", "--order", "3", "--weights", "random", "--seed", "7",
             "--out", out_prefix],
            capsys,
        )
        assert code == 0
    assert open(a + ".tropmat").read() == open(b + ".tropmat").read()
    assert open(a + ".plane.txt").read() == open(b + ".plane.txt").read()


def test_gen_plane_unsupported_order(tmp_path, capsys):
    code, _, err = run(["gen-plane", "--order", "6", "--seed", "1"], capsys)
    assert code == 1


def test_reduce_and_realize_pipeline(tmp_path, capsys):
    cnf = write(tmp_path, "f.cnf", "p cnf 1 1\n1 0\n")
    code, out, _ = run(
        ["reduce", "--cnf", cnf, "--seed", "3", "--harden", "off",
         "--out", str(tmp_path / "red")],
        capsys,
    )
    assert code == 0
    assert (tmp_path / "red.pattern.tropmat").exists()
    assert (tmp_path / "red.provenance.txt").exists()


def test_reduce_empty_clause(tmp_path, capsys):
    cnf = write(tmp_path, "bad.cnf", "p cnf 1 1\n0\n")
    code, _, _ = run(
        ["reduce", "--cnf", cnf, "--seed", "3", "--harden", "off",
         "--out", str(tmp_path / "red2")],
        capsys,
    )
    assert code == 0  # compilation succeeds; realizability later fails


def test_reduce_malformed(tmp_path, capsys):
    cnf = write(tmp_path, "bad.cnf", "p cnf x y\n1 0\n")
    code, _, _ = run(["reduce", "--cnf", cnf, "--seed", "3"], capsys)
    assert code == 1


def test_realize_identity_exit_0(tmp_path, capsys):
    f = write(tmp_path, "id.tropmat", "tropmat 3 3\n1 0 0\n0 1 0\n0 0 1\n")
    code, out, _ = run(
        ["realize", "--pattern", f, "--field", "q", "--seed", "1",
         "--out", str(tmp_path / "id")],
        capsys,
    )
    assert code == 0
    assert (tmp_path / "id.cert.txt").exists()


def test_realize_fano_exits(tmp_path, capsys):
    code, _, _ = run(
        ["gen-plane", "--order", "2", "--seed", "1", "--out", str(tmp_path / "fano")],
        capsys,
    )
    code, out, _ = run(
        ["realize", "--pattern", str(tmp_path / "fano.tropmat"), "--field", "q",
         "--seed", "1", "--out", str(tmp_path / "fq")],
        capsys,
    )
    assert code == 2
    assert (tmp_path / "fq.trace.txt").exists()  # trace written on the negative
    code, out, _ = run(
        ["realize", "--pattern", str(tmp_path / "fano.tropmat"), "--field", "gf2",
         "--seed", "1", "--out", str(tmp_path / "fg")],
        capsys,
    )
    assert code == 0
    assert (tmp_path / "fg.cert.txt").exists()


def test_verify_lift_cli(tmp_path, capsys):
    m = write(tmp_path, "m.tropmat", "tropmat 2 2\n0 1\n1 0\n")
    lift = write(
        tmp_path,
        "L.troplift",
        "troplift 2 2 q 3\n0 0 : 1*t^0\n0 1 : 1*t^1\n1 0 : 1*t^1\n1 1 : 1*t^0\n",
    )
    code, out, _ = run(["verify-lift", "--matrix", m, "--lift", lift, "--rank", "2"], capsys)
    assert code == 0 and "accept" in out
    code, out, _ = run(["verify-lift", "--matrix", m, "--lift", lift, "--rank", "1"], capsys)
    assert code == 2 and "reject" in out


def test_verify_lift_indeterminate(tmp_path, capsys):
    m = write(tmp_path, "m.tropmat", "tropmat 1 1\n4\n")
    lift = write(tmp_path, "L.troplift", "troplift 1 1 q 3\n0 0 : 0\n")
    code, out, _ = run(["verify-lift", "--matrix", m, "--lift", lift, "--rank", "1"], capsys)
    assert code == 2 and "indeterminate" in out


def test_json_output(tmp_path, capsys):
    f = write(tmp_path, "m.tropmat", "tropmat 1 1\n0\n")
    code, out, _ = run(["--json", "det", f], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"]["value"] == "0"
    assert "fingerprint" in doc


def test_round_trip_written_files_are_consumable(tmp_path, capsys):
    code, _, _ = run(
        ["gen-plane", "--order", "2", "--seed", "1", "--out", str(tmp_path / "f")],
        capsys,
    )
    code, out, _ = run(["det", str(tmp_path / "f.tropmat")], capsys)
    assert code == 0


def test_manifest_fingerprint_deterministic(tmp_path, capsys):
    f = write(tmp_path, "m.tropmat", "tropmat 2 2\n0 1\n1 0\n")
    prints = []
    for _ in range(2):
        code, out, _ = run(["--json", "det", f], capsys)
        doc = json.loads(out)
        prints.append(doc["fingerprint"])
    assert prints[0] == prints[1]
