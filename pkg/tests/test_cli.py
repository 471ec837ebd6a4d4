"""Command line driver: configs, outputs, exit codes, determinism."""

import json
from fractions import Fraction as F

import pytest

from rkhs_probe.cli import main


def run(args):
    return main([str(a) for a in args])


def read_json(path):
    return json.loads(path.read_text())


GAUSS = '{"family":"gaussian","params":{"rate":"1"}}'
COSINE_FAM = '{"family":"cosine","params":{"freq":"2"}}'
GAUSS2_K = '{"kernel":"gaussian","params":{"rate":"2"}}'
GAUSS15_K = '{"kernel":"gaussian","params":{"rate":"15"}}'
COSINE_K = '{"kernel":"cosine","params":{"freq":"2"}}'


# ---------------------------------------------------------------------------
# variance-seq


def test_variance_seq_gaussian_rows(tmp_path):
    assert run(["variance-seq", "--family", GAUSS, "--n-max", 4,
                "--out", tmp_path]) == 0
    rows = (tmp_path / "variance_seq.csv").read_text().splitlines()
    assert rows[0] == "n,var_numer,var_denom,path,closed_form,abs_residual"
    got = [(r.split(",")[1], r.split(",")[2]) for r in rows[1:]]
    assert got == [("1", "1"), ("2", "3"), ("8", "15"), ("16", "35"), ("128", "315")]
    summary = read_json(tmp_path / "variance_seq_summary.json")
    assert summary["limit_flag"] == "tends-to-zero"
    assert summary["kind"] == "exact"
    assert (tmp_path / "variance_seq.png").stat().st_size > 0
    manifest = read_json(tmp_path / "variance_seq_manifest.json")
    assert manifest["command"] == "variance-seq"
    assert set(manifest) == {"command", "version", "config_sha256",
                             "precision_bits", "wall_time_s", "outputs"}


def test_variance_seq_cosine_degenerate(tmp_path):
    assert run(["variance-seq", "--family", COSINE_FAM, "--n-max", 6,
                "--out", tmp_path]) == 0
    summary = read_json(tmp_path / "variance_seq_summary.json")
    assert summary["limit_flag"] == "degenerate-zero"


def test_variance_seq_order_zero(tmp_path):
    assert run(["variance-seq", "--family", GAUSS, "--n-max", 0,
                "--out", tmp_path]) == 0
    rows = (tmp_path / "variance_seq.csv").read_text().splitlines()
    assert len(rows) == 2
    assert rows[1].startswith("0,1,1,")


# ---------------------------------------------------------------------------
# determinacy


@pytest.mark.parametrize(
    "family,label",
    [
        (GAUSS, "sqrt-N"),
        ('{"family":"cauchy","params":{"rate":"1"}}', "log-N"),
        ('{"family":"beta","params":{"alpha":"0"}}', "linear-N"),
    ],
)
def test_determinacy_rate_labels(tmp_path, family, label):
    assert run(["determinacy", "--family", family, "--N", 64,
                "--out", tmp_path]) == 0
    doc = read_json(tmp_path / "determinacy.json")
    assert doc["carleman_rate_label"] == label
    assert doc["verdict"] == "determinate-by-(A.4)"
    assert len(doc["carleman_partial_sums"]) == 64
    assert (tmp_path / "determinacy.png").stat().st_size > 0


def test_determinacy_cosine_exact_sums(tmp_path):
    assert run(["determinacy", "--family", COSINE_FAM, "--N", 16,
                "--out", tmp_path]) == 0
    doc = read_json(tmp_path / "determinacy.json")
    assert doc["carleman_partial_sums"][:4] == ["1/2", "1", "3/2", "2"]


# ---------------------------------------------------------------------------
# closed-form-check


def test_closed_form_check_gaussian_exact(tmp_path):
    assert run(["closed-form-check", "--family", GAUSS, "--n-max", 20,
                "--out", tmp_path]) == 0
    doc = read_json(tmp_path / "closed_form_check.json")
    assert doc["exact_match_count"] == 20
    assert doc["max_abs_residual"] == 0.0


def test_closed_form_check_arcsine(tmp_path):
    fam = '{"family":"beta","params":{"alpha":"-1/2"}}'
    assert run(["closed-form-check", "--family", fam, "--n-max", 8,
                "--out", tmp_path]) == 0
    doc = read_json(tmp_path / "closed_form_check.json")
    for entry in doc["entries"]:
        n = entry["n"]
        assert entry["closed_form"] == f"1/{2 * n + 1}"
        assert entry["exact_match"]


def test_closed_form_check_generic_alpha_tolerance(tmp_path):
    fam = '{"family":"beta","params":{"alpha":"1/4"}}'
    assert run(["closed-form-check", "--family", fam, "--n-max", 12,
                "--out", tmp_path]) == 0
    doc = read_json(tmp_path / "closed_form_check.json")
    assert doc["max_abs_residual"] < 1e-20


def test_closed_form_check_rejects_cauchy(tmp_path):
    fam = '{"family":"cauchy","params":{"rate":"1"}}'
    assert run(["closed-form-check", "--family", fam, "--out", tmp_path]) == 3


# ---------------------------------------------------------------------------
# krige


def test_krige_outputs(tmp_path):
    assert run(["krige", "--kernel", GAUSS2_K, "--N", 9, "--function", "f2",
                "--grid-size", 101, "--out", tmp_path]) == 0
    rows = (tmp_path / "krige.csv").read_text().splitlines()
    assert rows[0] == "x,f,mu,cond_var,band_lo,band_hi"
    assert len(rows) == 102
    summary = read_json(tmp_path / "krige_summary.json")
    assert summary["band_variant"] == "paper"
    assert summary["N"] == 9
    assert float(summary["sigma2_hat"]) > 0
    assert (tmp_path / "krige.png").stat().st_size > 0


def test_krige_design_rows_interpolate(tmp_path):
    assert run(["krige", "--kernel", GAUSS2_K, "--N", 3, "--function", "f2",
                "--grid-size", 5, "--out", tmp_path]) == 0
    rows = (tmp_path / "krige.csv").read_text().splitlines()[1:]
    # grid 0,1/4,..,1 contains the design 0,1/2,1; those rows have zero
    # conditional variance
    by_x = {r.split(",")[0]: r.split(",") for r in rows}
    for x in ("0", "1/2", "1"):
        assert float(by_x[x][3]) == 0.0


def test_krige_band_variant_flag(tmp_path):
    assert run(["krige", "--kernel", GAUSS2_K, "--N", 5, "--function", "f1",
                "--grid-size", 21, "--band-variant", "standard",
                "--out", tmp_path]) == 0
    summary = read_json(tmp_path / "krige_summary.json")
    assert summary["band_variant"] == "standard"


def test_krige_function_forms(tmp_path):
    assert run(["krige", "--kernel", GAUSS2_K, "--N", 5,
                "--function", "repro:1/3", "--grid-size", 21,
                "--out", tmp_path]) == 0
    assert run(["krige", "--kernel", GAUSS2_K, "--N", 5,
                "--function", '{"poly":["1","0","-2"]}', "--grid-size", 21,
                "--out", tmp_path / "p"]) == 0


def test_krige_singular_kernel_exit_code(tmp_path):
    assert run(["krige", "--kernel", COSINE_K, "--N", 5, "--function", "f1",
                "--out", tmp_path]) == 2


# ---------------------------------------------------------------------------
# membership


def test_membership_verdicts(tmp_path):
    assert run(["membership", "--kernel", GAUSS15_K, "--function", "f2",
                "--N-schedule", "8,16,32,64", "--out", tmp_path]) == 0
    doc = read_json(tmp_path / "membership.json")
    assert doc["verdict"] == "consistent-with-nonmembership"
    assert len(doc["entries"]) == 4
    assert (tmp_path / "membership.png").stat().st_size > 0

    assert run(["membership", "--kernel", GAUSS2_K, "--function", "f1",
                "--N-schedule", "8,16,32,64", "--out", tmp_path / "m"]) == 0
    doc2 = read_json(tmp_path / "m" / "membership.json")
    assert doc2["verdict"] == "consistent-with-membership"


def test_membership_schedule_validation(tmp_path):
    assert run(["membership", "--kernel", GAUSS2_K, "--function", "f1",
                "--N-schedule", "8", "--out", tmp_path]) == 3
    assert run(["membership", "--kernel", GAUSS2_K, "--function", "f1",
                "--N-schedule", "32,8", "--out", tmp_path]) == 3


# ---------------------------------------------------------------------------
# config handling


def test_config_file_with_inline_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": json.loads(GAUSS), "n_max": 2}))
    out = tmp_path / "out"
    assert run(["variance-seq", "--config", cfg, "--n-max", 3, "--out", out]) == 0
    rows = (out / "variance_seq.csv").read_text().splitlines()
    assert len(rows) == 5  # inline n_max=3 wins over config n_max=2


def test_unknown_config_key_rejected(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": json.loads(GAUSS), "n_maks": 4}))
    assert run(["variance-seq", "--config", cfg, "--out", tmp_path]) == 3


def test_bad_family_parameter_exit_code(tmp_path):
    bad = '{"family":"gaussian","params":{"rate":"-1"}}'
    assert run(["variance-seq", "--family", bad, "--out", tmp_path]) == 3


def test_cap_enforced_and_raisable(tmp_path):
    assert run(["variance-seq", "--family", GAUSS, "--n-max", 99,
                "--out", tmp_path]) == 3
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"cap": 100}))
    assert run(["variance-seq", "--family", GAUSS, "--n-max", 70,
                "--config", cfg, "--out", tmp_path]) == 0


def test_unknown_command_exit_code(tmp_path, capsys):
    assert run(["frobnicate"]) == 3
    capsys.readouterr()


def test_missing_required_key(tmp_path):
    assert run(["variance-seq", "--out", tmp_path]) == 3


# ---------------------------------------------------------------------------
# output path resolution


def test_out_with_csv_suffix(tmp_path):
    target = tmp_path / "mine.csv"
    assert run(["variance-seq", "--family", GAUSS, "--n-max", 2,
                "--out", target]) == 0
    assert target.exists()
    assert (tmp_path / "mine_summary.json").exists()
    assert (tmp_path / "mine_manifest.json").exists()


def test_out_directory_created(tmp_path):
    nested = tmp_path / "a" / "b"
    assert run(["variance-seq", "--family", GAUSS, "--n-max", 2,
                "--out", nested]) == 0
    assert (nested / "variance_seq.csv").exists()


# ---------------------------------------------------------------------------
# determinism


def test_byte_identical_reruns(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run(["krige", "--kernel", GAUSS2_K, "--N", 7, "--function", "f2",
                    "--grid-size", 51, "--out", out]) == 0
    assert (a / "krige.csv").read_bytes() == (b / "krige.csv").read_bytes()
    assert (a / "krige_summary.json").read_bytes() == (b / "krige_summary.json").read_bytes()
    ma, mb = read_json(a / "krige_manifest.json"), read_json(b / "krige_manifest.json")
    ma.pop("wall_time_s"), mb.pop("wall_time_s")
    assert ma == mb


def test_precision_start_flag(tmp_path):
    assert run(["krige", "--kernel", GAUSS2_K, "--N", 5, "--function", "f1",
                "--grid-size", 11, "--precision-start", 128,
                "--out", tmp_path]) == 0
    summary = read_json(tmp_path / "krige_summary.json")
    assert summary["solve_precision_bits"] >= 128
