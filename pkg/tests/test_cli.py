import json
from fractions import Fraction as F

import pytest

from selmat.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.strip().splitlines()]


def test_config_echo_and_selberg(capsys):
    code, recs = run_cli(capsys, "selberg", "--n", "2", "--u", "1", "--w", "1", "--kappa", "1")
    assert code == 0
    assert recs[0]["config"]["command"] == "selberg"
    assert recs[1]["exact"] == "1/6"
    assert recs[1]["float"] == pytest.approx(1 / 6)


def test_selberg_gamma_output(capsys):
    code, recs = run_cli(capsys, "selberg", "--n", "2", "--u", "1/2", "--w", "1", "--kappa", "1")
    assert code == 0
    rec = recs[1]
    assert "exact_gamma" in rec or "exact" in rec
    assert rec["float"] > 0


def test_negcorr_example(capsys):
    code, recs = run_cli(capsys, "negcorr", "--field", "c", "--n", "10")
    assert code == 0
    rec = recs[1]
    assert rec["cross"] == "1/399"
    assert rec["same_row"] == "1/420"
    assert rec["second_moment_sq"] == "1/400"
    # exact strings parse back to the identical rational
    assert F(rec["cross"]) == F(1, 399)


def test_weingarten_example(capsys):
    code, recs = run_cli(
        capsys, "weingarten", "orthogonal", "--k", "2", "--coset-type", "2", "--z", "5"
    )
    assert code == 0
    assert recs[1]["exact"] == "-1/140"


def test_variance_with_limit(capsys):
    code, recs = run_cli(
        capsys, "variance", "--ensemble", "hermitian", "--convention", "paper",
        "--n-list", "10,20,40,80,160",
    )
    assert code == 0
    vals = [r for r in recs if "var" in r]
    assert len(vals) == 5
    assert F(vals[0]["var"]) == F(vals[0]["var"])  # round-trip parse
    limit = [r for r in recs if "extrapolated_limit" in r][0]
    assert limit["extrapolated_limit"] == pytest.approx(1 / 32, abs=1e-6)


def test_sigma_subcommand(capsys):
    code, recs = run_cli(
        capsys, "sigma", "--ensemble", "full-complex", "--n-list", "10,20,40"
    )
    assert code == 0
    limit = [r for r in recs if "extrapolated_limit" in r][0]
    assert limit["extrapolated_limit"] == pytest.approx(0.5, abs=1e-3)


def test_asympt_remark(capsys):
    code, recs = run_cli(capsys, "asympt", "--quantity", "remark", "--beta", "2", "--order", "0")
    assert code == 0
    assert recs[1]["laurent"][0] == "1/128"


def test_remark_beta_records(capsys):
    code, recs = run_cli(capsys, "remark-beta", "--beta", "6", "--n-list", "4,8")
    assert code == 0
    assert recs[-1]["constant_term"] == "1/384"
    assert recs[-1]["target_1_over_64beta"] == "1/384"


def test_jack_and_kadell(capsys):
    code, recs = run_cli(capsys, "jack", "expand", "--lam", "2", "--kappa", "1/2")
    assert code == 0
    assert recs[1]["coefficients"] == {"2": "1", "1,1": "2/3"}
    code, recs = run_cli(
        capsys, "kadell", "--lam", "1,1", "--n", "2", "--u", "1", "--w", "1", "--kappa", "1"
    )
    assert recs[1]["exact"] == "1/6"


def test_moments_and_covariance(capsys):
    code, recs = run_cli(capsys, "moments", "--ensemble", "hermitian", "--n", "4")
    assert code == 0
    assert recs[1]["convention"] == "forced"
    assert F(recs[1]["var"]) > 0
    code, recs = run_cli(capsys, "covariance", "--ensemble", "sym", "--n", "5")
    assert code == 0
    assert recs[1]["zero_pattern_exact"] is True


def test_oracle_quad(capsys):
    code, recs = run_cli(
        capsys, "oracle", "quad", "--kind", "selberg", "--n", "2",
        "--u", "1", "--w", "1", "--kappa", "1", "--payload", "one", "--points", "24",
    )
    assert code == 0
    assert recs[1]["value"] == pytest.approx(1 / 6, abs=1e-10)


def test_oracle_sample_and_haar(capsys):
    code, recs = run_cli(
        capsys, "oracle", "sample", "--ensemble", "symmetric", "--n", "2",
        "--count", "20000", "--seed", "4",
    )
    assert code == 0
    assert all("mean" in r for r in recs[1:])
    code, recs = run_cli(
        capsys, "oracle", "haar", "--group", "orthogonal", "--n", "4", "--count", "4000",
    )
    assert code == 0
    rec = recs[1]
    assert abs(rec["E_abs_U11_sq"] - 0.25) <= 5 * rec["stderr"]


def test_oracle_mcmc(capsys):
    code, recs = run_cli(
        capsys, "oracle", "mcmc", "--a", "1", "--b", "2", "--n", "3",
        "--steps", "1200", "--chains", "1", "--seed", "8", "--payload", "sum_sq",
    )
    assert code == 0
    assert recs[1]["payload"] == "sum_sq"


def test_csv_format(capsys):
    code = main(["--format", "csv", "negcorr", "--field", "r", "--n", "3"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.strip().splitlines()
    assert "cross" in lines[0]
    # cross = (n+1)/(n(2n+1)(2n+3)) = 4/189 and same_row = 1/63 at n = 3
    assert any("4/189" in ln and "1/63" in ln for ln in lines[1:])


def test_verify_cli_byte_determinism(capsys):
    main(["verify", "--criteria", "C2,C7,C9"])
    first = capsys.readouterr().out
    main(["verify", "--criteria", "C2,C7,C9"])
    second = capsys.readouterr().out
    assert first == second and len(first) > 200


def test_bad_flags_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["selberg", "--n", "2"])  # missing required flags
    assert exc.value.code == 2


def test_verify_fast_subset(capsys):
    code, recs = run_cli(capsys, "verify", "--criteria", "C2,C7")
    assert code == 0
    crits = [r["criterion"] for r in recs if "criterion" in r]
    assert crits == ["C2", "C7"]
    assert all(r["passed"] for r in recs if "criterion" in r)
    assert "summary" in recs[-1]
