import json

import pytest

from hartogs.cli import main
from hartogs.config import parse_config_text
from hartogs.domains import DomainKind
from hartogs.errors import ConfigError

DISC_CONFIG = """\
# the unit disc with the standard potential
base.kind = ball
base.dims = 1
base.mu = 1
fiber.dim = 1
scale.h = 1
"""

FOCK_CONFIG = """\
base.kind = fock
base.dims = 1
base.mu = 1
fiber.dim = 1
"""


class TestConfigParsing:
    def test_disc(self):
        parsed = parse_config_text(DISC_CONFIG)
        assert parsed.spec.base.kind is DomainKind.BALL
        assert parsed.spec.fiber_dim == 1
        assert parsed.facts is None

    def test_fraction_values(self):
        parsed = parse_config_text(
            "base.kind = ball\nbase.dims = 1\nbase.mu = 1/2\n"
        )
        assert parsed.spec.base.exponents == (0.5,)

    def test_polydisc_lists(self):
        parsed = parse_config_text(
            "base.kind = polydisc\nbase.dims = 1,1\nbase.mu = 1,2\n"
        )
        assert parsed.spec.base.dims == (1, 1)
        assert parsed.spec.base.exponents == (1.0, 2.0)

    def test_cartan_shape(self):
        parsed = parse_config_text(
            "base.kind = cartan_type_I\nbase.dims = 2,3\nbase.mu = 1\n"
        )
        assert parsed.spec.base.shape == (2, 3)
        assert parsed.spec.base.dim == 6

    def test_unknown_key_reports_line(self):
        with pytest.raises(ConfigError) as err:
            parse_config_text("base.kind = ball\nbase.colour = red\n")
        assert err.value.line == 2

    def test_syntax_error_reports_line(self):
        with pytest.raises(ConfigError) as err:
            parse_config_text("base.kind = ball\nnonsense line\n")
        assert err.value.line == 2

    def test_missing_required(self):
        with pytest.raises(ConfigError, match="base.mu"):
            parse_config_text("base.kind = ball\nbase.dims = 1\n")

    def test_bad_number(self):
        with pytest.raises(ConfigError) as err:
            parse_config_text("base.kind = ball\nbase.dims = 1\nbase.mu = abc\n")
        assert err.value.line == 3

    def test_user_facts(self):
        parsed = parse_config_text(
            "base.kind = ball\nbase.dims = 1\nbase.mu = 1\n"
            "facts.euclidean = yes\nfacts.hyperbolic = no\n"
        )
        assert parsed.facts is not None
        assert parsed.facts.euclidean == "yes"
        assert parsed.facts.hyperbolic_at(0.5) == "no"
        assert parsed.facts.provenance == "user_supplied"

    def test_override_warning(self):
        with pytest.warns(UserWarning):
            parse_config_text(
                "base.kind = ball\nbase.dims = 1\nbase.mu = 1\n"
                "base.einstein_constant = -1\n"
            )


@pytest.fixture()
def disc_config(tmp_path):
    path = tmp_path / "disc.cfg"
    path.write_text(DISC_CONFIG, encoding="utf-8")
    return path


@pytest.fixture()
def fock_config(tmp_path):
    path = tmp_path / "fock.cfg"
    path.write_text(FOCK_CONFIG, encoding="utf-8")
    return path


class TestCli:
    def test_check_einstein_yes(self, disc_config, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(
            ["check-einstein", "--config", str(disc_config), "--out", str(out),
             "--samples", "12"]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["is_einstein"] is True
        assert payload["schema"] == "1"
        assert payload["residual"] < 1e-3

    def test_check_einstein_no(self, fock_config, tmp_path):
        out = tmp_path / "report.json"
        code = main(
            ["check-einstein", "--config", str(fock_config), "--out", str(out),
             "--samples", "12"]
        )
        assert code == 2
        assert json.loads(out.read_text())["is_einstein"] is False

    def test_check_extremal_exit_codes(self, disc_config, fock_config, tmp_path):
        assert main(
            ["check-extremal", "--config", str(disc_config), "--samples", "12",
             "--out", str(tmp_path / "a.json")]
        ) == 0
        assert main(
            ["check-extremal", "--config", str(fock_config), "--samples", "12",
             "--out", str(tmp_path / "b.json")]
        ) == 2

    def test_immersion_not_exists(self, disc_config, tmp_path):
        out = tmp_path / "imm.json"
        code = main(
            ["immersion", "--config", str(disc_config), "--target", "CH",
             "--h", "1.5", "--out", str(out)]
        )
        assert code == 2
        payload = json.loads(out.read_text())
        verdict = payload["verdicts"][0]
        assert verdict["answer"] == "not_exists"
        assert "h > 1" in verdict["rule"]
        assert verdict["cross_check"]["agreement"] == "obstruction-found"

    def test_immersion_exists(self, disc_config, tmp_path):
        code = main(
            ["immersion", "--config", str(disc_config), "--target", "CH",
             "--h", "1", "--out", str(tmp_path / "imm.json")]
        )
        assert code == 0

    def test_curvature_csv(self, disc_config, tmp_path):
        out = tmp_path / "rows.csv"
        code = main(
            ["curvature", "--config", str(disc_config), "--samples", "5",
             "--format", "csv", "--out", str(out)]
        )
        assert code == 0
        header = out.read_text().splitlines()[0]
        for col in ("z0_0_re", "det_closed", "det_direct", "s_trace",
                    "s_closed", "einstein_residual", "extremal_residual"):
            assert col in header

    def test_curvature_seed_determinism(self, disc_config, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (a, b):
            main(["curvature", "--config", str(disc_config), "--samples", "5",
                  "--format", "csv", "--out", str(path)])
        assert a.read_bytes() == b.read_bytes()

    def test_diastasis_json(self, disc_config, tmp_path):
        out = tmp_path / "dia.json"
        code = main(
            ["diastasis", "--config", str(disc_config), "--h", "0.5,1,1.5",
             "--truncation", "6", "--out", str(out)]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert len(payload["verdicts"]) == 9  # 3 forms x 3 scales
        hyp = [
            v for v in payload["verdicts"]
            if v["form"] == "hyperbolic" and v["h"] == 1.5
        ]
        assert hyp[0]["first_failure"] == {"i": 2, "sigma": 2, "min_eig": -1.5}

    def test_diastasis_block_dump(self, disc_config, tmp_path):
        outdir = tmp_path / "blocks"
        code = main(
            ["diastasis", "--config", str(disc_config), "--h", "1.5",
             "--truncation", "3", "--format", "csv", "--out", str(outdir)]
        )
        assert code == 0
        assert (outdir / "hyperbolic_i2_sigma2.csv").exists()
        assert (outdir / "verdicts.json").exists()

    def test_report_runs(self, fock_config, tmp_path):
        out = tmp_path / "full.json"
        code = main(
            ["report", "--config", str(fock_config), "--samples", "10",
             "--h", "0.5,1", "--out", str(out)]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["curvature"]["is_einstein"] is False
        assert len(payload["immersion"]) == 12  # 6 targets x 2 scales

    def test_config_error_exit(self, tmp_path, capsys):
        bad = tmp_path / "bad.cfg"
        bad.write_text(
            "base.kind = ball\nbase.dims = 1\nbase.mu = oops\n", encoding="utf-8"
        )
        code = main(["check-einstein", "--config", str(bad)])
        assert code == 1
        assert "line 3" in capsys.readouterr().err

    def test_capability_error_exit(self, tmp_path, capsys):
        cfg = tmp_path / "cartan.cfg"
        cfg.write_text(
            "base.kind = cartan_type_I\nbase.dims = 2,2\nbase.mu = 1\n",
            encoding="utf-8",
        )
        code = main(["diastasis", "--config", str(cfg)])
        assert code == 1
        assert "unsupported" in capsys.readouterr().err
