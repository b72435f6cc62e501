# tests/80_cli/test_cli_main.py
"""End-to-end runs of the command-line driver."""

from pathlib import Path

import pytest

import impulsive_fronts.cli as mod_cli
from tests.utils import (
    DRY_SEASON_CONFIG,
    GOLDEN_DRY_SEASON_TAU3_50,
    GOLDEN_TOL,
    write_config_file,
)


QUIET = ["--log-level", "warning"]


def _report(text: str) -> dict[str, str]:
    pairs = (line.split(" = ", 1) for line in text.splitlines() if " = " in line)
    return {pair[0]: pair[1] for pair in pairs}


def test_eigen_on_a_wide_interval(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    """`eigen --l 100` prints lambda1 on (-50, 50)."""
    # --- setup ---
    cfg = write_config_file(tmp_path, DRY_SEASON_CONFIG)

    # --- execute ---
    code = mod_cli.main([*QUIET, "eigen", str(cfg), "--l", "100"])

    # --- verify ---
    report = _report(capsys.readouterr().out)
    assert code == 0
    assert float(report["l1"]) == -50.0
    assert float(report["lambda1"]) == pytest.approx(
        GOLDEN_DRY_SEASON_TAU3_50, abs=GOLDEN_TOL
    )


def test_eigen_limit_prints_nu1(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    """`eigen --limit` reports the large-interval limit."""
    # --- setup ---
    cfg = write_config_file(tmp_path, DRY_SEASON_CONFIG)

    # --- execute ---
    code = mod_cli.main([*QUIET, "eigen", str(cfg), "--limit"])

    # --- verify ---
    report = _report(capsys.readouterr().out)
    assert code == 0
    assert float(report["nu1"]) == pytest.approx(
        GOLDEN_DRY_SEASON_TAU3_50, abs=GOLDEN_TOL
    )
    assert report["case"] in {"EqualRatio", "Greater", "Less"}


def test_simulate_writes_the_run_outputs(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    """A short run leaves the config, CSVs, report and plot script."""
    # --- setup ---
    cfg = write_config_file(
        tmp_path, DRY_SEASON_CONFIG + "sim.N = 32\nsim.dt = 0.05\n"
    )
    out = tmp_path / "out"

    # --- execute ---
    code = mod_cli.main(
        [*QUIET, "--out", str(out), "simulate", str(cfg), "--horizon", "10"]
    )

    # --- verify ---
    assert code == 0
    for name in (
        "effective.cfg",
        "trajectory.csv",
        "periods.csv",
        "outcome.txt",
        "plot_tau3.py",
        "snapshots/index.csv",
    ):
        assert (out / name).is_file(), name
    outcome = (out / "outcome.txt").read_text(encoding="utf-8")
    assert outcome.startswith("verdict = ")
    assert "sim.horizon = 10.0" in (out / "effective.cfg").read_text(encoding="utf-8")
    assert f"output = {out}" in capsys.readouterr().out


def test_classify_writes_a_report(tmp_path: Path) -> None:
    """`classify` stores the verdict and evidence."""
    # --- setup ---
    cfg = write_config_file(tmp_path, DRY_SEASON_CONFIG)
    out = tmp_path / "out"

    # --- execute ---
    code = mod_cli.main([*QUIET, "--out", str(out), "classify", str(cfg)])

    # --- verify ---
    report = _report((out / "classify.txt").read_text(encoding="utf-8"))
    assert code == 0
    assert report["verdict"] in {"Spreading", "ThresholdRegime", "Vanishing"}
    assert "evidence.nu1" in report


def test_orbit_shortcut_on_a_short_interval(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    """lambda1 >= 0 on the interval gives the zero orbit without sweeping."""
    # --- setup ---
    text = DRY_SEASON_CONFIG.replace("tau = 3\n", "tau = 4.7\n")
    cfg = write_config_file(tmp_path, text + "orbit.N = 8\norbit.steps = 20\n")
    out = tmp_path / "out"

    # --- execute ---
    code = mod_cli.main(
        [*QUIET, "--out", str(out), "orbit", str(cfg), "--l1", "-1", "--l2", "1"]
    )

    # --- verify ---
    report = _report(capsys.readouterr().out)
    assert code == 0
    assert report["zero"] == "true"
    assert report["shortcut"] == "true"
    assert (out / "orbit_w.csv").is_file()


def test_solver_failure_exits_with_two(tmp_path: Path) -> None:
    """A monotone iteration that hits its sweep cap is a solver failure."""
    # --- setup ---
    extra = "orbit.N = 8\norbit.steps = 20\norbit.tol = 1e-14\norbit.max_sweeps = 1\n"
    cfg = write_config_file(tmp_path, DRY_SEASON_CONFIG + extra)

    # --- execute ---
    code = mod_cli.main(
        [
            *QUIET,
            "--out",
            str(tmp_path / "out"),
            "orbit",
            str(cfg),
            "--l1",
            "-10",
            "--l2",
            "10",
        ]
    )

    # --- verify ---
    assert code == 2


def test_unexpected_numeric_error_exits_with_two(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    """Arithmetic failures outside the solver hierarchy still exit with 2."""
    # --- setup ---
    cfg = write_config_file(tmp_path, DRY_SEASON_CONFIG)

    def broken(*_args: object) -> object:
        raise ZeroDivisionError

    monkeypatch.setattr(mod_cli, "lambda1_interval", broken)

    # --- execute ---
    code = mod_cli.main([*QUIET, "eigen", str(cfg), "--l", "4"])

    # --- verify ---
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["eigen"],
        ["--log-level", "chatty", "presets", "list"],
        ["eigen", "cfg", "--l", "5", "--limit"],
    ],
)
def test_usage_errors_exit_with_one(argv: list[str]) -> None:
    """argparse failures map to the usage exit status."""
    # --- execute and verify ---
    assert mod_cli.main(argv) == 1


def test_config_problems_exit_with_one(tmp_path: Path) -> None:
    """A missing file or an unknown key is a config error."""
    # --- setup ---
    bad = write_config_file(tmp_path, DRY_SEASON_CONFIG + "colour = red\n")

    # --- execute and verify ---
    assert mod_cli.main([*QUIET, "eigen", str(tmp_path / "missing.cfg")]) == 1
    assert mod_cli.main([*QUIET, "eigen", str(bad)]) == 1
    no_sweep = write_config_file(tmp_path, DRY_SEASON_CONFIG, "plain.cfg")
    assert mod_cli.main([*QUIET, "sweep", str(no_sweep)]) == 1


def test_version_exits_cleanly(capsys: pytest.CaptureFixture[str]) -> None:
    """--version prints the program name and returns 0."""
    # --- execute ---
    code = mod_cli.main([*QUIET, "--version"])

    # --- verify ---
    assert code == 0
    assert capsys.readouterr().out.startswith("impulsive-fronts ")


def test_presets_list_and_show(capsys: pytest.CaptureFixture[str]) -> None:
    """Preset names come out sorted; show prints the config text."""
    # --- execute ---
    list_code = mod_cli.main([*QUIET, "presets", "list"])
    names = capsys.readouterr().out.split()
    show_code = mod_cli.main([*QUIET, "presets", "show", "fig2a"])
    shown = capsys.readouterr().out

    # --- verify ---
    assert list_code == show_code == 0
    assert names == sorted(names)
    assert {"fig2a", "fig3-left", "fig4-right"} <= set(names)
    assert "sweep.axis = length" in shown


def test_unknown_preset_is_a_config_error() -> None:
    """Naming a preset that does not exist exits with 1."""
    # --- execute and verify ---
    assert mod_cli.main([*QUIET, "presets", "show", "fig9"]) == 1
    assert mod_cli.main([*QUIET, "presets", "run"]) == 1
