"""Unit tests on synthetic CSVs: schemas, series counts, axis scales."""

import csv

import pytest

from cvqkd_figures import FIGURE_IDS, FigureSpec, SchemaError, render
from cvqkd_figures.render import PIE_COMPONENTS


def write_csv(path, columns, rows):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
    return str(path)


@pytest.fixture
def breakdown_csv(tmp_path):
    columns = ["distance_km", "total"] + list(PIE_COMPONENTS)
    rows = []
    for d in (10.0, 25.0, 50.0):
        parts = [1e-4 * (i + 1) for i in range(len(PIE_COMPONENTS))]
        rows.append([d, sum(parts)] + parts)
    return write_csv(tmp_path / "noise.csv", columns, rows)


@pytest.fixture
def sweep_csv(tmp_path):
    columns = ["sweep_value", "trust", "r_com_pe", "plob"]
    rows = []
    for x in (1.0, 5.0, 10.0):
        for i, trust in enumerate(("Eve0", "Eve1", "Eve5")):
            rows.append([x, trust, 0.5 / (x + i), 2.0 / x])
    return write_csv(tmp_path / "rates.csv", columns, rows)


@pytest.fixture
def orbit_csv(tmp_path):
    columns = ["trust", "slice_index", "theta_min", "theta_max", "r_com_pe"]
    rows = []
    for trust in ("Eve0", "Eve5"):
        for i in range(4):
            lo = -1.0 + i * 0.5
            rows.append([trust, i, lo, lo + 0.5, 0.01 * (i + 1)])
    return write_csv(tmp_path / "slices.csv", columns, rows)


@pytest.fixture
def daily_csv(tmp_path):
    columns = ["distance_km", "fiber_rep0", "fiber_rep3", "sat_eve0", "sat_eve5"]
    rows = [[d, 1e12 / d**3, 1e13 / d**2, 8.7e7, 2.6e7] for d in (100.0, 300.0, 900.0)]
    return write_csv(tmp_path / "daily.csv", columns, rows)


class TestSchemas:
    def test_empty_csv_rejected(self, tmp_path):
        path = write_csv(tmp_path / "empty.csv", ["distance_km", "raman"], [])
        with pytest.raises(SchemaError):
            render(FigureSpec(path, "fig5", tmp_path / "x.png"))

    def test_missing_columns_listed(self, tmp_path):
        path = write_csv(tmp_path / "bad.csv", ["distance_km"], [[1.0]])
        with pytest.raises(SchemaError) as err:
            render(FigureSpec(path, "fig7a", tmp_path / "x.png"))
        assert "trust" in err.value.missing
        assert "plob" in err.value.missing

    def test_unknown_figure_id(self, sweep_csv, tmp_path):
        with pytest.raises(SchemaError):
            render(FigureSpec(sweep_csv, "fig42", tmp_path / "x.png"))

    def test_fig9b_needs_both_series_families(self, tmp_path):
        path = write_csv(tmp_path / "d.csv", ["distance_km", "fiber_rep0"], [[100.0, 1e9]])
        with pytest.raises(SchemaError) as err:
            render(FigureSpec(path, "fig9b", tmp_path / "x.png"))
        assert "sat_*" in err.value.missing


class TestRendering:
    def test_fig5_single_series(self, breakdown_csv, tmp_path):
        out = tmp_path / "fig5.png"
        fig = render(FigureSpec(breakdown_csv, "fig5", out))
        assert out.exists()
        ax = fig.axes[0]
        assert len(ax.lines) == 1
        assert ax.get_yscale() == "linear"

    def test_fig6_single_series(self, breakdown_csv, tmp_path):
        fig = render(FigureSpec(breakdown_csv, "fig6", tmp_path / "fig6.png"))
        assert len(fig.axes[0].lines) == 1

    def test_fig7a_series_and_log_axis(self, sweep_csv, tmp_path):
        fig = render(FigureSpec(sweep_csv, "fig7a", tmp_path / "fig7a.png"))
        ax = fig.axes[0]
        assert len(ax.lines) == 4  # three trust levels + PLOB reference
        assert ax.get_yscale() == "log"
        labels = [line.get_label() for line in ax.lines]
        assert "PLOB" in labels

    def test_fig7b_no_plob_line(self, sweep_csv, tmp_path):
        fig = render(FigureSpec(sweep_csv, "fig7b", tmp_path / "fig7b.png"))
        ax = fig.axes[0]
        assert len(ax.lines) == 3
        assert ax.get_yscale() == "log"

    def test_fig8_pie_labels(self, breakdown_csv, tmp_path):
        fig = render(FigureSpec(breakdown_csv, "fig8a", tmp_path / "fig8a.png"))
        ax = fig.axes[0]
        texts = {t.get_text() for t in ax.texts}
        assert set(PIE_COMPONENTS) <= texts
        assert "25" in ax.get_title()
        fig_b = render(FigureSpec(breakdown_csv, "fig8b", tmp_path / "fig8b.png"))
        assert "50" in fig_b.axes[0].get_title()

    def test_fig9a_series_per_trust(self, orbit_csv, tmp_path):
        fig = render(FigureSpec(orbit_csv, "fig9a", tmp_path / "fig9a.png"))
        ax = fig.axes[0]
        assert len(ax.lines) == 2
        assert ax.get_yscale() == "log"
        # zenith midpoints are plotted in increasing order
        xs = ax.lines[0].get_xdata()
        assert all(a < b for a, b in zip(xs, xs[1:]))

    def test_fig9b_series_families(self, daily_csv, tmp_path):
        fig = render(FigureSpec(daily_csv, "fig9b", tmp_path / "fig9b.png"))
        ax = fig.axes[0]
        assert len(ax.lines) == 4  # two fiber curves + two satellite lines
        assert ax.get_yscale() == "log"

    def test_zero_rates_survive_log_axis(self, tmp_path):
        path = write_csv(
            tmp_path / "z.csv",
            ["sweep_value", "trust", "r_com_pe", "plob"],
            [[1.0, "Eve5", 0.0, 1.0], [2.0, "Eve5", 0.0, 0.5]],
        )
        fig = render(FigureSpec(path, "fig7a", tmp_path / "z.png"))
        assert (tmp_path / "z.png").exists()
        assert len(fig.axes[0].lines) == 2


class TestCli:
    def test_cli_renders(self, sweep_csv, tmp_path):
        from cvqkd_figures.cli import main

        out = tmp_path / "cli.png"
        assert main(["fig7a", "--csv", sweep_csv, "--out", str(out)]) == 0
        assert out.exists()

    def test_cli_schema_error_code(self, tmp_path):
        from cvqkd_figures.cli import main

        path = write_csv(tmp_path / "bad.csv", ["nope"], [[1.0]])
        assert main(["fig5", "--csv", path, "--out", str(tmp_path / "x.png")]) == 2

    def test_all_ids_have_subcommands(self):
        assert set(FIGURE_IDS) == {
            "fig5", "fig6", "fig7a", "fig7b", "fig8a", "fig8b", "fig9a", "fig9b"
        }
