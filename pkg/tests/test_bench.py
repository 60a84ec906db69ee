import pytest

from genjac.bench import CSV_HEADER, BenchInvariantError, run_benchmark

# frozen run: seed 2, 6 trials, 6-bit scalars, toy params seed 7
PINNED_CSV = """\
label,group,trials,skipped,scalar_bits,muls_median,muls_min,muls_max,elem_chars_median,ms_median
jacobian,extension of E(F_11^2) by Gm(F_11^2) [generalized-jacobian(8;3;4;3 ; 6;4;10;1)],6,0,6,79.5,25,169,11.5,
product,extension of E(F_11^2) by Gm(F_11^2) [zero],6,0,6,26.5,14,45,12,
curve,E(F_11^2),6,0,6,10.5,0,29,7.5,
units,Gm(F_11^2),6,0,6,7.5,7,9,3.5,"""


def test_pinned_csv(toy):
    report = run_benchmark(toy, trials=6, scalar_bits=6, seed=2)
    assert report.csv() == PINNED_CSV


def test_csv_deterministic_for_fixed_seed(toy):
    a = run_benchmark(toy, trials=5, scalar_bits=5, seed=9)
    b = run_benchmark(toy, trials=5, scalar_bits=5, seed=9)
    assert a.csv() == b.csv()
    assert a.csv(include_time=True) != ""


def test_time_column_only_difference(toy):
    report = run_benchmark(toy, trials=5, scalar_bits=5, seed=9)
    plain = report.csv().splitlines()
    timed = report.csv(include_time=True).splitlines()
    assert plain[0] == timed[0] == CSV_HEADER
    for p, t in zip(plain[1:], timed[1:]):
        assert p.endswith(",")
        assert t.rsplit(",", 1)[0] == p.rsplit(",", 1)[0]
        assert float(t.rsplit(",", 1)[1]) >= 0.0


def test_row_structure(toy):
    report = run_benchmark(toy, trials=5, scalar_bits=6, seed=4)
    labels = [row.label for row in report.rows]
    assert labels == ["jacobian", "product", "curve", "units"]
    for row in report.rows:
        assert row.trials == 5
        assert row.scalar_bits == 6
        assert row.muls_min <= row.muls_median <= row.muls_max
        assert "," not in row.group  # descriptions are CSV-safe
    assert report.prng == "mt19937"
    assert report.seed == 4


def test_cost_ordering_across_seeds(toy):
    # strict mode already asserts per trial; check the medians end to end
    for seed in (0, 1, 2):
        report = run_benchmark(toy, trials=6, scalar_bits=7, seed=seed)
        by_label = {row.label: row for row in report.rows}
        assert by_label["jacobian"].muls_median >= by_label["product"].muls_median
        assert (
            by_label["product"].muls_median
            >= by_label["curve"].muls_median + by_label["units"].muls_median
        )
        # the extension element carries both components
        assert by_label["jacobian"].elem_chars_median > by_label["curve"].elem_chars_median
        assert by_label["jacobian"].elem_chars_median > by_label["units"].elem_chars_median


def test_argument_validation(toy):
    with pytest.raises(ValueError):
        run_benchmark(toy, trials=4)
    with pytest.raises(ValueError):
        run_benchmark(toy, scalar_bits=1)


def test_invariant_error_is_exported():
    assert issubclass(BenchInvariantError, Exception)
