from __future__ import annotations

import numpy as np
import pytest

from effectprob.draws import validate
from effectprob.errors import (
    MissingColumn,
    NonBinaryTreatment,
    NonFiniteValue,
    ParseError,
    RaggedChains,
)
from effectprob.io import read_dataset, read_draws, write_dataset, write_draws
from effectprob.regress import Dataset, ModelSpec, fit, simulate_experiment


def random_finite_doubles(rng: np.random.Generator, n: int) -> np.ndarray:
    """Doubles drawn from raw bit patterns, filtered to finite values."""
    values = np.empty(n)
    filled = 0
    while filled < n:
        bits = rng.integers(0, 2**64, size=n, dtype=np.uint64)
        candidates = bits.view(np.float64)
        good = candidates[np.isfinite(candidates)]
        take = min(len(good), n - filled)
        values[filled : filled + take] = good[:take]
        filled += take
    return values


class TestDrawsRoundTrip:
    def test_small_file_shape(self, tmp_path):
        path = tmp_path / "d.csv"
        write_draws(validate({"a": [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]], "b": np.zeros((2, 3))}), path)
        d = read_draws(path)
        assert d.parameter_names == ("a", "b")
        assert d.chains == 2
        assert d.iterations_per_chain == 3

    def test_values_bit_exact(self, tmp_path):
        rng = np.random.default_rng(17)
        values = random_finite_doubles(rng, 10_000).reshape(2, 5_000)
        path = tmp_path / "d.csv"
        write_draws(validate({"x": values}), path)
        back = read_draws(path)
        assert back.values.tobytes() == values.reshape(1, 2, 5_000).tobytes()

    def test_seventeen_digit_print_parse(self):
        rng = np.random.default_rng(18)
        for x in random_finite_doubles(rng, 2_000):
            assert float(format(x, ".17g")) == x or (np.isnan(x) and np.isnan(float(format(x, ".17g"))))

    def test_header_order_matches_fit_parameters(self, tmp_path):
        data = simulate_experiment(20, 1.0, 0.5, 1.0, seed=0)
        result = fit(data, ModelSpec(chains=1, iterations=20, warmup=4, seed=0))
        path = tmp_path / "fit.csv"
        write_draws(result.draws, path)
        assert path.read_text().splitlines()[0] == "chain,iter,beta0,beta1,sigma"


class TestDrawsParser:
    def _write(self, tmp_path, text: str):
        path = tmp_path / "in.csv"
        path.write_text(text)
        return path

    def test_missing_iteration_named(self, tmp_path):
        path = self._write(tmp_path, "chain,iter,a\n1,1,0.5\n1,3,0.7\n")
        with pytest.raises(ParseError, match="expected iter 2, found 3"):
            read_draws(path)

    def test_noncontiguous_chain_block(self, tmp_path):
        path = self._write(tmp_path, "chain,iter,a\n1,1,0.5\n2,1,0.7\n1,2,0.9\n2,2,1.0\n")
        with pytest.raises(ParseError, match="not contiguous"):
            read_draws(path)

    def test_bad_header(self, tmp_path):
        path = self._write(tmp_path, "iter,chain,a\n1,1,0.5\n")
        with pytest.raises(ParseError):
            read_draws(path)

    def test_headers_without_parameters(self, tmp_path):
        path = self._write(tmp_path, "chain,iter\n1,1\n")
        with pytest.raises(ParseError):
            read_draws(path)

    def test_field_count_mismatch(self, tmp_path):
        path = self._write(tmp_path, "chain,iter,a\n1,1,0.5,9\n")
        with pytest.raises(ParseError, match="line 2"):
            read_draws(path)

    def test_ragged_chains_delegated(self, tmp_path):
        path = self._write(tmp_path, "chain,iter,a\n1,1,0.5\n1,2,0.6\n2,1,0.7\n")
        with pytest.raises(RaggedChains):
            read_draws(path)

    def test_nan_text_rejected(self, tmp_path):
        path = self._write(tmp_path, "chain,iter,a\n1,1,nan\n1,2,0.5\n")
        with pytest.raises(ParseError):
            read_draws(path)

    def test_fuzzed_single_field_corruption(self, tmp_path):
        rng = np.random.default_rng(19)
        d = validate({"a": rng.normal(size=(2, 5)), "b": rng.normal(size=(2, 5))})
        path = tmp_path / "good.csv"
        write_draws(d, path)
        good = path.read_text()
        lines = good.splitlines()
        for trial in range(60):
            row = int(rng.integers(1, len(lines)))
            fields = lines[row].split(",")
            col = int(rng.integers(0, len(fields)))
            corrupted = rng.choice(["x", "1.2.3", "--4", "0x1f", "1e", ""])
            mutated = lines.copy()
            fields[col] = str(corrupted)
            mutated[row] = ",".join(fields)
            bad = tmp_path / f"bad{trial}.csv"
            bad.write_text("\n".join(mutated) + "\n")
            with pytest.raises(ParseError):
                read_draws(bad)

    def test_underscored_number_not_coerced(self, tmp_path):
        # float("1_0") would silently parse; the grammar must reject it.
        path = self._write(tmp_path, "chain,iter,a\n1,1,1_0\n1,2,0.5\n")
        with pytest.raises(ParseError):
            read_draws(path)

    def test_overflowing_literal_surfaces_nonfinite(self, tmp_path):
        path = self._write(tmp_path, "chain,iter,a\n1,1,1e999\n1,2,0.5\n")
        with pytest.raises(NonFiniteValue):
            read_draws(path)


class TestDatasetFiles:
    def test_round_trip(self, tmp_path):
        data = simulate_experiment(25, 3.0, -1.0, 2.0, seed=4)
        path = tmp_path / "data.csv"
        write_dataset(data, path)
        back = read_dataset(path)
        assert np.array_equal(back.outcome, data.outcome)
        assert np.array_equal(back.treatment, data.treatment)

    def test_three_row_file(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("outcome,treatment\n1.5,0\n2.5,1\n3.5,0\n")
        data = read_dataset(path)
        assert data.n == 3
        assert data.treatment.tolist() == [0, 1, 0]

    def test_nonbinary_treatment(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("outcome,treatment\n1.5,0\n2.5,2\n3.5,0\n")
        with pytest.raises(NonBinaryTreatment, match="line 3"):
            read_dataset(path)

    def test_na_outcome_names_row(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("outcome,treatment\n1.5,0\nNA,1\n3.5,0\n")
        with pytest.raises(ParseError, match="line 3"):
            read_dataset(path)

    def test_missing_column(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("outcome,arm\n1.5,0\n")
        with pytest.raises(MissingColumn):
            read_dataset(path, "outcome", "treatment")

    def test_named_columns_located_anywhere(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("id,score,arm\n1,1.5,0\n2,2.5,1\n3,3.5,1\n")
        data = read_dataset(path, "score", "arm")
        assert data.outcome.tolist() == [1.5, 2.5, 3.5]
        assert data.treatment.tolist() == [0, 1, 1]
