from __future__ import annotations

import numpy as np
import pytest

from effectprob.draws import validate, view
from effectprob.errors import (
    DuplicateParameter,
    InvalidDraws,
    NonFiniteValue,
    RaggedChains,
    UnknownParameter,
)


class TestValidate:
    def test_minimal_well_formed(self):
        d = validate({"a": [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]})
        assert d.parameter_names == ("a",)
        assert d.chains == 2
        assert d.iterations_per_chain == 3
        assert view(d, "a").pooled.shape == (6,)

    def test_single_chain_accepted_as_1d(self):
        d = validate({"a": [1.0, 2.0, 3.0]})
        assert d.chains == 1
        assert d.iterations_per_chain == 3

    def test_nan_rejected(self):
        with pytest.raises(NonFiniteValue):
            validate({"a": [[1.0, np.nan, 3.0]]})

    def test_infinity_rejected(self):
        with pytest.raises(NonFiniteValue):
            validate({"a": [[1.0, np.inf, 3.0]]})

    def test_ragged_chains_rejected(self):
        with pytest.raises(RaggedChains):
            validate({"a": [list(range(10)), list(range(9))]})

    def test_mismatched_layout_across_parameters(self):
        with pytest.raises(RaggedChains):
            validate({"a": [[1.0, 2.0, 3.0]], "b": [[1.0, 2.0]]})

    def test_duplicate_parameter(self):
        with pytest.raises(DuplicateParameter):
            validate([("a", [[1.0, 2.0]]), ("a", [[3.0, 4.0]])])

    def test_empty_name_rejected(self):
        with pytest.raises(InvalidDraws):
            validate({"": [[1.0, 2.0]]})

    def test_no_parameters_rejected(self):
        with pytest.raises(InvalidDraws):
            validate({})

    def test_single_iteration_rejected(self):
        with pytest.raises(InvalidDraws):
            validate({"a": [[1.0]]})

    def test_values_read_only(self):
        d = validate({"a": [[1.0, 2.0]]})
        with pytest.raises(ValueError):
            d.values[0, 0, 0] = 9.0


class TestView:
    def test_pooled_is_chain_major_concatenation(self):
        d = validate({"b1": [[1.0, 2.0], [3.0, 4.0]]})
        assert view(d, "b1").pooled.tolist() == [1.0, 2.0, 3.0, 4.0]

    def test_unknown_parameter(self):
        d = validate({"b1": [[1.0, 2.0]]})
        with pytest.raises(UnknownParameter):
            view(d, "beta9")

    def test_single_chain_pooled_identical(self):
        d = validate({"b1": [[1.5, 2.5, 3.5]]})
        v = view(d, "b1")
        assert v.pooled.tolist() == v.per_chain[0].tolist()

    def test_pooled_length_invariant(self):
        rng = np.random.default_rng(0)
        d = validate({n: rng.normal(size=(3, 7)) for n in ("a", "b", "c")})
        for n in d.parameter_names:
            assert view(d, n).pooled.shape == (d.chains * d.iterations_per_chain,)

    def test_values_unaltered(self):
        block = np.array([[1.25, -2.5], [0.75, 3.125]])
        d = validate({"a": block})
        assert np.array_equal(view(d, "a").per_chain, block)
