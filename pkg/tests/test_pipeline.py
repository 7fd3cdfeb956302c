# ABOUTME: Tests for the classification pipeline
# ABOUTME: Verifies concurrent spec building, deterministic merging, certification and cataloguing

from functools import lru_cache
from itertools import permutations, product
from unittest.mock import patch

import pytest

from brachyon.braces import brace_isomorphism, trivial_brace
from brachyon.config import Config
from brachyon.db import load_solutions
from brachyon.pipeline import ClassificationPipeline, classify_solutions, run_classification
from brachyon.solutions import InvalidSolution, Solution, flip_solution, permutation_brace, solution_isomorphism
from brachyon.standard import cyclic_group


@pytest.fixture
def z2_brace():
    return trivial_brace(cyclic_group(2))


@pytest.fixture
def test_config():
    """Small caps so every test classification stays tiny."""
    return Config(max_families_per_orbit=1, max_solution_size=2, jobs=2)


@pytest.mark.asyncio
async def test_pipeline_classifies_z2_solutions_of_size_two(test_config, z2_brace):
    """Test that the three order-2 subgroups give three non-isomorphic two-point solutions."""
    pipeline = ClassificationPipeline(test_config)
    result = await pipeline.classify(z2_brace)

    assert result.built == 3
    assert [S.size for S in result.solutions] == [2, 2, 2]
    assert len(result.specs) == len(result.solutions)
    assert result.catalog_id is None
    keys = [S.sort_key() for S in result.solutions]
    assert keys == sorted(keys)


@pytest.mark.asyncio
async def test_output_does_not_depend_on_jobs(z2_brace):
    """Test that one job and four jobs keep the same solutions in the same order."""
    serial = await ClassificationPipeline(Config(max_families_per_orbit=2, max_solution_size=4, jobs=1)).classify(
        z2_brace
    )
    parallel = await ClassificationPipeline(Config(max_families_per_orbit=2, max_solution_size=4, jobs=4)).classify(
        z2_brace
    )

    assert serial.solutions == parallel.solutions
    assert serial.built == parallel.built
    assert serial.certified == parallel.certified


@pytest.mark.asyncio
async def test_merged_specs_are_certified(z2_brace):
    """Test that kept solutions are pairwise non-isomorphic and certificates only cover merged specs."""
    result = await ClassificationPipeline(Config(max_families_per_orbit=2, max_solution_size=4)).classify(z2_brace)

    merged = result.built - len(result.solutions)
    assert 0 <= result.certified <= merged
    for i, S in enumerate(result.solutions):
        for T in result.solutions[:i]:
            assert S.size != T.size or solution_isomorphism(S, T) is None


@pytest.mark.asyncio
async def test_build_errors_propagate(test_config, z2_brace):
    """Test that a failing build is logged and re-raised."""
    with patch("brachyon.pipeline.build_solution", side_effect=RuntimeError("boom")):
        with pytest.raises(RuntimeError, match="boom"):
            await ClassificationPipeline(test_config).classify(z2_brace)


@pytest.mark.asyncio
async def test_catalogue_is_written_when_configured(tmp_path, test_config, z2_brace):
    """Test that a configured catalogue receives the kept solutions."""
    test_config.catalog_path = str(tmp_path / "catalog.db")
    result = await ClassificationPipeline(test_config).classify(z2_brace, name="z2")

    assert result.catalog_id is not None
    assert load_solutions(test_config.catalog_path, result.catalog_id) == result.solutions


@pytest.mark.asyncio
async def test_catalogue_failure_is_logged_not_raised(tmp_path, test_config, z2_brace):
    """Test that a storage error leaves the classification intact."""
    test_config.catalog_path = str(tmp_path / "catalog.db")
    with patch("brachyon.pipeline.store_classification", side_effect=OSError("disk full")):
        result = await ClassificationPipeline(test_config).classify(z2_brace)

    assert result.catalog_id is None
    assert len(result.solutions) == 3


def test_run_classification_of_one_point_brace():
    """Test that the order-1 brace classifies to the one-point solution."""
    B = trivial_brace(cyclic_group(1))
    result = run_classification(B, Config(max_families_per_orbit=1))
    assert result.solutions == [flip_solution(1)]


def test_classify_solutions_overrides_do_not_touch_config(z2_brace):
    """Test that keyword caps apply to the run only."""
    config = Config(max_families_per_orbit=2)
    solutions = classify_solutions(z2_brace, config, max_size=2, max_families=1)
    assert len(solutions) == 3
    assert config.max_families_per_orbit == 2


@lru_cache(maxsize=None)
def _nondegenerate_solutions(n):
    rows = list(permutations(range(n)))
    found = []
    for F in product(rows, repeat=n):
        for Gt in product(rows, repeat=n):
            try:
                found.append(Solution(F, Gt))
            except InvalidSolution:
                continue
    return found


def _brute_force(max_size, brace):
    found = []
    for n in range(1, max_size + 1):
        for S in _nondegenerate_solutions(n):
            if brace_isomorphism(permutation_brace(S).brace, brace) is None:
                continue
            if all(solution_isomorphism(S, T) is None for T in found if T.size == n):
                found.append(S)
    return found


@pytest.mark.parametrize("order, max_size, count", [(2, 2, None), (2, 3, None), (3, 3, 4)])
def test_classification_matches_brute_force(order, max_size, count):
    """Test that every small solution with a trivial cyclic permutation brace is classified exactly once."""
    brace = trivial_brace(cyclic_group(order))
    expected = _brute_force(max_size, brace)
    classified = classify_solutions(brace, max_size=max_size, max_families=max_size)

    assert expected
    assert count is None or len(expected) == count
    assert len(classified) == len(expected)
    for S in expected:
        assert sum(solution_isomorphism(S, T) is not None for T in classified if T.size == S.size) == 1
