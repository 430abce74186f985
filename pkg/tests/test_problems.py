import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from momo.problems import (
    MissingReferenceError,
    OutOfBoundsError,
    evaluate,
    generate_reference,
    get_problem,
    list_problems,
    load_reference,
    write_reference,
)
from momo.problems.reference import subset_shares
from oracles import SCALAR

# name: (PSS, D, M, PF geometry)
TABLE = {
    "MMF1": (2, 2, 2, "convex"),
    "MMF2": (2, 2, 2, "convex"),
    "MMF3": (2, 2, 2, "convex"),
    "MMF4": (4, 2, 2, "concave"),
    "MMF5": (4, 2, 2, "convex"),
    "MMF6": (4, 2, 2, "convex"),
    "MMF7": (2, 2, 2, "convex"),
    "MMF8": (4, 2, 2, "concave"),
    "SYM-PART-Simple": (9, 2, 2, "convex"),
    "SYM-PART-Rotated": (9, 2, 2, "convex"),
    "Omni-test": (9, 2, 2, "convex"),
    "MMMOP1A": (5, 3, 2, "linear"),
    "MMMOP2A": (6, 3, 2, "concave"),
    "MMMOP3A": (3, 2, 2, "concave"),
    "MMMOP4A": (4, 2, 2, "concave"),
    "MMMOP5A": (4, 2, 2, "concave"),
    "MMMOP6A": (2, 2, 2, "concave"),
    "IDMP-M2-T1": (2, 2, 2, "linear"),
    "IDMP-M2-T2": (2, 2, 2, "linear"),
    "IDMP-M2-T3": (2, 2, 2, "linear"),
    "IDMP-M2-T4": (2, 2, 2, "linear"),
}
SIZES = {"SYM-PART-Simple": 999, "SYM-PART-Rotated": 999, "Omni-test": 999, "MMMOP3A": 999, "MMMOP2A": 1002}
NAMES = list(TABLE)
GOLDEN = json.loads((Path(__file__).parent / "data" / "golden_problems.json").read_text())


def dominated_with_margin(F, by, eps):
    """Rows of F that stay dominated by a row of ``by`` after moving ``eps`` towards the ideal point."""
    return np.any(np.all(by[None, :, :] <= F[:, None, :] - eps, axis=2), axis=1)


@pytest.fixture(scope="module")
def references():
    return {p.name: generate_reference(p) for p in list_problems()}


def test_registry_matches_table():
    problems = list_problems()
    assert len(problems) == 21
    assert [p.name for p in problems] == NAMES
    for p in problems:
        assert (p.pss_count, p.D, p.M, p.pf_geometry) == TABLE[p.name]
        assert p.ref_size == SIZES.get(p.name, 1000)
        assert p.provenance


def test_lookup_is_lenient():
    assert get_problem("sym-part simple").name == "SYM-PART-Simple"
    assert get_problem("omni").name == "Omni-test"
    assert get_problem("mmmop1a").D == 3
    with pytest.raises(KeyError):
        get_problem("ZDT1")


def test_omni_hand_value():
    assert evaluate(get_problem("Omni-test"), [0.5, 0.5]) == pytest.approx([2.0, 0.0], abs=1e-15)


@pytest.mark.parametrize("name", NAMES)
def test_golden_values(name):
    p = get_problem(name)
    X = np.array([c["x"] for c in GOLDEN[name]])
    F = np.array([c["f"] for c in GOLDEN[name]])
    assert np.allclose(p.evaluate_many(X), F, rtol=0, atol=1e-12)


@pytest.mark.parametrize("name", NAMES)
def test_matches_scalar_transcription(name):
    p = get_problem(name)
    rng = np.random.default_rng(abs(hash(name)) % 2**32)
    X = p.bounds.lower + rng.random((200, p.D)) * (p.bounds.upper - p.bounds.lower)
    F = p.evaluate_many(X)
    expected = np.array([SCALAR[name](list(x)) for x in X])
    assert np.allclose(F, expected, rtol=0, atol=1e-12)


@pytest.mark.parametrize("name", NAMES)
def test_evaluate_is_pure_and_checks_bounds(name):
    p = get_problem(name)
    x = (p.bounds.lower + p.bounds.upper) / 2
    assert np.array_equal(evaluate(p, x), evaluate(p, x))
    assert evaluate(p, x).shape == (p.M,)
    with pytest.raises(OutOfBoundsError):
        evaluate(p, p.bounds.upper + 1.0)
    with pytest.raises(ValueError):
        evaluate(p, np.zeros(p.D + 1))


@pytest.mark.parametrize("name", NAMES)
def test_reference_sizes_and_balance(name, references):
    p = get_problem(name)
    ref = references[name]
    assert len(ref.ps_points) == len(ref.pf_points) == SIZES.get(name, 1000)
    counts = np.bincount(ref.subset_ids, minlength=p.pss_count)
    assert counts.max() - counts.min() <= 1
    assert ref.ps_points.shape[1] == p.D and ref.pf_points.shape[1] == p.M


def test_reference_examples(references):
    assert np.bincount(references["SYM-PART-Simple"].subset_ids).tolist() == [111] * 9
    assert len(references["MMMOP2A"].ps_points) == 1002
    assert np.bincount(references["IDMP-M2-T1"].subset_ids).tolist() == [500, 500]


@pytest.mark.parametrize("name", NAMES)
def test_reference_ps_maps_onto_front(name, references):
    p = get_problem(name)
    ref = references[name]
    F = p.evaluate_many(ref.ps_points)
    assert np.max(np.abs(p.pf_residual(F))) <= 1e-9
    assert not np.any(dominated_with_margin(F, ref.pf_points, 1e-6))
    assert not np.any(dominated_with_margin(F, F, 1e-9))


def test_subsets_are_distinct_regions(references):
    ref = references["SYM-PART-Simple"]
    centres = np.array([ref.ps_points[ref.subset_ids == i].mean(axis=0) for i in range(9)])
    gaps = np.linalg.norm(centres[:, None] - centres[None], axis=2) + np.eye(9) * 99
    assert gaps.min() > 5


@given(st.floats(-1, 1), st.floats(-0.5, 0.5), st.sampled_from([-1, 0, 1]), st.sampled_from([-1, 0, 1]))
def test_sympart_tile_translation(p1, p2, t1, t2):
    p = get_problem("SYM-PART-Simple")
    base = evaluate(p, [p1, p2])
    moved = evaluate(p, [p1 + 10 * t1, p2 + 10 * t2])
    assert np.allclose(base, moved, atol=1e-9)


def test_subset_shares():
    assert subset_shares(999, 9) == [111] * 9
    assert subset_shares(1000, 3) == [334, 333, 333]


def test_reference_files_round_trip(tmp_path, monkeypatch):
    p = get_problem("MMF1")
    write_reference(p, tmp_path)
    assert (tmp_path / "ps_MMF1.csv").is_file() and (tmp_path / "pf_MMF1.csv").is_file()
    first = (tmp_path / "ps_MMF1.csv").read_text()
    assert "," in first and not first.startswith("x")
    monkeypatch.setenv("MOMO_REFSET_DIR", str(tmp_path))
    loaded = load_reference(p)
    assert np.array_equal(loaded.ps_points, generate_reference(p).ps_points)
    with pytest.raises(MissingReferenceError):
        load_reference(get_problem("MMF2"))


def test_shipped_reference_sets_are_current():
    for p in list_problems():
        shipped = load_reference(p)
        fresh = generate_reference(p)
        assert np.array_equal(shipped.ps_points, fresh.ps_points), p.name
        assert np.array_equal(shipped.pf_points, fresh.pf_points), p.name
