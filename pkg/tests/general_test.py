"""Test shared helpers."""
import logging
from fractions import Fraction
import pytest
from subtree_order import general


_LOGGER = logging.getLogger(__name__)


def test_chunked():
    """Test that the last chunk is not padded."""
    assert list(general.chunked(range(7), 3)) == [[0, 1, 2], [3, 4, 5], [6]]
    assert list(general.chunked([], 3)) == []
    with pytest.raises(ValueError):
        list(general.chunked(range(3), 0))


@pytest.mark.parametrize(
    "value,expected",
    [
        (Fraction(161, 33), "161/33 (~4.878788)"),
        (2, "2/1 (~2.000000)"),
        (general.ExactRatio(-6, 4), "-3/2 (~-1.500000)"),
    ],
    ids=str,
)
def test_format_ratio(value, expected):
    """Test exact rendering with a decimal approximation."""
    assert general.format_ratio(value) == expected


def test_format_exact():
    """Test rendering without a decimal."""
    assert general.format_exact(Fraction(779, 159)) == "779/159"


@pytest.mark.parametrize("mask,count", [(0, 0), (1, 1), (0b1011, 3)], ids=str)
def test_popcount(mask, count):
    """Test bit counting."""
    assert general.popcount(mask) == count


@pytest.mark.parametrize("jobs", [0, -1, 1.5], ids=str)
def test_resolve_jobs_rejects(jobs):
    """Test worker count validation."""
    with pytest.raises(ValueError):
        general.resolve_jobs(jobs)


def test_resolve_jobs_default():
    """Test that no worker count means at least one worker."""
    assert general.resolve_jobs(None) >= 1
    assert general.resolve_jobs(3) == 3


@pytest.mark.parametrize("jobs", [1, 2], ids=str)
def test_parallel_map_order(jobs):
    """Test that results come back in submission order."""
    masks = list(range(50))
    expected = [general.popcount(mask) for mask in masks]
    assert list(general.parallel_map(general.popcount, masks, jobs)) == (
        expected
    )
