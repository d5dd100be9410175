"""
Unit tests for graph node functions
"""
import pytest
from fractions import Fraction
from unittest.mock import patch

from src.graph_nodes.graph_edges import moments_ready, schedule_exhausted, should_continue
from src.graph_nodes.node_functions import (
    DEFAULT_DEGREES,
    DEFAULT_TOLERANCE,
    compute_moments_node_func,
    finalize_node_func,
    grade_convergence_node_func,
    handle_failure_node_func,
    reconstruct_node_func,
    start_node_func,
)
from src.momentdensity.legendre import SupportInterval
from src.utils.errors import PoleError

SUPPORT = SupportInterval()


def uniform_moments(order):
    """Raw moments of the uniform law on the default support."""
    lo, hi = SUPPORT.lo, SUPPORT.hi
    return [(hi ** (n + 1) - lo ** (n + 1)) / ((n + 1) * (hi - lo)) for n in range(order + 1)]


def make_state(**overrides):
    """A state as it looks after the start node."""
    state = {
        "kind": "diff",
        "k": 0,
        "alpha": Fraction(1),
        "support": SUPPORT,
        "target": None,
        "precision_bits": 64,
        "degrees": [2, 4],
        "degree_index": 0,
        "tolerance": 1e-3,
        "moments": uniform_moments(4),
        "history": [],
        "decision_trail": [],
        "decision": "CONTINUE",
    }
    state.update(overrides)
    return state


def test_start_node_func():
    """Test that start_node_func initializes state correctly."""
    initial_state = {"kind": "diff", "k": 0, "alpha": Fraction(1), "degrees": [32, 16, 32]}

    result = start_node_func(initial_state)

    assert result["degrees"] == [16, 32], "degrees should be sorted and deduplicated"
    assert result["degree_index"] == 0
    assert result["tolerance"] == DEFAULT_TOLERANCE
    assert result["history"] == []
    assert result["decision"] == "CONTINUE"
    assert result["tail_probability"] is None
    assert result["is_finished"] is False


def test_start_node_func_defaults():
    """Test the default degree schedule."""
    result = start_node_func({"kind": "diff", "k": 0, "alpha": Fraction(1), "tolerance": 0.1})
    assert result["degrees"] == DEFAULT_DEGREES
    assert result["tolerance"] == 0.1


def test_compute_moments_node_func():
    """Test that moments are computed up to the largest degree."""
    result = compute_moments_node_func(make_state(degrees=[2, 3], moments=[]))

    assert len(result["moments"]) == 4
    assert result["moments"][0] == 1
    assert result["moments"][1] == Fraction(-2, 969)
    assert "4 computed" in result["decision_trail"][0]


def test_compute_moments_node_func_rejects_ptdet_with_k():
    """Test that an invalid moment request fails the study."""
    result = compute_moments_node_func(make_state(kind="ptdet", k=2))

    assert result["success"] is False
    assert result["decision"] == "FAIL"


@patch('src.graph_nodes.node_functions.moment_sequence')
def test_compute_moments_node_func_pole(mock_moments):
    """Test that a pole in the moment formula is reported as a failure."""
    mock_moments.side_effect = PoleError("(k+3a+3/2)_n vanishes")

    result = compute_moments_node_func(make_state())

    assert result["decision"] == "FAIL"
    assert "vanishes" in result["error"]


def test_reconstruct_node_func():
    """Test one reconstruction against a known target."""
    result = reconstruct_node_func(make_state(target=1 / 17))

    entry = result["history"][0]
    assert entry["degree"] == 2
    assert entry["tail"] == pytest.approx(1 / 17)
    assert entry["error"] < 1e-12
    assert result["tail_probability"] == entry["tail"]


def test_reconstruct_node_func_without_target():
    """Test that the error is absent when no target is known."""
    result = reconstruct_node_func(make_state(degree_index=1))
    assert result["history"][0]["degree"] == 4
    assert result["history"][0]["error"] is None


def test_reconstruct_node_func_failure():
    """Test that too few moments fail the reconstruction."""
    result = reconstruct_node_func(make_state(moments=uniform_moments(1)))
    assert result["decision"] == "FAIL"
    assert result["success"] is False


def test_grade_convergence_against_target():
    """Test grading by the distance to the target."""
    state = make_state(history=[{"degree": 2, "tail": 0.1, "error": 1e-4}])
    result = grade_convergence_node_func(state)

    assert result["decision"] == "FINISH"
    assert result["converged"] is True
    assert result["degree_index"] == 1


def test_grade_convergence_by_successive_degrees():
    """Test grading by the change between successive degrees."""
    first = grade_convergence_node_func(make_state(history=[{"degree": 2, "tail": 0.1, "error": None}]))
    assert first["decision"] == "CONTINUE"
    assert "no previous degree" in first["decision_trail"][0]

    history = [{"degree": 2, "tail": 0.1, "error": None}, {"degree": 4, "tail": 0.1005, "error": None}]
    second = grade_convergence_node_func(make_state(history=history, degree_index=1))
    assert second["decision"] == "FINISH"
    assert second["degree_index"] == 2


def test_grade_convergence_skips_after_failure():
    """Test that a failed state is left alone."""
    assert grade_convergence_node_func(make_state(decision="FAIL")) == {}


def test_finalize_node_func():
    """Test the final report."""
    state = make_state(history=[{"degree": 4, "tail": 0.25, "error": None}], converged=False)
    result = finalize_node_func(state)

    assert result["tail_probability"] == 0.25
    assert result["is_finished"] is True
    assert result["decision_trail"] == ["finish: schedule exhausted"]


def test_handle_failure_node_func():
    """Test the failure report."""
    result = handle_failure_node_func(make_state(error="boom"))
    assert result["success"] is False
    assert result["is_finished"] is True


def test_edges():
    """Test routing after the moment computation and after grading."""
    assert moments_ready({"decision": "FAIL"}) == "handle_failure"
    assert moments_ready({"decision": "CONTINUE"}) == "reconstruct"

    assert should_continue({"decision": "FAIL", "degrees": [2], "degree_index": 0}) == "handle_failure"
    assert should_continue({"decision": "FINISH", "degrees": [2, 4], "degree_index": 1}) == "finalize"
    assert should_continue({"decision": "CONTINUE", "degrees": [2, 4], "degree_index": 2}) == "finalize"
    assert should_continue({"decision": "CONTINUE", "degrees": [2, 4], "degree_index": 1}) == "reconstruct"

    assert schedule_exhausted({"degrees": [], "degree_index": 0})
