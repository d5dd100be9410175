"""
Unit tests for ReconstructionStudy
"""
import math

import pytest
from fractions import Fraction
from unittest.mock import patch, MagicMock

from src.momentdensity.moments import MomentKind
from src.study import ReconstructionStudy, closed_target


def test_closed_target():
    """Test the closed-form targets of the two moment families."""
    assert closed_target(MomentKind.DIFF, 0, Fraction(1)) == pytest.approx(4 / 33)
    assert closed_target(MomentKind.PTDET, 0, Fraction(1)) == pytest.approx(8 / 33)
    assert closed_target(MomentKind.PTDET, 0, Fraction(1, 3)) is None


def test_study_lazy_init():
    """Test that lazy initialization defers the graph."""
    study = ReconstructionStudy(lazy_init=True)
    assert study.graph is None


def test_study_rejects_bad_kind():
    """Test that unknown and sign-free moment families are refused."""
    study = ReconstructionStudy(lazy_init=True)

    result = study.run("det", 0, 1)
    assert result["success"] is False
    assert "no sign change" in result["error"]

    result = study.run("volume", 0, 1)
    assert result["success"] is False
    assert study.graph is None, "the graph should not be built for an invalid request"


@patch('src.graph_builder.invoke_graph')
def test_study_run_shapes_result(mock_invoke):
    """Test that the final state is reported with the request parameters."""
    mock_invoke.return_value = {
        "success": True,
        "tail_probability": 0.12,
        "converged": True,
        "history": [{"degree": 16, "tail": 0.12, "error": 0.001}],
        "decision_trail": ["finish: converged"],
        "runtime": {"runtime_formatted": "0.01 seconds"},
    }
    study = ReconstructionStudy(lazy_init=True)
    study.graph = MagicMock()

    result = study.run("diff", 0, "1", degrees=[16], tolerance=0.01)

    assert result["success"] is True
    assert result["alpha"] == "1"
    assert result["target"] == pytest.approx(4 / 33)
    assert result["support"] == "[-1/16, 1/256]"
    input_state = mock_invoke.call_args[0][1]
    assert input_state["degrees"] == [16]
    assert input_state["alpha"] == Fraction(1)


@patch('src.graph_builder.invoke_graph')
def test_study_run_without_closed_form(mock_invoke):
    """Test that successive-degree grading passes no target."""
    mock_invoke.return_value = {"success": True}
    study = ReconstructionStudy(lazy_init=True)
    study.graph = MagicMock()

    result = study.run("diff", 0, 1, use_closed_form=False)

    assert result["target"] is None
    assert mock_invoke.call_args[0][1]["target"] is None


@patch('src.graph_builder.invoke_graph')
def test_study_run_reports_exceptions(mock_invoke):
    """Test that an exception inside the graph becomes a failed result."""
    mock_invoke.side_effect = RuntimeError("recursion limit")
    study = ReconstructionStudy(lazy_init=True)
    study.graph = MagicMock()

    result = study.run("diff", 0, 1)

    assert result["success"] is False
    assert result["error"] == "recursion limit"


@pytest.mark.slow
def test_study_end_to_end():
    """Test a real reconstruction of the difference variable."""
    study = ReconstructionStudy()

    result = study.run("diff", 0, 1, degrees=[8, 16], tolerance=1e-9)

    assert result["success"] is True
    assert [h["degree"] for h in result["history"]] == [8, 16]
    assert math.isfinite(result["tail_probability"])
    assert result["history"][-1]["error"] == pytest.approx(abs(result["tail_probability"] - 4 / 33))
