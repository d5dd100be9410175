"""
Unit tests for the reconstruction study graph
"""
import pytest
from unittest.mock import patch
from fractions import Fraction

from src.graph_builder import build_graph, invoke_graph
from src.momentdensity.legendre import SupportInterval


def test_build_graph_structure():
    """Test that the graph is built with the correct structure."""
    graph = build_graph()

    assert hasattr(graph, 'invoke'), "Graph should have an invoke method"
    assert graph is not None, "Graph should be compiled"


def test_build_graph_nodes():
    """Test that the graph has the expected nodes."""
    graph = build_graph()

    nodes = set(graph.get_graph().nodes)
    for name in ["start", "compute_moments", "reconstruct", "grade_convergence", "finalize", "handle_failure"]:
        assert name in nodes, f"Graph should contain node {name}"


def test_invoke_graph_runs_schedule():
    """Test a short study that exhausts its degree schedule."""
    graph = build_graph()
    state = {
        "kind": "diff",
        "k": 0,
        "alpha": Fraction(1),
        "support": SupportInterval(),
        "target": None,
        "precision_bits": 64,
        "degrees": [2, 4, 6],
        "tolerance": 1e-12,
    }

    result = invoke_graph(graph, state)

    assert result["success"] is True
    assert result["is_finished"] is True
    assert [h["degree"] for h in result["history"]] == [2, 4, 6]
    assert result["decision_trail"][-1] == "finish: schedule exhausted"
    assert result["runtime"]["runtime_seconds"] >= 0
    assert result["runtime"]["runtime_formatted"].endswith("seconds")


def test_invoke_graph_failure_path():
    """Test that an invalid request ends in the failure node."""
    graph = build_graph()
    state = {
        "kind": "ptdet",
        "k": 3,
        "alpha": Fraction(1),
        "support": SupportInterval(),
        "target": None,
        "precision_bits": 64,
        "degrees": [2],
        "tolerance": None,
    }

    result = invoke_graph(graph, state)

    assert result["success"] is False
    assert result["decision_trail"][-1] == "fail"
    assert result["history"] == []


def test_generate_workflow_visualization(tmp_path):
    """Test that the study graph is rendered as Mermaid text."""
    from tools.generate_graph_visualization import generate_workflow_visualization

    target = tmp_path / "study.mmd"
    with patch('builtins.print'):
        generate_workflow_visualization(str(target))

    text = target.read_text()
    assert "compute_moments" in text
    assert "grade_convergence" in text
