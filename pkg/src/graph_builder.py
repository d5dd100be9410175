import logging
from langgraph.graph import StateGraph, END
from typing import Dict, Any, Optional
import time
from datetime import datetime

from src.graph_state.study_state import StudyState
from src.graph_nodes.node_functions import (
    start_node_func,
    compute_moments_node_func,
    reconstruct_node_func,
    grade_convergence_node_func,
    finalize_node_func,
    handle_failure_node_func
)
from src.graph_nodes.graph_edges import moments_ready, should_continue

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def build_graph() -> StateGraph:
    """
    Build and compile the LangGraph workflow for the reconstruction study.

    Returns:
        StateGraph: The compiled graph ready for execution
    """
    logger.info("Building reconstruction study graph")

    workflow = StateGraph(StudyState)

    workflow.add_node("start", start_node_func)
    workflow.add_node("compute_moments", compute_moments_node_func)
    workflow.add_node("reconstruct", reconstruct_node_func)
    workflow.add_node("grade_convergence", grade_convergence_node_func)
    workflow.add_node("finalize", finalize_node_func)
    workflow.add_node("handle_failure", handle_failure_node_func)

    workflow.set_entry_point("start")

    workflow.add_edge("start", "compute_moments")
    workflow.add_conditional_edges(
        "compute_moments",
        moments_ready,
        {
            "reconstruct": "reconstruct",
            "handle_failure": "handle_failure"
        }
    )
    workflow.add_edge("reconstruct", "grade_convergence")

    # Raise the degree, finish, or fail
    workflow.add_conditional_edges(
        "grade_convergence",
        should_continue,
        {
            "reconstruct": "reconstruct",
            "finalize": "finalize",
            "handle_failure": "handle_failure"
        }
    )

    workflow.add_edge("finalize", END)
    workflow.add_edge("handle_failure", END)

    graph = workflow.compile()
    logger.info("Reconstruction study graph built and compiled successfully")

    return graph


def invoke_graph(graph: StateGraph, input_state: Dict[str, Any], config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Invoke the graph with runtime tracking.

    Args:
        graph: The compiled workflow graph
        input_state: Initial state for the graph
        config: Optional configuration for the graph execution

    Returns:
        Dict[str, Any]: The final state after graph execution
    """
    if config is None:
        config = {}
    # One reconstruct/grade pair per scheduled degree plus the fixed nodes
    config.setdefault("recursion_limit", 2 * len(input_state.get("degrees") or [0] * 4) + 10)

    start_time = time.time()
    start_datetime = datetime.now()

    result = dict(graph.invoke(input_state, config))

    runtime_seconds = time.time() - start_time
    result["runtime"] = {
        "start_time": start_datetime.isoformat(),
        "end_time": datetime.now().isoformat(),
        "runtime_seconds": runtime_seconds,
        "runtime_formatted": f"{runtime_seconds:.2f} seconds"
    }
    logger.info(f"Study runtime: {result['runtime']['runtime_formatted']}")

    return result
