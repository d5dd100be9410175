from typing import Literal
import logging

from src.graph_state.study_state import StudyState

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def schedule_exhausted(state: StudyState) -> bool:
    """True when every scheduled degree has been tried."""
    return state.get("degree_index", 0) >= len(state.get("degrees", []))


def moments_ready(state: StudyState) -> Literal["reconstruct", "handle_failure"]:
    """Route after the moment computation."""
    if state.get("decision") == "FAIL":
        return "handle_failure"
    return "reconstruct"


def should_continue(state: StudyState) -> Literal["reconstruct", "finalize", "handle_failure"]:
    """
    Determines the next node to call after grading a reconstruction.

    Args:
        state: Current study state

    Returns:
        String indicating the next node to call
    """
    decision = state.get("decision", "CONTINUE")
    exhausted = schedule_exhausted(state)

    logger.info(f"Edge decision: {decision}, Schedule exhausted: {exhausted}")

    if decision == "FAIL":
        return "handle_failure"
    if decision == "FINISH" or exhausted:
        return "finalize"
    return "reconstruct"
