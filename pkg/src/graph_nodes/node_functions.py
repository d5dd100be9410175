from typing import Dict, Any
import logging

from src.graph_state.study_state import StudyState
from src.momentdensity.legendre import legendre_coeffs, tail_probability
from src.momentdensity.moments import MomentSpec, moment_sequence
from src.utils.errors import SeparabilityError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

DEFAULT_DEGREES = [16, 32, 48, 64]
DEFAULT_TOLERANCE = 5e-3


def start_node_func(state: StudyState) -> Dict[str, Any]:
    """Initialize the study state with default values."""
    degrees = sorted(set(state.get("degrees") or DEFAULT_DEGREES))
    logger.info(f"🚀 Starting reconstruction study: {state['kind']} k={state['k']} "
                f"alpha={state['alpha']} degrees={degrees}")

    return {
        "degrees": degrees,
        "degree_index": 0,
        "tolerance": state.get("tolerance") or DEFAULT_TOLERANCE,
        "target": state.get("target"),
        "moments": [],
        "history": [],
        "decision_trail": [],
        "decision": "CONTINUE",
        "tail_probability": None,
        "converged": False,
        "success": True,
        "error": None,
        "is_finished": False,
    }


def compute_moments_node_func(state: StudyState) -> Dict[str, Any]:
    """Compute the exact moments up to the largest scheduled degree."""
    order = state["degrees"][-1]
    try:
        spec = MomentSpec(kind=state["kind"], k=state["k"], alpha=state["alpha"], order=order)
        moments = moment_sequence(spec)
    except (SeparabilityError, ValueError) as e:
        logger.error(f"Moment computation failed: {e}")
        return {"success": False, "error": str(e), "decision": "FAIL",
                "decision_trail": [f"moments: FAIL ({e})"]}

    logger.info(f"📐 Computed {len(moments)} exact moments")
    return {"moments": moments, "decision_trail": [f"moments: {len(moments)} computed"]}


def reconstruct_node_func(state: StudyState) -> Dict[str, Any]:
    """Reconstruct the density at the current degree and integrate its tail above 0."""
    degree = state["degrees"][state["degree_index"]]
    try:
        density = legendre_coeffs(state["moments"], state["support"], degree, state["precision_bits"])
        tail = float(tail_probability(density, 0, state["precision_bits"]))
    except SeparabilityError as e:
        logger.error(f"Reconstruction at degree {degree} failed: {e}")
        return {"success": False, "error": str(e), "decision": "FAIL",
                "decision_trail": [f"degree {degree}: FAIL ({e})"]}

    target = state.get("target")
    error = abs(tail - target) if target is not None else None
    logger.info(f"🔍 Degree {degree} - tail {tail:.8f}" + (f", error {error:.2e}" if error is not None else ""))

    return {
        "history": [{"degree": degree, "tail": tail, "error": error}],
        "tail_probability": tail,
    }


def grade_convergence_node_func(state: StudyState) -> Dict[str, Any]:
    """Decide whether the tail estimate has settled."""
    if state.get("decision") == "FAIL":
        return {}

    history = state["history"]
    latest = history[-1]
    tolerance = state["tolerance"]
    if latest["error"] is not None:
        settled = latest["error"] < tolerance
        reason = f"error {latest['error']:.2e} vs tolerance {tolerance:.0e}"
    elif len(history) >= 2:
        change = abs(latest["tail"] - history[-2]["tail"])
        settled = change < tolerance
        reason = f"change {change:.2e} vs tolerance {tolerance:.0e}"
    else:
        settled = False
        reason = "no previous degree to compare"

    decision = "FINISH" if settled else "CONTINUE"
    logger.info(f"⚖️  Degree {latest['degree']} - Decision: {decision} ({reason})")

    return {
        "decision": decision,
        "converged": settled,
        "degree_index": state["degree_index"] + 1,
        "decision_trail": [f"degree {latest['degree']}: {decision} ({reason})"],
    }


def finalize_node_func(state: StudyState) -> Dict[str, Any]:
    """Report the last tail estimate."""
    last = state["history"][-1]
    status = "converged" if state.get("converged") else "schedule exhausted"
    logger.info(f"✅ Study finished at degree {last['degree']} ({status}): tail {last['tail']:.8f}")

    return {
        "tail_probability": last["tail"],
        "success": True,
        "is_finished": True,
        "decision_trail": [f"finish: {status}"],
    }


def handle_failure_node_func(state: StudyState) -> Dict[str, Any]:
    """Handle a failed moment computation or reconstruction."""
    logger.info(f"❌ Study failed: {state.get('error')}")

    return {
        "success": False,
        "is_finished": True,
        "decision_trail": ["fail"],
    }
