"""
ReconstructionStudy class that provides a simple interface to the Legendre reconstruction workflow.
"""
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional

from src.exactnum.gamma_exact import RationalLike, to_rational
from src.momentdensity.legendre import SupportInterval
from src.momentdensity.moments import MomentKind
from src.sepformulas.p_formulas import P_ALPHAS, p_value
from src.sepformulas.q_formulas import q_value
from src.sepformulas.types import DEFAULT_PRECISION
from src.utils.errors import SeparabilityError

# Setup logging
logger = logging.getLogger(__name__)


def closed_target(kind: MomentKind, k: int, alpha: Fraction) -> Optional[float]:
    """
    Closed-form mass above zero of the reconstructed variable, when one is available.

    The difference variable has mass Q(k, alpha) above zero; |rho^PT| has P(0, alpha).
    """
    try:
        if kind == MomentKind.DIFF:
            return float(q_value(k, alpha))
        if kind == MomentKind.PTDET and alpha in P_ALPHAS:
            return float(p_value(0, alpha))
    except SeparabilityError as e:
        logger.warning(f"No closed target for {kind.value} k={k} alpha={alpha}: {e}")
    return None


class ReconstructionStudy:
    """Runs the moment -> Legendre density -> tail probability convergence study."""

    def __init__(self, lazy_init: bool = False):
        """
        Initialize the study runner.

        Args:
            lazy_init: Whether to delay building the graph until the first run
        """
        self.graph = None
        if not lazy_init:
            self._initialize_components()

    def _initialize_components(self):
        """Build the workflow graph."""
        try:
            from src.graph_builder import build_graph

            self.graph = build_graph()
            logger.debug("Successfully built study graph")
        except Exception as e:
            logger.error(f"Error building study graph: {e}")
            raise

    def run(
        self,
        kind: str,
        k: int,
        alpha: RationalLike,
        degrees: Optional[List[int]] = None,
        support: Optional[SupportInterval] = None,
        tolerance: Optional[float] = None,
        use_closed_form: bool = True,
        precision_bits: int = DEFAULT_PRECISION
    ) -> Dict[str, Any]:
        """
        Run the reconstruction study.

        Args:
            kind: "diff" or "ptdet"
            k: Induced-measure exponent (0 for ptdet)
            alpha: Random-matrix parameter
            degrees: Legendre degrees to try, in increasing order
            support: Support of the variable; defaults to [-1/16, 1/256]
            tolerance: Convergence tolerance on the tail probability
            use_closed_form: Grade against the closed value instead of successive degrees
            precision_bits: Precision of the rounded coefficients

        Returns:
            Dictionary with the final tail probability, the degree history and the decision trail
        """
        try:
            moment_kind = MomentKind(kind)
            if moment_kind == MomentKind.DET:
                raise ValueError("the |rho| moments have no sign change to integrate over")
            a = to_rational(alpha)
        except (ValueError, SeparabilityError) as e:
            logger.error(f"Invalid study request: {e}")
            return {"success": False, "error": str(e), "tail_probability": None,
                    "history": [], "decision_trail": []}

        if self.graph is None:
            self._initialize_components()

        target = closed_target(moment_kind, k, a) if use_closed_form else None
        input_state = {
            "kind": moment_kind.value,
            "k": k,
            "alpha": a,
            "support": support or SupportInterval(),
            "target": target,
            "precision_bits": precision_bits,
            "degrees": degrees or [],
            "tolerance": tolerance,
        }

        try:
            from src.graph_builder import invoke_graph

            logger.info(f"Starting reconstruction study: {moment_kind.value} k={k} alpha={a}")
            final_state = invoke_graph(self.graph, input_state)
            return {
                "success": final_state.get("success", False),
                "error": final_state.get("error"),
                "kind": moment_kind.value,
                "k": k,
                "alpha": str(a),
                "support": str(input_state["support"]),
                "target": target,
                "tail_probability": final_state.get("tail_probability"),
                "converged": final_state.get("converged", False),
                "history": final_state.get("history", []),
                "decision_trail": final_state.get("decision_trail", []),
                "runtime": final_state.get("runtime", {})
            }
        except Exception as e:
            logger.error(f"Error running reconstruction study: {e}", exc_info=True)
            return {"success": False, "error": str(e), "tail_probability": None,
                    "history": [], "decision_trail": []}
