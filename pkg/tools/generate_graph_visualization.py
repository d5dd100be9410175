#!/usr/bin/env python3
"""
Generate a Mermaid diagram of the Legendre reconstruction study workflow.
"""

import sys

from src.graph_builder import build_graph


def generate_workflow_visualization(output_file: str = "study_workflow.mmd") -> str:
    """Write the study graph as Mermaid text."""
    graph = build_graph()
    graph_obj = graph.get_graph()

    mermaid = graph_obj.draw_mermaid(wrap_label_n_words=3)
    with open(output_file, "w", encoding="utf-8") as f:
        f.write(mermaid)

    print(f"Visualization saved to {output_file}")
    return output_file

if __name__ == "__main__":
    generate_workflow_visualization(*sys.argv[1:2])
