# Separability Formulas
# Exact and numeric separability probabilities for generalized two-qubit states
