# Separability probability formulas Q(k, alpha) and P(k, alpha)
