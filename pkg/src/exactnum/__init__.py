# Exact rationals, half-integer gamma values and bounded floats
