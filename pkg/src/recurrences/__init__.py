# Rational polynomials and second-order recurrence fitting
