# Generalized hypergeometric series, digamma and Lerch Phi(-1, 1, b)
