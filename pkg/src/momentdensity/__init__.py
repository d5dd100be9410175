# Exact moments and Legendre density reconstruction
