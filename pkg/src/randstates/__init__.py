# Random density matrices and Monte Carlo estimation
