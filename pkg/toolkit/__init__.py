# Random systems, brute force oracle and timing harness
