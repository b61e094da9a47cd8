# Pairwise reduction engine and system scheduler
