# Symbolic expressions, parsing and kernel partitions
