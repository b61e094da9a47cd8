# Equation file loading, validation and export
