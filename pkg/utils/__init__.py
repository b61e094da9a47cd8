# Logging setup and argument validation
