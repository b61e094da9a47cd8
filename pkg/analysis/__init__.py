# System diagnostics
