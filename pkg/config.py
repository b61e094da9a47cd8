"""
Configuration and constants for the term reduction toolkit.
"""

from pathlib import Path

# Application metadata
APP_NAME = "term-reduction"
APP_VERSION = "0.3.0"

# Equation file keywords
COMMENT_MARKER = "#"
KEYWORD_INDEPENDENT = "indep"
KEYWORD_UNKNOWN = "unknown"
KEYWORD_PARAMETER = "param"
KEYWORD_RULE = "rule"
KEYWORD_EQUATION = "eq"
DERIVATIVE_FUNCTION = "d"  # d(f,x,y) is reserved for derivatives
EQUATION_FILE_SUFFIX = ".eqs"

# Reduction defaults
STRATEGY_FEW = "few"
STRATEGY_MANY = "many"
DEFAULT_STRATEGY = STRATEGY_FEW
DEFAULT_MAX_STEPS = None  # unlimited
DEFAULT_THREADS = 1
MAX_REWRITE_PASSES = 64  # safety limit when several rules feed each other

# Random generation
RANDOM_COEFFICIENT_BOUND = 99  # coefficients are uniform nonzero in [-99, 99]
REDUCIBLE_NOISE_FRACTION = 0.5  # size of P2 relative to P1 in reducible pairs
RANDOM_MULTIPLE_MAX_DEGREE = 2
INDEPENDENT_PREFIX = "x"
UNKNOWN_PREFIX = "u"

# Oracle
ORACLE_MAX_PRODUCT = 10_000  # n1 * n2 guard for brute force enumeration

# Benchmark defaults (trend targets only)
BENCH_DEFAULT_N1 = [100, 1000]
BENCH_DEFAULT_N2 = [10, 1000]
BENCH_DEFAULT_REPS = 3
BENCH_DEFAULT_VARS = 7
BENCH_DEFAULT_DEGREE = 7
BENCH_MAX_REGENERATIONS = 20  # attempts to draw a pair with the requested outcome
BENCH_CSV_COLUMNS = ["n1", "n2", "vars", "degree", "outcome", "median_ms", "reps"]
OUTCOME_SUCCESSFUL = "successful"
OUTCOME_UNSUCCESSFUL = "unsuccessful"

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INTERNAL = 2

# Logging
LOG_DIR = Path.home() / ".term_reduction" / "logs"
LOG_FILE_NAME = "term_reduction.log"
ERROR_LOG_FILE_NAME = "error.log"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Validation settings
VALIDATION_SEVERITY_ERROR = "ERROR"
VALIDATION_SEVERITY_WARNING = "WARNING"
VALIDATION_SEVERITY_INFO = "INFO"
VALIDATION_MAX_REPORTED_DUPLICATES = 10  # quick mode stops after this many

# Excel export settings
EXPORT_SHEET_OCCUPANCY = "Occupancy"
EXPORT_SHEET_ODES = "ODEs"
EXPORT_SHEET_DECOUPLING = "Decoupling"
EXPORT_MAX_COLUMN_WIDTH = 50
