import os
from dotenv import load_dotenv

load_dotenv()

TOOL_VERSION = "0.3.0"

# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------
# Empty means log to stderr
LOG_FILE = os.getenv("TCOPULA_LOG_FILE", "")

# ---------------------------------------------------------------------------
# Experiment defaults (rho=0.9, nu=3, one million draws per construction)
# ---------------------------------------------------------------------------
# $TCOPULA_SEED overrides this at call time
DEFAULT_SEED = 1
DEFAULT_SAMPLES = int(os.getenv("TCOPULA_SAMPLES", "1000000"))
DEFAULT_RHO = float(os.getenv("TCOPULA_RHO", "0.9"))
DEFAULT_NU = float(os.getenv("TCOPULA_NU", "3"))
DEFAULT_METHOD = os.getenv("TCOPULA_METHOD", "same-chi2")
DEFAULT_GAMMA_MAX = int(os.getenv("TCOPULA_GAMMA_MAX", "20"))
GAMMA_MIN = 2

# Threshold convention: "t" scales gamma by sqrt(nu/(nu-2)), "unit" by 1
DEFAULT_STD_MODE = os.getenv("TCOPULA_STD_MODE", "t")

REDUCTION_TABLE_NUS = (3, 4, 5, 6, 7, 8, 9, 10, 20, 50, 100)

# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------
# Draws per substream block; block b of a run always uses the same stream
BLOCK_SIZE = int(os.getenv("TCOPULA_BLOCK_SIZE", "65536"))
WORKERS = int(os.getenv("TCOPULA_WORKERS", "1"))

# ---------------------------------------------------------------------------
# Estimators
# ---------------------------------------------------------------------------
MIN_TAIL_COUNT = int(os.getenv("TCOPULA_MIN_TAIL_COUNT", "10"))
PDF_BINS = int(os.getenv("TCOPULA_PDF_BINS", "100"))
PDF_RANGE = os.getenv("TCOPULA_PDF_RANGE", "-10:10")
COPULA_BINS = int(os.getenv("TCOPULA_COPULA_BINS", "50"))
# Number of raw pairs plotted in the figure exports
FIGURE_SAMPLES = 5000

# ---------------------------------------------------------------------------
# Feature flags
# ---------------------------------------------------------------------------
DEBUG = os.getenv("DEBUG", "False").lower() in ("true", "1")
