import math

TWO_PI = 2.0 * math.pi

# series evaluation
DEFAULT_NU = 0.3
DEFAULT_ORDER = 30
UNDERFLOW_CUTOFF = 1e-300
BLOW_UP_MAGNITUDE = 1e10
DEFAULT_FD_STEP = 1e-4
# Bell sums losing more digits than this go to extended precision
CANCELLATION_LIMIT = 1e4
PRECISE_GUARD_DIGITS = 20
PRECISE_RETRIES = 4
MAX_EXACT_ORDER = 500

# Green's engine
GRID_NX = 128
GRID_NT = 64
GRID_T_MAX = 3.0
HERMITE_NODES = 48
TIME_NODES = 32
SUB_TOL = 1e-7
MIN_HERMITE_NODES = 8
MIN_TIME_NODES = 4

# Cole-Hopf reference
TRUNCATION_RADIUS = 8.0
MIN_TRUNCATION_RADIUS = 6.0
COLE_HOPF_TOL = 1e-12
MAX_SUBDIVISIONS = 400
SINGULAR_DENOMINATOR = 1e-14

# fd oracle, RK4 stability limit on the imaginary axis
RK4_IMAG_LIMIT = 2.8

# analysis
DOMAIN_X_MIN = -TWO_PI
DOMAIN_X_MAX = TWO_PI
DOMAIN_T_MIN = 0.0
DOMAIN_T_MAX = 3.0
DOMAIN_NX = 65
DOMAIN_NT = 31
RATIO_M_MAX = 300
# sup errors moving more than this under refinement are under-sampled
RESOLUTION_DRIFT = 0.05

# file formats
BINARY_MAGIC = b"GRDF"
BINARY_VERSION = 1
FIELD_COLUMNS = ("x", "t", "re", "im")
SWEEP_N_COLUMNS = ("N", "nu", "sup_error")
SWEEP_NU_COLUMNS = ("nu", "N", "sup_error", "flag")
RATIO_COLUMNS = ("m", "r_m")
SOLVE_TIMES = (0.0, 1.0, 4.0)
SOLVE_NX = 401
OUTPUT_ENV = "BURGERS_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "burgers_output"
