DEFAULT_K = 1
DEFAULT_TOL = 1e-12
DEFAULT_SWEEP_LIMIT = 100
DEFAULT_PATH_CAP = 1_000_000
DEFAULT_SEARCH_BUDGET = 10_000_000
DEFAULT_GROUP_LIMIT = 100_000
DEFAULT_MAX_WINDOW = 7
DEFAULT_MAX_VERTICES = 2_000

BUDGET_ENV = "QLAP_BUDGET"

CONVENTIONS = ("directed", "unordered")
OUTPUT_FORMATS = ("text", "json")
