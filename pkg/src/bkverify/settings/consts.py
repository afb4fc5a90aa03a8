"""Constants used in the settings."""

LOG_FORMAT: str = "%(asctime)s %(levelname)s [%(filename)s.%(funcName)s:%(lineno)s] - %(message)s"
"""The default logging format"""

LOG_TAG: str = "bkverify"
"""The logging tag"""

LOG_LEVEL: str = "INFO"
"""The logging level"""

BUDGET_ENV_VAR: str = "BKVERIFY_BUDGET_SECS"
"""Environment variable overriding the default solver budget"""

DEFAULT_BUDGET_SECS: float = 10.0
"""Wall-clock budget (seconds) for a single exact solve"""

DEFAULT_EXTENSION_DEPTH: int = 4
"""Depth limit of the recoloring move search"""

DEFAULT_AUDIT_RATE: float = 0.01
"""Share of filtered graphs that are re-checked without filters"""

SAMPLER_EDGE_DENSITY: float = 0.5
"""Probability that a new vertex is joined to a given existing vertex"""

SAMPLER_TWIN_BIAS: float = 0.5
"""Probability that a new vertex copies the closed neighbourhood of an existing vertex"""

SAMPLER_VERTEX_ATTEMPTS: int = 50
"""Neighbour sets tried for a single new vertex before the graph is restarted"""

SAMPLER_GRAPH_ATTEMPTS: int = 200
"""Restarts allowed per requested graph"""
