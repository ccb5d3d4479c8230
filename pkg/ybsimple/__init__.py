"""ybsimple - involutive Yang-Baxter solutions, finite left braces and their simple families."""

# registers the TRACE and CHECK levels on logging.Logger for every module
from .utils import logger as _logger  # noqa: F401

__version__ = '0.1.0'
