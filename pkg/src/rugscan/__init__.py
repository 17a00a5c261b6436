"""rugscan: static analysis of NFT Solidity contracts for rug-pull backdoors."""

__version__ = "0.1.0"

from .frontend import parse
from .errors import DuplicateContract, FrontendError, LexError, ManifestError, ParseError

__all__ = [
    "DuplicateContract",
    "FrontendError",
    "LexError",
    "ManifestError",
    "ParseError",
    "parse",
    "__version__",
]
