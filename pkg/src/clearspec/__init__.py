"""clearspec: a workbench for controlled-English requirements specifications.

Sentences written in a small, deterministic subset of English are compiled
into a discourse representation structure and executable logic clauses.
The resulting knowledge base can be verified by asking questions in the
same controlled language and validated by simulated execution.
"""

from .drs import Drs, alpha_equal, render as render_drs
from .errors import Diagnostic
from .lexicon import LexEntry, Lexicon
from .session import Session

__all__ = [
    "Diagnostic",
    "Drs",
    "LexEntry",
    "Lexicon",
    "Session",
    "alpha_equal",
    "render_drs",
]

__version__ = "0.1.0"
