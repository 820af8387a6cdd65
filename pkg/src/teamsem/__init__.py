"""Team semantics laboratory for dependence logic with the connectives of BI."""

from .errors import (
    BoundExceeded, DomainError, DomainMismatch, FragmentError, MissingValue,
    NotASentence, NoWitness, StructureError, TeamsemError, UnboundName,
)
from .model import Assignment, Structure, Team, all_teams, extend_all, extend_fn
from .parser import ParseError, parse, to_text
from .evaluation import Bounds, EvalContext, TruthValue, satisfies, tarski, truth_value
from .algebra import LowerSet, denote, down

__version__ = "0.1.0"
