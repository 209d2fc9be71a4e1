"""Workbench for the algebra of cooperating components.

Build process terms and interfaces, compose components, generate
transition systems and decide bisimilarity, interface emptiness and the
associativity side condition.
"""
from .bisim import BisimVerdict, bisim, bisim_comp, bisim_loc, bisim_proc
from .components import AssocReport, assoc_condition, compose, iencap_term
from .errors import (
    AccError,
    BoundsError,
    BudgetError,
    GuardednessError,
    ScopeError,
    SortError,
    SpecSyntaxError,
)
from .interface import (
    EMPTY,
    IElem,
    INeg,
    ISum,
    IZero,
    Interface,
    combine,
    invert,
    is_empty,
    mult,
    normalize,
    sg,
)
from .localized import loc_par_expand, place
from .lts import Lts, alphabet, build_lts, is_closed_system, project
from .parser import SpecFile, parse_spec, parse_term, print_spec
from .recursion import Guardedness, RecSpec, check_guarded, unfold
from .rewriter import HeadNormalForm, hnf, hnf_comp
from .sos import TICK, Step, comp_interface, comp_steps, loc_steps, proc_steps
from .terms import (
    DELTA,
    Action,
    Alt,
    Atom,
    CommMerge,
    Comp,
    CompPar,
    Encap,
    IEncap,
    Kind,
    LeftMerge,
    LocAction,
    Par,
    Placed,
    Rec,
    Seq,
    Var,
    active,
    free_variables,
    gamma,
    neutral,
    passive,
)

__version__ = "0.1.0"
