"""Decision procedures for Wajsberg hoops via exact rational polyhedra."""
from .decide import (AdmissibilityVerdict, Projectivity, ProjectivityReport, Rule, admissible,
                     entails, is_exact_presentation, max_coexact_unifier, projectivity_report,
                     valid_identity)
from .exact import AffineSubspace, IntMatrix, Rational, affine_hull, integer_solvable, lcd
from .oracle import GridSpec, grid_check, integer_search_bruteforce, refute_admissibility
from .pl import AffinePiece, Cell, PLFunction, compile, covers, eval_pl, image, is_constant_one, one_set
from .polygeo import (NotPointedError, ShapeReport, SimplicialComplex, anchored_part,
                      component_containing_one, is_anchored, is_strongly_regular, shape_report,
                      triangulate)
from .polytope import Polyhedron, Polytope, same_pointset
from .svg import emit_svg
from .synth1d import Interval1D, SynthesisError, synthesize_1d
from .terms import (MV, WH, ModeError, Polarity, Term, TermSyntaxError, desugar, eval_term,
                    is_positive, parse, positive_normal_form, render, substitute)

__version__ = "0.1.0"
