"""Exact divisor-cone computations on surface Picard lattices."""

from .builder import (BlowupSpec, General, OnExceptional, OnTwoExceptionals,
                      build_lattice, build_tower_surface, proximity_matrix,
                      pullback, strict_exceptional, total_exceptional)
from .classify import (Fibration, Flags, SurfaceData, Verdict,
                       anticanonical_kappa, decide_cox_fg,
                       decide_eff_polyhedral, mordell_weil_rank,
                       nef_classes_bounded)
from .cones import (RationalCone, dual_cone, effc_sample_check, extremal_rays,
                    inclusion_chain_check)
from .lattice import (DivisorClass, IntersectionLattice, LatticeError,
                      arithmetic_genus, in_light_halfcone, k_degree, pair,
                      primitive_generator, rr_chi, self_intersection)
from .negcurves import (CurveClass, DynkinType, FiberComponentGraph, curve,
                        dual_graph, dynkin_classify, enumerate_classes,
                        minus_one_classes, minus_two_classes)
from .surfaces import load_surface, parse_surface
from .tower import (TowerState, bounds_check, kappa_persists, mui_consistency,
                    tower_init, tower_step)
from .zariski import (NonConvergent, NotPseudoeffective, SingularSupportGram,
                      ZariskiDecomposition, kappa_from_zariski,
                      zariski_decompose)

__version__ = "0.1.0"
