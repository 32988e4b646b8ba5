"""Finite groupoids and group-groupoids, with a constructive trivialization
of transitive commutative group-groupoids."""

from .errors import (BadBaseId, BadCarrier, BadTypeParameter, EndpointMismatch,
                     GroupoidError, InternalInconsistency, InvalidHom,
                     InvalidInput, InvalidMorphism, InvalidOrder,
                     MalformedMap, MalformedStructure, MalformedTable,
                     NoSplitSection, NonCommutativeGroup, NotComposable,
                     NotCommutative, NotEpimorphism, NotTransitive,
                     SearchBudgetExceeded, SectionInvalid, UnknownName)
from .report import PropertyReport, ValidationReport
from .groups import (EmbeddedGroup, FiniteGroup, GroupHom, check_hom,
                     compose_homs, is_commutative, make_cyclic,
                     make_direct_product, noncommuting_pair,
                     subgroup_from_members, validate_group)
from .groupoid import (FiniteGroupoid, IsotropyGroup, alpha_fiber, beta_fiber,
                       composable_pairs, direct_product_groupoid,
                       is_transitive, isotropy_bundle, isotropy_group,
                       isotropy_transport, validate_groupoid)
from .morphisms import (GroupoidMorphism, compose_morphisms,
                        identity_morphism, is_isomorphism,
                        validate_groupoid_morphism)
from .group_groupoid import (GroupGroupoid, check_prop21, is_commutative_gg,
                             validate_def23, validate_def24,
                             validate_gg_morphism)
from .constructions import (CanonicalEncoding, direct_product_gg,
                            epimorphism_groupoid, gg_projections,
                            group_pair_groupoid, modular_group_groupoid,
                            null_group_groupoid, pair_groupoid,
                            single_unit_group_groupoid, tgg_morphism,
                            trivial_group_groupoid)
from .trivialization import (Trivialization, alpha_fiber_group, build_phi,
                             find_hom_section, find_split_section, trivialize)
from .serialization import (Workspace, dumps_canonical, from_jsonable,
                            gg_from_jsonable, gg_to_jsonable,
                            group_from_jsonable, group_to_jsonable,
                            groupoid_from_jsonable, groupoid_to_jsonable,
                            to_jsonable)

__version__ = "0.1.0"
