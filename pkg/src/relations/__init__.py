'''
@Description: Typed relations and the implication calculus
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-19 09:06:54
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-05 12:18:06
'''
from src.relations.typed import (
    TypeRow,
    TypedRelation,
    full_relation,
    identify,
    intersect,
    join_exists,
    make_row,
    orbit_relation,
    project,
    restrict_injective,
)
from src.relations.implication import (
    Implication,
    compose,
    composition_bookkeeping,
    is_implication,
    op_mappings,
    power,
)
