'''
@Description: Signatures, labeled structures and ground structure presentations
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-25 15:48:12
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-11 10:24:48
'''
from src.structures.signature import LabeledStructure, OrbitLabel, Signature
from src.structures.ground import (
    BUILTINS,
    GroundStructure,
    complete_labelings,
    embeds,
    load_structure,
    maps_hom,
    maps_to_ground,
    one_point_extensions,
    realizable,
    validate_presentation,
)
