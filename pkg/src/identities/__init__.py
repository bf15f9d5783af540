'''
@Description: Height-1 identity chains of ternary operations
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-07 15:42:18
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-08 16:06:42
'''
from src.identities.chains import (
    KINDS,
    IdentityFailure,
    OpChain,
    OpTable,
    Rule,
    enumerate_chains,
    idempotentize,
    load_chain,
    pad_to_jonsson,
    preserves,
    rules,
    verify_chain,
)
