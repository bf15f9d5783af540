'''
@Description: Brute-force reference semantics used for cross-checks
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-17 16:52:28
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-03 10:56:32
'''
from src.oracle.brute import brute_join, brute_solve, random_instance, relational_composition
