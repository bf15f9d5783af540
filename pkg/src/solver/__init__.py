'''
@Description: End-to-end solving with verifiable verdicts
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-22 12:27:33
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-08 15:51:57
'''
from src.solver.solver import (
    Certificate,
    HardWitness,
    Sat,
    Unsat,
    extract_solution,
    solve,
    verify_certificate,
)
from src.solver.trace import TraceWriter, projection_table
