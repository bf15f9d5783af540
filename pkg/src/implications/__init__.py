'''
@Description: Orbit digraphs, completion, critical relations and instance implication graphs
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-09 17:56:44
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-10 10:28:16
'''
from src.implications.digraph import OrbitDigraph, build_orbit_digraph, digraph_power, scc_analysis, to_dot
from src.implications.complete import complete, is_complete
from src.implications.critical import CriticalRelation, build_critical_from_cycle, is_critical
from src.implications.graph import ImplArc, ImplGraph, build_instance_impl_graph, instance_relation
