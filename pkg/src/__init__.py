'''
@Description: Bounded-width solving and implication analysis for CSPs over k-neoliberal structures
@version: 0.1.0
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-02 10:07:13
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-03 11:11:17
'''
__version__ = '0.1.0'
