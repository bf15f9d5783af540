'''
@Description: Command line surface
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-03 11:14:26
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-04 12:22:34
'''
