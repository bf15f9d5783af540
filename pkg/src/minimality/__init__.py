'''
@Description: Instances and the (k, l)-minimality engine
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-14 13:31:49
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-15 15:23:41
'''
from src.minimality.instance import Instance, load_instance, parse_relation
from src.minimality.saturate import injectivize, minimality_params, projection, saturate
