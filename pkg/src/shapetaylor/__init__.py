"""High-order shape derivatives and shape Taylor expansions for 2D acoustic scattering.

:copyright: (c) 2025-present Iyad
:license: Apache License, Version 2.0, see LICENSE for more details.
"""

__title__ = "shapetaylor"
__author__ = "Iyad"
__license__ = "Apache-2.0"
__copyright__ = "Copyright 2025-present Iyad"
__version__ = "0.1.0"
