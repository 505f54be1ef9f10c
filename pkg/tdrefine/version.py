# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

# tdrefine Version:
__version__ = '0.3.0'
