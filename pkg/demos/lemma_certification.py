"""Sample the inequalities behind the constants on coarse grids.

The full grids take about a minute; pass --full to use them.
"""

import sys

from huberkit.verify import bump_constants, certification_report, lemma_suite

full = "--full" in sys.argv
reports = lemma_suite() if full else lemma_suite(n_t=48, n_r=96)
print(certification_report(reports, bump_constants(64)))
