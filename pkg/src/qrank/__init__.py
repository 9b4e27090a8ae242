"""qrank.

Exact verification of the Q-rank conjecture for primes p = 3 mod 4
"""

from loguru import logger

logger.disable("qrank")
