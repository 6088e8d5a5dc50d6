from .common import (bits_of, compress_bits, expand_bits, fingerprint,
                     format_label_list, get_version, mask_of, parse_label_list,
                     popcount)
from .db import CountCache, get_count_cache
