"""Arakelov bundles: global sections, subbundle zeta sums, mean value checks and section-free searches.

Functions returning reports decode the JSON produced by the C++ core into plain dicts.
"""

import json as _json

from . import _core
from ._core import (
    ArakelovError,
    Bundle,
    DivergenceSuspected,
    GramParseError,
    Indeterminate,
    InvalidMetric,
    NumberField,
    covolume,
    determinant,
    dual,
    exterior_power,
    format_gram,
    has_nonzero_section,
    minkowski_guarantee,
    mh_bound,
    mvt_rhs,
    packing_density,
    parse_gram,
    quotient_volume,
    random_bundle,
    rational_bundle,
    read_gram_file,
    scale,
    tensor,
    trivial_bundle,
)


def _decoded(fn):
    def wrapper(*args, **kwargs):
        return _json.loads(fn(*args, **kwargs))

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


global_sections = _decoded(_core.global_sections)
enumerate_subbundles = _decoded(_core.enumerate_subbundles)
zeta_partial = _decoded(_core.zeta_partial)
semistability = _decoded(_core.semistability)
mvt_compare = _decoded(_core.mvt_compare)
main_inequality = _decoded(_core.main_inequality)
thresholds = _decoded(_core.thresholds)
find_section_free = _decoded(_core.find_section_free)


def run_cli(*args):
    """Run the command line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])


__all__ = [name for name in dir() if not name.startswith("_")]
