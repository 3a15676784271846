"""
Configuration for the Kempe reconfiguration toolkit
"""

import os

from dotenv import load_dotenv

# Pick up KEMPE_* overrides from a local .env file
load_dotenv()

# Exhaustive search limits
SEARCH_CONFIG = {
    'default_cap': int(os.getenv('KEMPE_DEFAULT_CAP', '5000000')),  # visited colorings
    'chromatic_size_cap': int(os.getenv('KEMPE_CHROMATIC_CAP', '30')),  # vertices
    'witness_search_cap': 500000,  # colorings scanned for an alternative coloring
}

# Defaults for the theorem harness (per claim, overridable from the CLI)
VERIFY_DEFAULTS = {
    'seed': 0,
    'instance_cap': 200000,  # colorings per instance before it is skipped
    'base_density': 0.5,
    'claims': {
        'bm5': {'k': 4, 'trials': 50, 'max_n': 10, 'max_ell': 5},
        'c3e5': {'k': 4, 'trials': 50, 'max_n': 10, 'max_ell': 5},
        'main': {'k': None, 'trials': 120, 'max_n': 10, 'max_ell': 9},
        'fourcri': {'k': 4, 'trials': 1, 'max_n': 20, 'max_ell': None},
        'bipar': {'k': None, 'trials': 100, 'max_n': 7, 'max_ell': None},
        'dege': {'k': None, 'trials': 50, 'max_n': 8, 'max_ell': None},
        'fiveedges': {'k': 3, 'trials': 1, 'max_n': 7, 'max_ell': None},
        'nointersect': {'k': None, 'trials': 50, 'max_n': 10, 'max_ell': 6},
        'prop3': {'k': 3, 'trials': 1, 'max_n': None, 'max_ell': None},
        'prop4i': {'k': 4, 'trials': 1, 'max_n': None, 'max_ell': None},
        'prop4ii': {'k': 4, 'trials': 1, 'max_n': None, 'max_ell': None},
    },
    'search': {'k': 4, 'n_s': 5, 'n_t': 5, 'trials': 200, 'max_ell': 5},
    # k-critical graphs from the graph atlas
    'critical': {'ks': (3, 4), 'max_n': 7},
}

# Graphviz export
DOT_CONFIG = {
    'palette': [
        '#e41a1c', '#377eb8', '#4daf4a', '#984ea3', '#ff7f00', '#ffff33',
        '#a65628', '#f781bf', '#999999', '#66c2a5', '#fc8d62', '#8da0cb',
    ],
    'added_edge_style': 'bold',
}
