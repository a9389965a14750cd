import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Field Configuration
FIELD_CONFIG = {
    'supported_q': [2, 3, 4, 5, 7, 9],
    # Conway polynomials, little-endian coefficients over the prime field
    'moduli': {
        4: [1, 1, 1],
        9: [2, 2, 1]
    },
    'generator_symbol': 'a',
    'enumeration_bound': 10 ** 6,
    'first_irreducible_max_degree': 12
}

# Cost Table Configuration
COST_CONFIG = {
    'mu': {
        2: [1, 3, 6, 9, 13, 15, 22, 24, 30, 33],
        3: [1, 3, 6, 9, 12, 15, 19, 21]
    },
    # explicit inner algorithm counts, used for q without a tabled row
    'mu_explicit': [1, 3, 6, 9],
    'm_hat': [1, 3, 5, 8, 11, 15, 19, 24],
    'max_multiplicity': 5,
    # bound search: multiplicity per place degree, 1 for degrees not listed
    'search_max_order': {1: 5, 2: 2}
}

# Build Configuration
BUILD_CONFIG = {
    'default_seed': int(os.getenv('CHUDNOVSKY_DEFAULT_SEED', '1')),
    'max_place_attempts': 500,
    'max_build_retries': 8,
    'max_divisor_attempts': 24,
    'explicit_max_degree': 4,
    # highest jet order with an explicit algorithm, per place degree
    'explicit_max_order': {1: 3, 2: 2, 3: 1, 4: 1},
    'case_b_exact': False
}

# Logging Configuration
LOGGING_CONFIG = {
    'level': os.getenv('CHUDNOVSKY_LOG_LEVEL', 'INFO'),
    'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    'datefmt': '%Y-%m-%d %H:%M:%S',
    'log_dir': os.getenv('CHUDNOVSKY_LOG_DIR')
}

# CLI Configuration
CLI_CONFIG = {
    'default_format': 'json',
    'formats': ['json', 'text', 'slp'],
    'exit_codes': {
        'ok': 0,
        'validation': 2,
        'construction': 3,
        'verification': 4
    }
}
