from coding.reed_muller import RmCode, build_code, encode, is_codeword, project_codeword
from coding.hadamard import fht, fht_decode_first_order, brute_force_ml

__all__ = [
    'RmCode', 'build_code', 'encode', 'is_codeword', 'project_codeword',
    'fht', 'fht_decode_first_order', 'brute_force_ml',
]
