from parsing.parsing import parse_code_spec, parse_snr_grid, parse_llr_text, read_llr_file

__all__ = ['parse_code_spec', 'parse_snr_grid', 'parse_llr_text', 'read_llr_file']
