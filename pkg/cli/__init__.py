from cli.main import main, build_parser
from cli.selftest import run_selftest

__all__ = ['main', 'build_parser', 'run_selftest']
