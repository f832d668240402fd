"""Command-line front end."""
from .config import SUITES, Config, ConfigError, load_config, parse_theta
from .main import build_parser, main
from .report import Check, Report
from .suites import run_suite
