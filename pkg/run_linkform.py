#!/usr/bin/env python3
"""
Linkform - Main Entry Point

Classify members of the M(a, b) family, construct non-standard examples,
run censuses and the verification suite.
"""

import sys

# Load environment variables from .env file
from dotenv import load_dotenv
load_dotenv()

from src.cli import main


if __name__ == "__main__":
    sys.exit(main())
