#!/usr/bin/env python
"""Two-qubit discord experiments using the discordlab library"""
import sys

from discordlab.cli import main

if __name__ == "__main__":
    sys.exit(main())
