#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
The main entry point: ``python -m nagata <subcommand> [flags]`` runs one
analysis and exits with 0 for clean verdicts, 1 for a found violation and
2 on errors.
"""
import sys

from nagata.cli import main


if __name__ == "__main__":
    sys.exit(main())
