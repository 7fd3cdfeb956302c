#!/usr/bin/env python3
# ABOUTME: Main entry point for the brachyon command line
# ABOUTME: Forwards the process arguments to brachyon.cli

from brachyon.cli import main

if __name__ == "__main__":
    main()
