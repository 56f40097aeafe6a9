# Launcher for running the command line from a source checkout.

from shapetaylor.__main__ import run_cli

if __name__ == "__main__":
    run_cli()
