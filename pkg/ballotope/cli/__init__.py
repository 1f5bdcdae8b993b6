"""CLI layer (argparse commands)."""
