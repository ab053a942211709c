"""Command line surface for the convertor package."""
