"""Bundled algebra files used by the command-line front end."""
