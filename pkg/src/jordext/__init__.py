"""Exact Jordan algebra extensions: unified, crossed and twisted products."""
