"""
Tests Package
One suite per src module, plus the CLI and the API
"""
