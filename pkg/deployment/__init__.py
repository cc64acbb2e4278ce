"""
Deployment Package
REST front end for the alternant lab commands
"""
