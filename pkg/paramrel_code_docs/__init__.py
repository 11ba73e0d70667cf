"""paramrel_code_docs: for building paramrel docs from python docstrings
"""
