"""
Test suite for potential-lab
"""
