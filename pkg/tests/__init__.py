"""
Tests package
""" 