"""engine package"""
