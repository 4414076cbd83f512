"""minicas package"""
