"""Natural bilinear operator classification engine"""
