"""Classification, verification and regression services"""
