"""
Core configuration, logging and error hierarchy for the risk-averse PTA-MPC toolkit
"""
