"""
Risk-averse model predictive control over priced timed automata

Quantifies route failure risk on flexible manufacturing layouts with the
Path Commitment Measure and plans minimum-cost, minimum-risk routes under
injected workstation failures.
"""

__version__ = "1.0.0"
