"""
Business logic services for the risk-averse PTA-MPC toolkit

- layout_service: validation, partition, active redundant paths
- analysis_service: centrality, committed sub-paths, PCM
- planning_service: path enumeration and objective minimisation
- failure_service: failure trigger evaluation
- controller_service: update operator and receding-horizon loop
- simulation_service: multi-controller scenario comparison
- fixture_service: fixture and scenario documents
- report_service: text and CSV rendering
"""
